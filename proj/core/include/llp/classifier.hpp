#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "llp/bag.hpp"

namespace llp {

enum class ClassifierKind { kLinearSigmoid, kHomogeneousHalfspace, kAffineHalfspace, kExplicitLabeling };

const char* to_string(ClassifierKind kind);

/// Per-instance {0,1} predictions indexed by instance id; -1 marks an id the
/// classifier does not cover (explicit labelings only).
using Labels = std::vector<std::int8_t>;

/// A {0,1}-valued instance classifier.
///
/// Halfspaces use pos(<r,x> + c) with pos(a) = 1 iff a > 0. The sigmoid kind
/// predicts 1 iff sigmoid(<w,x> + b) >= threshold. Constant classifiers are
/// affine halfspaces with zero direction and bias +-1.
class Classifier {
 public:
  static Classifier linear_sigmoid(std::vector<double> weights, double bias, double threshold = 0.5);
  static Classifier homogeneous_halfspace(std::vector<double> direction);
  static Classifier affine_halfspace(std::vector<double> direction, double offset);
  static Classifier constant(std::size_t dim, int value);
  static Classifier explicit_labeling(Labels labels);

  [[nodiscard]] ClassifierKind kind() const { return kind_; }
  [[nodiscard]] std::size_t dim() const { return weights_.size(); }
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }
  [[nodiscard]] double bias() const { return bias_; }
  [[nodiscard]] double threshold() const { return threshold_; }
  [[nodiscard]] const Labels& labels() const { return labels_; }

  /// <w,x> + b for the geometric kinds.
  [[nodiscard]] double margin(std::span<const double> x) const;
  /// sigmoid(margin) for the sigmoid kind; the margin otherwise.
  [[nodiscard]] double score(std::span<const double> x) const;
  [[nodiscard]] int predict(std::span<const double> x) const;
  /// Prediction for a table row. Explicit labelings look up the id and throw
  /// DataError when it is not covered.
  [[nodiscard]] int predict(const InstanceTable& table, std::size_t id) const;

  /// Predictions for every row of `table`.
  [[nodiscard]] Labels predict_all(const InstanceTable& table) const;

 private:
  Classifier() = default;

  ClassifierKind kind_ = ClassifierKind::kHomogeneousHalfspace;
  std::vector<double> weights_;
  double bias_ = 0.0;
  double threshold_ = 0.5;
  Labels labels_;
};

double sigmoid(double z);

}  // namespace llp

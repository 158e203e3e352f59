#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "llp/bag.hpp"
#include "llp/classifier.hpp"
#include "llp/rng.hpp"

namespace llp {

/// Output of a weak-learner oracle on a (possibly weighted) collection.
struct OracleResult {
  Classifier classifier;
  double achieved_accuracy = 0.0;  // bag accuracy on the collection it was given
  bool met_contract = false;       // achieved_accuracy >= requested alpha
};

/// An oracle receives a collection and the accuracy it is asked to reach.
using Oracle = std::function<OracleResult(const BagCollection&, double alpha)>;

/// Diagnostic-only early stopping on a labeled test set. Training normally
/// never sees test labels; enabling this keeps the best test-accuracy model.
struct EarlyStopOnTest {
  const InstanceTable* test = nullptr;
  std::size_t patience = 10;
};

struct TrainConfig {
  double learning_rate = 1e-2;
  std::size_t batch_size = 512;
  std::size_t epochs = 160;
  std::uint64_t seed = 0;
  double init_scale = 0.01;  // weights iid uniform in [-init_scale, init_scale], bias 0
  std::optional<EarlyStopOnTest> diagnostic_early_stop;
};

/// Parameters of g(x) = sigmoid(<w, x> + b).
struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;

  [[nodiscard]] Classifier to_classifier(double threshold = 0.5) const {
    return Classifier::linear_sigmoid(weights, bias, threshold);
  }
};

/// (sigma - sum_{x in B} g(x))^2.
double bag_loss(const LinearModel& model, const InstanceTable& table, const Bag& bag);

/// Gradient of bag_loss, written into grad_weights / grad_bias. Returns the loss, NaN on margin overflow.
double bag_loss_gradient(const LinearModel& model, const InstanceTable& table, const Bag& bag,
                         std::span<double> grad_weights, double& grad_bias);

/// Mini-batch SGD on the mean per-bag squared error over each batch.
///
/// Unweighted collections are visited as a fresh permutation per epoch;
/// weighted collections draw m bags per epoch with replacement, with
/// probability proportional to weight. Throws TrainingError if the loss
/// stops being finite.
OracleResult train_linear_sigmoid(const BagCollection& coll, const TrainConfig& cfg, double alpha = 0.0);

/// Largest number of distinct instances brute_force_best_labeling accepts.
inline constexpr std::size_t kBruteForceLimit = 24;

/// Exhaustive search over all 2^n labelings of the collection's distinct
/// instances. Returns the first maximizer in increasing labeling-bit order.
OracleResult brute_force_best_labeling(const BagCollection& coll, double alpha = 1.0);

/// pos(<r, x>) with r uniform on the unit sphere S^{d-1}.
Classifier random_homogeneous_halfspace(std::size_t d, Rng& rng);

/// Best of the constant-0, constant-1 and n_dirs evenly spaced homogeneous
/// halfspaces on a 2-dimensional collection.
OracleResult best_halfspace_2d(const BagCollection& coll, std::size_t n_dirs, double alpha = 0.0);

Oracle make_sgd_oracle(TrainConfig cfg);
Oracle make_brute_force_oracle();

}  // namespace llp

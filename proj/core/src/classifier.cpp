#include "llp/classifier.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "llp/errors.hpp"

namespace llp {

const char* to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::kLinearSigmoid:
      return "linear-sigmoid";
    case ClassifierKind::kHomogeneousHalfspace:
      return "homogeneous-halfspace";
    case ClassifierKind::kAffineHalfspace:
      return "affine-halfspace";
    case ClassifierKind::kExplicitLabeling:
      return "explicit-labeling";
  }
  return "unknown";
}

double sigmoid(double z) {
  if (z >= 0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

Classifier Classifier::linear_sigmoid(std::vector<double> weights, double bias, double threshold) {
  Classifier c;
  c.kind_ = ClassifierKind::kLinearSigmoid;
  c.weights_ = std::move(weights);
  c.bias_ = bias;
  c.threshold_ = threshold;
  return c;
}

Classifier Classifier::homogeneous_halfspace(std::vector<double> direction) {
  Classifier c;
  c.kind_ = ClassifierKind::kHomogeneousHalfspace;
  c.weights_ = std::move(direction);
  return c;
}

Classifier Classifier::affine_halfspace(std::vector<double> direction, double offset) {
  Classifier c;
  c.kind_ = ClassifierKind::kAffineHalfspace;
  c.weights_ = std::move(direction);
  c.bias_ = offset;
  return c;
}

Classifier Classifier::constant(std::size_t dim, int value) {
  return affine_halfspace(std::vector<double>(dim, 0.0), value != 0 ? 1.0 : -1.0);
}

Classifier Classifier::explicit_labeling(Labels labels) {
  for (std::int8_t l : labels) {
    if (l != 0 && l != 1 && l != -1) {
      throw DataError("explicit labeling entries must be 0, 1 or -1 (uncovered)");
    }
  }
  Classifier c;
  c.kind_ = ClassifierKind::kExplicitLabeling;
  c.labels_ = std::move(labels);
  return c;
}

double Classifier::margin(std::span<const double> x) const {
  if (kind_ == ClassifierKind::kExplicitLabeling) {
    throw DataError("explicit labeling has no margin");
  }
  if (x.size() != weights_.size()) {
    throw DataError("classifier dimension " + std::to_string(weights_.size()) +
                    " does not match instance dimension " + std::to_string(x.size()));
  }
  return std::inner_product(x.begin(), x.end(), weights_.begin(), bias_);
}

double Classifier::score(std::span<const double> x) const {
  const double z = margin(x);
  return kind_ == ClassifierKind::kLinearSigmoid ? sigmoid(z) : z;
}

int Classifier::predict(std::span<const double> x) const {
  if (kind_ == ClassifierKind::kLinearSigmoid) {
    return score(x) >= threshold_ ? 1 : 0;
  }
  return margin(x) > 0.0 ? 1 : 0;
}

int Classifier::predict(const InstanceTable& table, std::size_t id) const {
  if (kind_ == ClassifierKind::kExplicitLabeling) {
    if (id >= labels_.size() || labels_[id] < 0) {
      throw DataError("explicit labeling does not cover instance id " + std::to_string(id));
    }
    return labels_[id];
  }
  return predict(table.coords(id));
}

Labels Classifier::predict_all(const InstanceTable& table) const {
  Labels out(table.size(), -1);
  if (kind_ == ClassifierKind::kExplicitLabeling) {
    for (std::size_t id = 0; id < out.size() && id < labels_.size(); ++id) out[id] = labels_[id];
    return out;
  }
  for (std::size_t id = 0; id < out.size(); ++id) {
    out[id] = static_cast<std::int8_t>(predict(table.coords(id)));
  }
  return out;
}

}  // namespace llp

#pragma once

#include <cstddef>
#include <span>

#include "llp/bag.hpp"
#include "llp/classifier.hpp"

namespace llp {

/// h(B) - sigma for an LLP bag: the signed integer gap between the induced
/// label sum and the aggregate label. Zero iff the bag is satisfied.
long residual(const Classifier& h, const Bag& bag, const InstanceTable& table);
long residual(std::span<const std::int8_t> labels, const Bag& bag);

/// LLP: residual == 0. MIL: OR of predictions equals the aggregate label.
bool is_satisfied(const Classifier& h, const Bag& bag, const InstanceTable& table);
bool is_satisfied(std::span<const std::int8_t> labels, const Bag& bag);

/// Weighted fraction of satisfied bags (uniform 1/m when unweighted).
double accuracy(const Classifier& h, const BagCollection& coll);
double accuracy(std::span<const std::int8_t> labels, const BagCollection& coll);

/// Fraction of labeled rows of `table` that `h` predicts correctly.
double instance_accuracy(const Classifier& h, const InstanceTable& table);

/// Probability that iid fair-coin instance labels satisfy `bag`.
///
/// For a bag of q distinct members this is C(q, sigma) / 2^q (LLP), 2^-q
/// (MIL, sigma = 0) or 1 - 2^-q (MIL, sigma = 1). Repeated members share one
/// coin, which the computation accounts for.
double random_classifier_satisfaction_prob(const Bag& bag);

/// Trivial-accuracy threshold: the value of the zero-sum game in which the
/// bag weighting minimizes and a mixture of {random, all-0, all-1}
/// maximizes the weighted satisfaction. Solved on the classifier side by
/// nested golden-section search over the 2-simplex to 1e-6.
double trivial_accuracy(const BagCollection& coll);

/// Converts a weighted collection to an unweighted one by replicating bag i
/// ceil(w_i (T - 1)) times after scaling the weights to sum to m. Any
/// classifier's accuracy moves by at most 1 / (T - 1).
BagCollection weighted_to_unweighted(const BagCollection& coll, long T);

}  // namespace llp

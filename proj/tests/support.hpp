#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "llp/bag.hpp"
#include "llp/classifier.hpp"
#include "llp/rng.hpp"

namespace llp::testing {

// Table of n points in 1-D at coordinates 0, 1, ..., n-1.
inline std::shared_ptr<InstanceTable> line_table(std::size_t n) {
  auto table = std::make_shared<InstanceTable>(1);
  for (std::size_t i = 0; i < n; ++i) table->add(std::vector<double>{static_cast<double>(i)});
  return table;
}

inline std::vector<double> unit(std::size_t d, Rng& rng) {
  std::vector<double> v(d);
  double norm = 0.0;
  for (double& c : v) {
    c = rng.normal();
    norm += c * c;
  }
  norm = std::sqrt(norm);
  for (double& c : v) c /= norm;
  return v;
}

// Random LLP collection of m bags over n unit-sphere instances in dimension d,
// with bag sizes in [1, max_q] and sigma drawn uniformly in [0, size].
inline BagCollection random_llp(std::size_t m, std::size_t n, std::size_t d, std::size_t max_q, Rng& rng) {
  auto table = std::make_shared<InstanceTable>(d);
  for (std::size_t i = 0; i < n; ++i) table->add(unit(d, rng));
  std::vector<Bag> bags;
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t q = 1 + rng.uniform_index(max_q);
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < q; ++k) members.push_back(rng.uniform_index(n));
    bags.push_back(Bag::llp(std::move(members), static_cast<long>(rng.uniform_index(q + 1))));
  }
  return BagCollection(Mode::kLLP, std::move(table), std::move(bags));
}

inline std::vector<double> random_weights(std::size_t m, Rng& rng) {
  std::vector<double> w(m);
  double total = 0.0;
  for (double& x : w) {
    x = 0.05 + rng.uniform01();
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

}  // namespace llp::testing

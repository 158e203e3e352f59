#include "llp/bag.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "llp/errors.hpp"

namespace llp {

const char* to_string(Mode mode) { return mode == Mode::kLLP ? "llp" : "mil"; }

InstanceTable::InstanceTable(std::size_t dim) : dim_(dim) {
  if (dim == 0) {
    throw ParameterError("InstanceTable: dimension must be positive");
  }
}

std::size_t InstanceTable::add(std::span<const double> coords, std::optional<int> label) {
  if (coords.size() != dim_) {
    throw DataError("InstanceTable: expected " + std::to_string(dim_) + " coordinates, got " +
                    std::to_string(coords.size()));
  }
  for (double c : coords) {
    if (!std::isfinite(c)) {
      throw DataError("InstanceTable: non-finite coordinate in row " + std::to_string(size()));
    }
  }
  if (label && *label != 0 && *label != 1) {
    throw DataError("InstanceTable: labels must be 0 or 1");
  }
  coords_.insert(coords_.end(), coords.begin(), coords.end());
  labels_.push_back(label ? static_cast<std::int8_t>(*label) : std::int8_t{-1});
  return labels_.size() - 1;
}

std::span<const double> InstanceTable::coords(std::size_t id) const {
  if (id >= size()) {
    throw DataError("unresolvable instance id " + std::to_string(id));
  }
  return {coords_.data() + id * dim_, dim_};
}

std::optional<int> InstanceTable::label(std::size_t id) const {
  if (id >= size()) {
    throw DataError("unresolvable instance id " + std::to_string(id));
  }
  if (labels_[id] < 0) return std::nullopt;
  return labels_[id];
}

bool InstanceTable::has_label(std::size_t id) const { return id < size() && labels_[id] >= 0; }

InstanceTable InstanceTable::without_labels() const {
  InstanceTable copy = *this;
  std::fill(copy.labels_.begin(), copy.labels_.end(), std::int8_t{-1});
  return copy;
}

InstanceTable InstanceTable::subset(std::span<const std::size_t> ids) const {
  InstanceTable out(dim_);
  for (std::size_t id : ids) {
    out.add(coords(id), label(id));
  }
  return out;
}

Bag Bag::llp(std::vector<std::size_t> members, long sigma) {
  Bag bag{std::move(members), sigma, Mode::kLLP};
  validate_bag(bag);
  return bag;
}

Bag Bag::mil(std::vector<std::size_t> members, long sigma) {
  Bag bag{std::move(members), sigma, Mode::kMIL};
  validate_bag(bag);
  return bag;
}

void validate_bag(const Bag& bag) {
  if (bag.mode == Mode::kLLP) {
    if (bag.sigma < 0 || static_cast<std::size_t>(bag.sigma) > bag.members.size()) {
      throw DataError("LLP bag label " + std::to_string(bag.sigma) + " outside [0, " +
                      std::to_string(bag.members.size()) + "]");
    }
  } else {
    if (bag.members.empty()) {
      throw DataError("MIL bag must be non-empty");
    }
    if (bag.sigma != 0 && bag.sigma != 1) {
      throw DataError("MIL bag label must be 0 or 1");
    }
  }
}

BagCollection::BagCollection(Mode mode, std::shared_ptr<const InstanceTable> table,
                             std::vector<Bag> bags, std::optional<std::vector<double>> weights)
    : mode_(mode), table_(std::move(table)), bags_(std::move(bags)), weights_(std::move(weights)) {
  if (!table_) {
    throw DataError("BagCollection: missing instance table");
  }
  for (std::size_t j = 0; j < bags_.size(); ++j) {
    const Bag& bag = bags_[j];
    if (bag.mode != mode_) {
      throw DataError("BagCollection: bag " + std::to_string(j) + " has mode " +
                      to_string(bag.mode) + ", collection is " + to_string(mode_));
    }
    validate_bag(bag);
    for (std::size_t id : bag.members) {
      if (id >= table_->size()) {
        throw DataError("BagCollection: bag " + std::to_string(j) +
                        " references unresolvable instance id " + std::to_string(id));
      }
    }
  }
  if (weights_) {
    if (weights_->size() != bags_.size()) {
      throw DataError("BagCollection: " + std::to_string(weights_->size()) + " weights for " +
                      std::to_string(bags_.size()) + " bags");
    }
    double total = 0.0;
    for (double w : *weights_) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw DataError("BagCollection: weights must be finite and non-negative");
      }
      total += w;
    }
    if (std::abs(total - 1.0) > kWeightTolerance) {
      throw DataError("BagCollection: weights sum to " + std::to_string(total) + ", expected 1");
    }
  }
}

double BagCollection::weight(std::size_t j) const {
  if (weights_) return (*weights_)[j];
  return 1.0 / static_cast<double>(bags_.size());
}

std::size_t BagCollection::max_bag_size() const {
  std::size_t k = 0;
  for (const Bag& bag : bags_) k = std::max(k, bag.size());
  return k;
}

std::vector<std::size_t> BagCollection::distinct_instances() const {
  std::vector<std::size_t> ids;
  for (const Bag& bag : bags_) ids.insert(ids.end(), bag.members.begin(), bag.members.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

BagCollection BagCollection::reweighted(std::vector<double> weights) const {
  return BagCollection(mode_, table_, bags_, std::move(weights));
}

BagCollection BagCollection::unweighted() const { return BagCollection(mode_, table_, bags_); }

}  // namespace llp

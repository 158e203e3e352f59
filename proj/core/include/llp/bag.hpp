#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace llp {

/// Aggregation rule of a bag: label sum (LLP) or label OR (MIL).
enum class Mode { kLLP, kMIL };

const char* to_string(Mode mode);

/// Shared store of feature vectors. Instance ids are row indices.
///
/// Coordinates are stored row-major in one buffer; ground-truth labels are
/// optional per row (present for synthetic and test data).
class InstanceTable {
 public:
  explicit InstanceTable(std::size_t dim);

  /// Appends a row and returns its id. Throws DataError on dimension
  /// mismatch or non-finite coordinates.
  std::size_t add(std::span<const double> coords, std::optional<int> label = std::nullopt);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] bool empty() const { return labels_.empty(); }

  [[nodiscard]] std::span<const double> coords(std::size_t id) const;
  [[nodiscard]] std::optional<int> label(std::size_t id) const;
  [[nodiscard]] bool has_label(std::size_t id) const;

  /// Copy of the table with all ground-truth labels removed.
  [[nodiscard]] InstanceTable without_labels() const;
  /// Copy restricted to `ids`, renumbered 0..ids.size()-1.
  [[nodiscard]] InstanceTable subset(std::span<const std::size_t> ids) const;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<std::int8_t> labels_;  // -1 when absent
};

/// A multiset of instance ids with an aggregate label.
///
/// LLP: 0 <= sigma <= |members|. MIL: sigma in {0,1} and members non-empty.
/// An LLP bag may be empty (sigma = 0); this is how an all-dropped union is
/// represented.
struct Bag {
  std::vector<std::size_t> members;
  long sigma = 0;
  Mode mode = Mode::kLLP;

  static Bag llp(std::vector<std::size_t> members, long sigma);
  static Bag mil(std::vector<std::size_t> members, long sigma);

  [[nodiscard]] std::size_t size() const { return members.size(); }
};

/// Throws DataError if the bag violates its mode's label range.
void validate_bag(const Bag& bag);

/// A sequence of bags over a shared instance table, optionally weighted.
///
/// Immutable after construction. Weights, when present, are non-negative and
/// sum to 1 within 1e-9; an unweighted collection behaves as uniform 1/m.
class BagCollection {
 public:
  static constexpr double kWeightTolerance = 1e-9;

  BagCollection(Mode mode, std::shared_ptr<const InstanceTable> table, std::vector<Bag> bags,
                std::optional<std::vector<double>> weights = std::nullopt);

  [[nodiscard]] Mode mode() const { return mode_; }
  [[nodiscard]] const InstanceTable& table() const { return *table_; }
  [[nodiscard]] const std::shared_ptr<const InstanceTable>& table_ptr() const { return table_; }
  [[nodiscard]] const std::vector<Bag>& bags() const { return bags_; }
  [[nodiscard]] const Bag& bag(std::size_t j) const { return bags_[j]; }
  [[nodiscard]] std::size_t size() const { return bags_.size(); }
  [[nodiscard]] bool empty() const { return bags_.empty(); }

  [[nodiscard]] bool is_weighted() const { return weights_.has_value(); }
  [[nodiscard]] const std::optional<std::vector<double>>& weights() const { return weights_; }
  /// w_j, or 1/m for unweighted collections.
  [[nodiscard]] double weight(std::size_t j) const;

  /// k: the largest bag size.
  [[nodiscard]] std::size_t max_bag_size() const;
  /// Sorted ids of the distinct instances referenced by any bag (n = size()).
  [[nodiscard]] std::vector<std::size_t> distinct_instances() const;

  /// Same bags and table with new weights (validated).
  [[nodiscard]] BagCollection reweighted(std::vector<double> weights) const;
  /// Same bags and table, weights dropped.
  [[nodiscard]] BagCollection unweighted() const;

 private:
  Mode mode_;
  std::shared_ptr<const InstanceTable> table_;
  std::vector<Bag> bags_;
  std::optional<std::vector<double>> weights_;
};

}  // namespace llp

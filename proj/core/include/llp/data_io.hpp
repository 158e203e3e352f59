#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "llp/bag.hpp"
#include "llp/classifier.hpp"
#include "llp/rng.hpp"

namespace llp {

enum class BagStyle { kRandom, kHard };

const char* to_string(BagStyle style);
BagStyle parse_bag_style(const std::string& text);

struct SyntheticConfig {
  std::size_t n_bags = 1000;
  std::size_t q = 5;
  std::size_t d = 10;
  BagStyle style = BagStyle::kRandom;
  double eta = 0.1;  // hard-pair angular slack in radians
  std::size_t n_test = 1500;
  std::uint64_t seed = 0;
  std::size_t max_attempts = 1000000;  // rejection budget per hard pair
};

void validate(const SyntheticConfig& cfg);

struct SyntheticData {
  BagCollection train;                          // instance labels stripped
  std::shared_ptr<const InstanceTable> labeled;  // same ids as train, with f* labels
  Classifier target;                            // f*
  InstanceTable test;                           // labeled by f*
};

/// Bags of q uniform unit-sphere points labeled by a uniform homogeneous f*.
/// Test instances are one uniformly chosen member of a freshly drawn bag.
SyntheticData gen_random_bags(const SyntheticConfig& cfg);

/// Bags of (q - 1)/2 adversarial pairs plus one uniform point. A close pair is
/// at angle <= eta with opposite f* labels; an antipodal pair is at angle
/// >= pi - eta with equal labels. Pair type is a fair coin.
SyntheticData gen_hard_bags(const SyntheticConfig& cfg);

/// Dispatches on cfg.style.
SyntheticData gen_synthetic(const SyntheticConfig& cfg);

struct DatasetSchema {
  std::string target;
  /// Target values mapped to 1; others map to 0. Empty: the target must read 0 or 1.
  std::vector<std::string> positive_values;
  std::set<std::string> categorical;
  std::set<std::string> ignore;
  char delimiter = ',';
  std::set<std::string> missing_tokens{"", "?", "NA", "NaN"};
};

struct ColumnStats {
  std::string name;
  bool categorical = false;
  double mean = 0.0;    // numeric columns, before normalization
  double stddev = 0.0;  // population standard deviation, before normalization
  std::vector<std::string> categories;
};

struct IngestionReport {
  std::size_t rows_read = 0;
  std::size_t rows_dropped = 0;
  std::size_t rows_kept = 0;
  std::size_t positives = 0;
  std::vector<ColumnStats> columns;
  std::vector<std::string> feature_names;
  std::vector<std::string> warnings;

  void write(std::ostream& out) const;
};

struct TabularData {
  InstanceTable table;
  IngestionReport report;
};

/// Reads delimiter-separated values with a header. Numeric columns are
/// z-scored; categorical columns are one-hot encoded over their sorted values.
/// Rows holding a missing token are dropped and counted.
TabularData load_tabular(const std::string& path, const DatasetSchema& schema);
TabularData read_tabular(std::istream& in, const DatasetSchema& schema);

/// Test size is round(fraction * n) with ties rounded up.
std::size_t test_size(std::size_t n, double fraction);

/// Random split into (train, test); ids are renumbered in permutation order.
std::pair<InstanceTable, InstanceTable> split_test(const InstanceTable& table, double fraction, Rng& rng);

struct Partition {
  BagCollection bags;  // over an unlabeled copy of the table, same ids
  std::size_t dropped = 0;
};

/// Random permutation cut into consecutive q-blocks; the short tail is dropped.
Partition partition_into_bags(const InstanceTable& table, std::size_t q, Rng& rng);

}  // namespace llp

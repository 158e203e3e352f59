#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "llp/data_io.hpp"
#include "llp/oracle.hpp"

namespace llp {

enum class DatasetKind { kSynthetic, kTabular };

struct TabularSpec {
  std::string path;
  DatasetSchema schema;
  double test_fraction = 0.15;
};

struct ExperimentConfig {
  DatasetKind dataset = DatasetKind::kSynthetic;
  SyntheticConfig synthetic;          // q taken from `q`, seed from base_seed unless synthetic_seed
  std::optional<std::uint64_t> synthetic_seed;
  TabularSpec tabular;
  std::size_t q = 5;

  std::optional<std::size_t> t;
  std::optional<double> epsilon;
  std::optional<double> alpha;
  std::optional<double> c0;
  std::optional<std::size_t> s;
  std::optional<double> delta;
  std::optional<std::size_t> vc;

  TrainConfig train;
  std::size_t runs = 5;
  std::uint64_t base_seed = 0;
  std::size_t jobs = 1;
  std::string output;  // CSV path; the summary goes to <output>.summary
};

/// Throws ConfigError on inconsistent parameter groups.
void validate(const ExperimentConfig& cfg);

/// Small bags plus labeled held-out instances shared by every run.
struct ExperimentData {
  BagCollection small_bags;
  InstanceTable test;
  std::string description;
};

ExperimentData prepare_data(const ExperimentConfig& cfg);

struct RunRow {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  double large_bag_accuracy = 0.0;  // percent
  double small_bag_accuracy = 0.0;  // percent
  double test_accuracy = 0.0;       // percent
  std::optional<bool> met_contract;  // empty when no alpha was given
};

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 when runs == 1
};

struct ExperimentReport {
  std::size_t t = 0;
  std::size_t s = 0;
  std::size_t q = 0;
  std::size_t small_bags = 0;
  std::size_t test_instances = 0;
  std::vector<RunRow> rows;

  MetricSummary large;
  MetricSummary small;
  MetricSummary test;
  bool single_run = false;

  void write_csv(std::ostream& out) const;
  void write_summary(std::ostream& out) const;
};

MetricSummary summarize(const std::vector<double>& values);

/// Recomputes the aggregates from the per-run rows.
void aggregate(ExperimentReport& report);

/// Runs the weak-to-strong pipeline `runs` times. Run i uses seed base_seed + i:
/// unions are drawn from Rng(seed).split(1) and training is seeded with
/// Rng(seed).split(2).seed(). Errors are rethrown prefixed with the run index.
ExperimentReport run_experiment(const ExperimentConfig& cfg, const ExperimentData& data);

/// Single run, exposed for re-execution of one row.
RunRow run_once(const ExperimentConfig& cfg, const ExperimentData& data, std::size_t run_index);

std::string format_percent(double value);

}  // namespace llp

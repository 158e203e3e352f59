#include "llp/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "llp/errors.hpp"
#include "llp/metrics.hpp"
#include "llp/weak_to_strong.hpp"

namespace llp {
namespace {

template <class E>
[[noreturn]] void rethrow_as(const E& e, std::size_t run) {
  throw E("run " + std::to_string(run) + ": " + e.what());
}

[[noreturn]] void rethrow_with_run(std::size_t run) {
  try {
    throw;
  } catch (const ConfigError& e) {
    rethrow_as(e, run);
  } catch (const IngestionError& e) {
    rethrow_as(e, run);
  } catch (const DataError& e) {
    rethrow_as(e, run);
  } catch (const TrainingError& e) {
    rethrow_as(e, run);
  } catch (const ParameterError& e) {
    rethrow_as(e, run);
  } catch (const SizeError& e) {
    rethrow_as(e, run);
  } catch (const GenerationError& e) {
    rethrow_as(e, run);
  } catch (const PreconditionError& e) {
    rethrow_as(e, run);
  } catch (const Error& e) {
    rethrow_as(e, run);
  }
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.t.has_value() == cfg.epsilon.has_value()) {
    throw ConfigError("exactly one of t and epsilon must be given");
  }
  if (cfg.epsilon && !cfg.alpha) throw ConfigError("epsilon requires alpha to derive t");
  if (cfg.c0 && !cfg.epsilon) throw ConfigError("c0 is only used together with epsilon");
  if (cfg.s.has_value() == cfg.delta.has_value()) {
    throw ConfigError("exactly one of s and delta must be given");
  }
  if (cfg.delta && !cfg.alpha) throw ConfigError("delta requires alpha to derive s");
  if (cfg.vc && !cfg.delta) throw ConfigError("vc is only used together with delta");
  if (cfg.t && *cfg.t == 0) throw ConfigError("t must be positive");
  if (cfg.s && *cfg.s == 0) throw ConfigError("s must be positive");
  if (cfg.alpha && !(*cfg.alpha > 0.0 && *cfg.alpha <= 1.0)) throw ConfigError("alpha must lie in (0, 1]");
  if (cfg.q == 0) throw ConfigError("q must be positive");
  if (cfg.runs == 0) throw ConfigError("runs must be positive");
  if (cfg.jobs == 0) throw ConfigError("jobs must be positive");
  if (cfg.dataset == DatasetKind::kTabular) {
    if (cfg.tabular.path.empty()) throw ConfigError("dataset.path is required for tabular data");
    if (cfg.tabular.schema.target.empty()) throw ConfigError("dataset.target is required for tabular data");
    if (!(cfg.tabular.test_fraction > 0.0 && cfg.tabular.test_fraction < 1.0)) {
      throw ConfigError("dataset.test_fraction must lie in (0, 1)");
    }
  }
}

ExperimentData prepare_data(const ExperimentConfig& cfg) {
  if (cfg.dataset == DatasetKind::kSynthetic) {
    SyntheticConfig synth = cfg.synthetic;
    synth.q = cfg.q;
    synth.seed = cfg.synthetic_seed.value_or(cfg.base_seed);
    SyntheticData data = gen_synthetic(synth);
    return ExperimentData{std::move(data.train), std::move(data.test),
                          std::string("synthetic ") + to_string(synth.style)};
  }
  TabularData data = load_tabular(cfg.tabular.path, cfg.tabular.schema);
  Rng rng(cfg.base_seed);
  Rng split_rng = rng.split(0);
  Rng bag_rng = rng.split(1);
  auto [train, test] = split_test(data.table, cfg.tabular.test_fraction, split_rng);
  Partition partition = partition_into_bags(train, cfg.q, bag_rng);
  return ExperimentData{std::move(partition.bags), std::move(test), "tabular " + cfg.tabular.path};
}

RunRow run_once(const ExperimentConfig& cfg, const ExperimentData& data, std::size_t run_index) {
  const std::uint64_t seed = cfg.base_seed + run_index;
  const Rng root(seed);
  Rng union_rng = root.split(1);
  TrainConfig train = cfg.train;
  train.seed = root.split(2).seed();

  A2Params params;
  params.t = cfg.t;
  params.s = cfg.s;
  if (cfg.epsilon) params.epsilon = *cfg.epsilon;
  if (cfg.alpha) params.alpha = *cfg.alpha;
  if (cfg.c0) params.c0 = *cfg.c0;
  if (cfg.delta) params.delta = *cfg.delta;
  params.vc_dim = cfg.vc;
  const A2Result result = algorithm_a2(data.small_bags, params, make_sgd_oracle(train), union_rng);

  RunRow row;
  row.run = run_index;
  row.seed = seed;
  row.large_bag_accuracy = 100.0 * result.oracle.achieved_accuracy;
  row.small_bag_accuracy = 100.0 * accuracy(result.oracle.classifier, data.small_bags);
  row.test_accuracy = 100.0 * instance_accuracy(result.oracle.classifier, data.test);
  if (cfg.alpha) row.met_contract = result.oracle.met_contract;
  return row;
}

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - out.mean) * (v - out.mean);
    out.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return out;
}

void aggregate(ExperimentReport& report) {
  std::vector<double> large;
  std::vector<double> small;
  std::vector<double> test;
  for (const RunRow& row : report.rows) {
    large.push_back(row.large_bag_accuracy);
    small.push_back(row.small_bag_accuracy);
    test.push_back(row.test_accuracy);
  }
  report.large = summarize(large);
  report.small = summarize(small);
  report.test = summarize(test);
  report.single_run = report.rows.size() == 1;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, const ExperimentData& data) {
  validate(cfg);
  ExperimentReport report;
  report.q = cfg.q;
  report.small_bags = data.small_bags.size();
  report.test_instances = data.test.size();
  report.t = cfg.t ? *cfg.t : compute_t(*cfg.epsilon, *cfg.alpha, cfg.c0.value_or(kDefaultC0));
  report.s = cfg.s ? *cfg.s : compute_s(data.small_bags.distinct_instances().size(), *cfg.alpha, *cfg.delta, cfg.vc).s;
  report.rows.resize(cfg.runs);

  std::vector<std::exception_ptr> errors(cfg.runs);
  auto execute = [&](std::size_t i) {
    try {
      try {
        report.rows[i] = run_once(cfg, data, i);
      } catch (...) {
        rethrow_with_run(i);
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const std::size_t jobs = std::min(cfg.jobs, cfg.runs);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < cfg.runs; ++i) {
      execute(i);
      if (errors[i]) std::rethrow_exception(errors[i]);
    }
  } else {
    std::mutex mutex;
    std::size_t next = 0;
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        while (true) {
          std::size_t i = 0;
          {
            std::lock_guard lock(mutex);
            if (next == cfg.runs) return;
            i = next++;
          }
          execute(i);
        }
      });
    }
    for (auto& w : workers) w.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  aggregate(report);
  return report;
}

std::string format_percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", value);
  return buf;
}

void ExperimentReport::write_csv(std::ostream& out) const {
  out << "run,seed,large_bag_accuracy,small_bag_accuracy,test_accuracy,met_contract\n";
  for (const RunRow& row : rows) {
    out << row.run << ',' << row.seed << ',' << format_percent(row.large_bag_accuracy) << ','
        << format_percent(row.small_bag_accuracy) << ',' << format_percent(row.test_accuracy) << ','
        << (row.met_contract ? (*row.met_contract ? "1" : "0") : "na") << '\n';
  }
}

void ExperimentReport::write_summary(std::ostream& out) const {
  out << "runs: " << rows.size() << '\n'
      << "q: " << q << '\n'
      << "t: " << t << '\n'
      << "s: " << s << '\n'
      << "small_bags: " << small_bags << '\n'
      << "test_instances: " << test_instances << '\n'
      << "large_bag_accuracy: " << format_percent(large.mean) << " +- " << format_percent(large.stddev) << '\n'
      << "small_bag_accuracy: " << format_percent(small.mean) << " +- " << format_percent(small.stddev) << '\n'
      << "test_accuracy: " << format_percent(test.mean) << " +- " << format_percent(test.stddev) << '\n'
      << "stddev_degenerate: " << (single_run ? "true" : "false") << '\n';
}

}  // namespace llp

// llp: weak-to-strong experiments, construction verifiers, conversions and generators.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "llp/config.hpp"
#include "llp/constructions.hpp"
#include "llp/data_io.hpp"
#include "llp/errors.hpp"
#include "llp/experiment.hpp"
#include "llp/metrics.hpp"
#include "llp/text_format.hpp"
#include "llp/union_sampler.hpp"
#include "llp/verify.hpp"

namespace {

enum ExitCode { kOk = 0, kOther = 1, kConfig = 2, kData = 3, kTraining = 4, kVerification = 5 };

struct RunOptions {
  std::string config_path;
  std::map<std::string, std::string> overrides;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw llp::DataError("cannot write '" + path + "'");
  return out;
}

int cmd_run(const RunOptions& opts) {
  llp::ConfigMap map;
  if (!opts.config_path.empty()) map = llp::load_config(opts.config_path);
  for (const auto& [key, value] : opts.overrides) map[key] = value;
  const llp::ExperimentConfig cfg = llp::experiment_from_map(map);
  const llp::ExperimentData data = llp::prepare_data(cfg);
  std::cerr << "data: " << data.description << ", " << data.small_bags.size() << " small bags, " << data.test.size()
            << " test instances\n";
  const llp::ExperimentReport report = llp::run_experiment(cfg, data);
  if (cfg.output.empty()) {
    report.write_csv(std::cout);
  } else {
    std::ofstream csv = open_output(cfg.output);
    report.write_csv(csv);
    std::ofstream summary = open_output(cfg.output + ".summary");
    report.write_summary(summary);
  }
  report.write_summary(std::cout);
  return kOk;
}

int finish_report(const llp::VerificationReport& report, const std::string& out_path) {
  report.write(std::cout);
  if (!out_path.empty()) {
    std::ofstream out = open_output(out_path);
    report.write(out);
  }
  return report.passed() ? kOk : kVerification;
}

llp::CircleMILConfig parse_alpha_fraction(const std::string& text, long T) {
  llp::CircleMILConfig cfg;
  cfg.T = T;
  long num = 0;
  long den = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%ld/%ld%c", &num, &den, &extra) == 2) {
    cfg.alpha_num = num;
    cfg.alpha_den = den;
  } else {
    throw llp::ConfigError("alpha must be a fraction p/q, got '" + text + "'");
  }
  return cfg;
}

int cmd_convert(const std::string& in_path, const std::string& out_path, long T) {
  const llp::ParsedCollection parsed = llp::load_collection(in_path);
  const llp::BagCollection out = llp::weighted_to_unweighted(parsed.collection, T);
  llp::save_collection(out_path, out);
  std::cout << "bags: " << out.size() << '\n'
            << "drift_bound: " << llp::format_real(1.0 / static_cast<double>(T - 1)) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learning from label proportions: weak-to-strong experiments and construction verifiers"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "Run a weak-to-strong experiment");
  run->add_option("--config", run_opts.config_path, "YAML experiment config")->check(CLI::ExistingFile);
  for (const llp::ConfigKey& key : llp::experiment_keys()) {
    const std::string name = key.name;
    run->add_option_function<std::string>(
        "--" + name, [&run_opts, name](const std::string& v) { run_opts.overrides[name] = v; }, key.help);
  }

  auto* verify = app.add_subcommand("verify", "Verify an impossibility construction");
  verify->require_subcommand(1);
  std::string verify_out;
  verify->add_option("--out", verify_out, "Also write the report to this file");

  llp::MILVerifyParams mil_params;
  std::string mil_alpha = "3/4";
  auto* verify_mil = verify->add_subcommand("mil", "Circle MIL construction");
  verify_mil->add_option("--alpha", mil_alpha, "alpha as a fraction p/q")->capture_default_str();
  verify_mil->add_option("--T", mil_params.construction.T, "arc resolution (2T arcs)")->capture_default_str();
  verify_mil->add_option("--weightings", mil_params.random_weightings, "random weightings")->capture_default_str();
  verify_mil->add_option("--n-dirs", mil_params.n_dirs, "halfspace directions")->capture_default_str();
  verify_mil->add_option("--rounds", mil_params.game_rounds, "fictitious-play rounds")->capture_default_str();
  verify_mil->add_option("--seed", mil_params.seed, "seed")->capture_default_str();
  verify_mil->add_option("--max-gap", mil_params.max_duality_gap, "duality gap tolerance")->capture_default_str();

  llp::LLPVerifyParams llp_params;
  auto* verify_llp = verify->add_subcommand("llp", "Sampled LLP construction");
  auto& lc = llp_params.construction;
  verify_llp->add_option("--alpha", lc.alpha, "theta / pi")->capture_default_str();
  verify_llp->add_option("--epsilon", lc.epsilon, "band width / pi")->capture_default_str();
  verify_llp->add_option("--d", lc.d, "sphere dimension")->capture_default_str();
  verify_llp->add_option("--n-pairs", lc.n_pairs, "bags")->capture_default_str();
  verify_llp->add_option("--n-points", lc.n_points, "vertex pool size (0: automatic)")->capture_default_str();
  verify_llp->add_option("--budget", llp_params.search_budget, "local-search restarts")->capture_default_str();
  verify_llp->add_option("--draws", llp_params.halfspace_draws, "random halfspace draws")->capture_default_str();
  verify_llp->add_option("--menu", llp_params.menu_size, "adversarial menu halfspaces")->capture_default_str();
  verify_llp->add_option("--rounds", llp_params.game_rounds, "fictitious-play rounds")->capture_default_str();
  verify_llp->add_option("--seed", llp_params.seed, "seed")->capture_default_str();
  verify_llp->add_option("--max-gap", llp_params.max_duality_gap, "duality gap tolerance")->capture_default_str();

  std::string convert_in;
  std::string convert_out;
  long convert_T = 0;
  auto* convert = app.add_subcommand("convert", "Convert a weighted collection to an unweighted one");
  convert->add_option("input", convert_in, "weighted collection")->required()->check(CLI::ExistingFile);
  convert->add_option("output", convert_out, "output collection")->required();
  convert->add_option("--T", convert_T, "resolution T >= 2")->required();

  auto* gen = app.add_subcommand("gen", "Write a dataset or collection to a file");
  gen->require_subcommand(1);
  std::string gen_out;
  gen->add_option("--out", gen_out, "output collection")->required();

  llp::SyntheticConfig synth;
  std::string synth_style = "random";
  std::string synth_test_out;
  auto* gen_synth = gen->add_subcommand("synthetic", "Synthetic random or hard bags");
  gen_synth->add_option("--style", synth_style, "random or hard")->capture_default_str();
  gen_synth->add_option("--n-bags", synth.n_bags, "bags")->capture_default_str();
  gen_synth->add_option("--q", synth.q, "bag size")->capture_default_str();
  gen_synth->add_option("--d", synth.d, "dimension")->capture_default_str();
  gen_synth->add_option("--eta", synth.eta, "hard-pair slack (radians)")->capture_default_str();
  gen_synth->add_option("--n-test", synth.n_test, "test instances")->capture_default_str();
  gen_synth->add_option("--seed", synth.seed, "seed")->capture_default_str();
  gen_synth->add_option("--test-out", synth_test_out, "write labeled test instances as a collection of no bags");

  std::string gen_mil_alpha = "3/4";
  long gen_mil_T = 8;
  auto* gen_mil = gen->add_subcommand("mil", "Circle MIL construction");
  gen_mil->add_option("--alpha", gen_mil_alpha, "alpha as a fraction p/q")->capture_default_str();
  gen_mil->add_option("--T", gen_mil_T, "arc resolution")->capture_default_str();

  llp::MaxCutLLPConfig gen_llp_cfg;
  auto* gen_llp = gen->add_subcommand("llp", "Sampled LLP construction");
  gen_llp->add_option("--alpha", gen_llp_cfg.alpha, "theta / pi")->capture_default_str();
  gen_llp->add_option("--epsilon", gen_llp_cfg.epsilon, "band width / pi")->capture_default_str();
  gen_llp->add_option("--d", gen_llp_cfg.d, "sphere dimension")->capture_default_str();
  gen_llp->add_option("--n-pairs", gen_llp_cfg.n_pairs, "bags")->capture_default_str();
  gen_llp->add_option("--n-points", gen_llp_cfg.n_points, "vertex pool size")->capture_default_str();
  gen_llp->add_option("--seed", gen_llp_cfg.seed, "seed")->capture_default_str();

  std::string unions_in;
  std::size_t unions_t = 10;
  std::size_t unions_s = 100;
  std::uint64_t unions_seed = 0;
  auto* gen_unions = gen->add_subcommand("unions", "Large bags sampled from a small-bag collection");
  gen_unions->add_option("--in", unions_in, "small-bag collection")->required()->check(CLI::ExistingFile);
  gen_unions->add_option("--t", unions_t, "union parameter")->capture_default_str();
  gen_unions->add_option("--s", unions_s, "number of large bags")->capture_default_str();
  gen_unions->add_option("--seed", unions_seed, "seed")->capture_default_str();

  std::string bags_config;
  auto* gen_bags = gen->add_subcommand("bags", "Small bags of an experiment config");
  gen_bags->add_option("--config", bags_config, "YAML experiment config")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return cmd_run(run_opts);
    if (*verify_mil) {
      const llp::CircleMILConfig parsed = parse_alpha_fraction(mil_alpha, mil_params.construction.T);
      mil_params.construction = parsed;
      return finish_report(llp::verify_mil_construction(mil_params), verify_out);
    }
    if (*verify_llp) return finish_report(llp::verify_llp_construction(llp_params), verify_out);
    if (*convert) return cmd_convert(convert_in, convert_out, convert_T);
    if (*gen_synth) {
      synth.style = llp::parse_bag_style(synth_style);
      const llp::SyntheticData data = llp::gen_synthetic(synth);
      llp::save_collection(gen_out, data.train);
      if (!synth_test_out.empty()) {
        auto table = std::make_shared<const llp::InstanceTable>(data.test);
        llp::save_collection(synth_test_out, llp::BagCollection(llp::Mode::kLLP, table, {}));
      }
      std::cout << "bags: " << data.train.size() << '\n';
      return kOk;
    }
    if (*gen_mil) {
      const llp::BagCollection coll = llp::gen_mil_circle_bags(parse_alpha_fraction(gen_mil_alpha, gen_mil_T));
      llp::save_collection(gen_out, coll);
      std::cout << "bags: " << coll.size() << '\n';
      return kOk;
    }
    if (*gen_llp) {
      const llp::BagCollection coll = llp::gen_llp_maxcut_bags(gen_llp_cfg);
      llp::save_collection(gen_out, coll);
      std::cout << "bags: " << coll.size() << '\n';
      return kOk;
    }
    if (*gen_unions) {
      const llp::ParsedCollection small = llp::load_collection(unions_in);
      llp::Rng rng(unions_seed);
      const auto unions = llp::sample_unions(small.collection, unions_t, unions_s, rng);
      llp::save_collection(gen_out, llp::union_collection(small.collection, unions), llp::union_provenance(unions));
      std::cout << "bags: " << unions.size() << '\n';
      return kOk;
    }
    if (*gen_bags) {
      const llp::ExperimentConfig cfg = llp::experiment_from_map(llp::load_config(bags_config));
      const llp::ExperimentData data = llp::prepare_data(cfg);
      llp::save_collection(gen_out, data.small_bags);
      std::cout << "bags: " << data.small_bags.size() << '\n';
      return kOk;
    }
  } catch (const llp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const llp::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kConfig;
  } catch (const llp::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const llp::TrainingError& e) {
    std::cerr << "training error: " << e.what() << '\n';
    return kTraining;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOther;
}

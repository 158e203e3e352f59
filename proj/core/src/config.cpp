#include "llp/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "llp/errors.hpp"

namespace llp {
namespace {

void flatten(const YAML::Node& node, const std::string& prefix, ConfigMap& out) {
  switch (node.Type()) {
    case YAML::NodeType::Map:
      for (const auto& item : node) {
        const std::string key = item.first.as<std::string>();
        flatten(item.second, prefix.empty() ? key : prefix + "." + key, out);
      }
      break;
    case YAML::NodeType::Sequence: {
      std::string joined;
      for (std::size_t i = 0; i < node.size(); ++i) {
        if (!node[i].IsScalar()) throw ConfigError("key '" + prefix + "': sequence items must be scalars");
        if (i) joined += ',';
        joined += node[i].as<std::string>();
      }
      out[prefix] = joined;
      break;
    }
    case YAML::NodeType::Scalar:
      out[prefix] = node.as<std::string>();
      break;
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      break;
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(' ');
    const auto last = item.find_last_not_of(' ');
    out.push_back(first == std::string::npos ? std::string() : item.substr(first, last - first + 1));
  }
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError("key '" + key + "': cannot parse '" + text + "'");
  return value;
}

}  // namespace

const std::vector<ConfigKey>& experiment_keys() {
  static const std::vector<ConfigKey> keys{
      {"dataset.kind", "synthetic or tabular"},
      {"dataset.style", "synthetic bag style: random or hard"},
      {"dataset.n_bags", "number of synthetic small bags"},
      {"dataset.d", "synthetic dimension"},
      {"dataset.eta", "hard-pair angular slack (radians)"},
      {"dataset.n_test", "synthetic test instances"},
      {"dataset.seed", "synthetic generator seed (default: seed)"},
      {"dataset.path", "tabular file"},
      {"dataset.target", "tabular target column"},
      {"dataset.positive", "target values mapped to 1 (comma list)"},
      {"dataset.categorical", "categorical columns (comma list)"},
      {"dataset.ignore", "ignored columns (comma list)"},
      {"dataset.delimiter", "field delimiter"},
      {"dataset.missing", "missing-value tokens (comma list)"},
      {"dataset.test_fraction", "held-out fraction"},
      {"q", "small bag size"},
      {"t", "union size parameter"},
      {"epsilon", "target error (derives t)"},
      {"alpha", "oracle accuracy"},
      {"c0", "anti-concentration constant"},
      {"s", "number of large bags"},
      {"delta", "failure probability (derives s)"},
      {"vc", "VC dimension used with delta"},
      {"train.learning_rate", "SGD learning rate"},
      {"train.batch_size", "SGD mini-batch size"},
      {"train.epochs", "SGD epochs"},
      {"train.init_scale", "initial weight range"},
      {"runs", "repetitions"},
      {"seed", "base seed"},
      {"jobs", "parallel runs"},
      {"output", "report CSV path"},
  };
  return keys;
}

ConfigMap parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  ConfigMap out;
  if (root.IsNull()) return out;
  if (!root.IsMap()) throw ConfigError("config root must be a mapping");
  try {
    flatten(root, "", out);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  return out;
}

ConfigMap load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  ConfigMap map = parse_config(buffer.str());
  auto it = map.find("dataset.path");
  if (it != map.end() && !it->second.empty()) {
    const std::filesystem::path data(it->second);
    if (data.is_relative()) it->second = (std::filesystem::path(path).parent_path() / data).lexically_normal().string();
  }
  return map;
}

ExperimentConfig experiment_from_map(const ConfigMap& map) {
  std::set<std::string> known;
  for (const ConfigKey& key : experiment_keys()) known.insert(key.name);
  for (const auto& [key, value] : map) {
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  auto get = [&](const char* key) -> const std::string* {
    auto it = map.find(key);
    return it == map.end() ? nullptr : &it->second;
  };
  auto size = [&](const char* key, auto& field) {
    if (const auto* v = get(key)) field = parse_number<std::size_t>(key, *v);
  };
  auto real = [&](const char* key, auto& field) {
    if (const auto* v = get(key)) field = parse_number<double>(key, *v);
  };

  ExperimentConfig cfg;
  if (const auto* v = get("dataset.kind")) {
    if (*v == "synthetic") {
      cfg.dataset = DatasetKind::kSynthetic;
    } else if (*v == "tabular") {
      cfg.dataset = DatasetKind::kTabular;
    } else {
      throw ConfigError("dataset.kind must be synthetic or tabular, got '" + *v + "'");
    }
  }
  if (const auto* v = get("dataset.style")) {
    try {
      cfg.synthetic.style = parse_bag_style(*v);
    } catch (const ParameterError& e) {
      throw ConfigError(e.what());
    }
  }
  size("dataset.n_bags", cfg.synthetic.n_bags);
  size("dataset.d", cfg.synthetic.d);
  real("dataset.eta", cfg.synthetic.eta);
  size("dataset.n_test", cfg.synthetic.n_test);
  if (const auto* v = get("dataset.seed")) cfg.synthetic_seed = parse_number<std::uint64_t>("dataset.seed", *v);
  if (const auto* v = get("dataset.path")) cfg.tabular.path = *v;
  if (const auto* v = get("dataset.target")) cfg.tabular.schema.target = *v;
  if (const auto* v = get("dataset.positive")) cfg.tabular.schema.positive_values = split_list(*v);
  if (const auto* v = get("dataset.categorical")) {
    for (auto& c : split_list(*v)) cfg.tabular.schema.categorical.insert(c);
  }
  if (const auto* v = get("dataset.ignore")) {
    for (auto& c : split_list(*v)) cfg.tabular.schema.ignore.insert(c);
  }
  if (const auto* v = get("dataset.delimiter")) {
    const std::string d = *v == "\\t" ? "\t" : *v;
    if (d.size() != 1) throw ConfigError("dataset.delimiter must be a single character");
    cfg.tabular.schema.delimiter = d[0];
  }
  if (const auto* v = get("dataset.missing")) {
    cfg.tabular.schema.missing_tokens.clear();
    for (auto& c : split_list(*v)) cfg.tabular.schema.missing_tokens.insert(c);
  }
  real("dataset.test_fraction", cfg.tabular.test_fraction);

  size("q", cfg.q);
  if (const auto* v = get("t")) cfg.t = parse_number<std::size_t>("t", *v);
  if (const auto* v = get("epsilon")) cfg.epsilon = parse_number<double>("epsilon", *v);
  if (const auto* v = get("alpha")) cfg.alpha = parse_number<double>("alpha", *v);
  if (const auto* v = get("c0")) cfg.c0 = parse_number<double>("c0", *v);
  if (const auto* v = get("s")) cfg.s = parse_number<std::size_t>("s", *v);
  if (const auto* v = get("delta")) cfg.delta = parse_number<double>("delta", *v);
  if (const auto* v = get("vc")) cfg.vc = parse_number<std::size_t>("vc", *v);

  real("train.learning_rate", cfg.train.learning_rate);
  size("train.batch_size", cfg.train.batch_size);
  size("train.epochs", cfg.train.epochs);
  real("train.init_scale", cfg.train.init_scale);
  size("runs", cfg.runs);
  if (const auto* v = get("seed")) cfg.base_seed = parse_number<std::uint64_t>("seed", *v);
  size("jobs", cfg.jobs);
  if (const auto* v = get("output")) cfg.output = *v;
  validate(cfg);
  return cfg;
}

}  // namespace llp

#pragma once

#include <map>
#include <string>
#include <vector>

#include "llp/experiment.hpp"

namespace llp {

/// Flattened configuration: nested mappings become dotted keys, sequences
/// become comma-joined values.
using ConfigMap = std::map<std::string, std::string>;

struct ConfigKey {
  const char* name;
  const char* help;
};

/// Every key accepted by experiment_from_map.
const std::vector<ConfigKey>& experiment_keys();

ConfigMap parse_config(const std::string& text);

/// Loads a YAML file. A relative dataset.path is resolved against the file's directory.
ConfigMap load_config(const std::string& path);

/// Throws ConfigError on unknown keys, unparseable values or inconsistent groups.
ExperimentConfig experiment_from_map(const ConfigMap& map);

}  // namespace llp

#pragma once
#include <string>
#include <vector>

#include "dcqe/config.hpp"

namespace dcqe {

/// A parsed configuration plus provenance: which keys were read from the
/// source and which fell back to their defaults. Reports use `defaulted` to
/// flag assumption-carrying values (fidelity, coherence_time).
struct LoadedConfig {
  ExperimentConfig config;
  std::vector<std::string> provided;
  std::vector<std::string> defaulted;
};

/// Parse `key = value` lines ('#' starts a comment, blank lines ignored).
/// Unknown and duplicated keys are rejected with the offending line number;
/// missing keys take the documented defaults; the assembled config is then
/// range-validated. Throws ParseError or InvalidConfigError.
LoadedConfig load_config(const std::string &source);

/// load_config over a file's contents. Throws IoError when unreadable.
LoadedConfig load_config_file(const std::string &path);

/// Note lines for assumption-carrying keys that fell back to defaults.
std::vector<std::string> default_notes(const LoadedConfig &loaded);

} // namespace dcqe

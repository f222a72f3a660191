#include "dcqe/config_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "dcqe/errors.hpp"

namespace dcqe {

namespace {

std::string trim(const std::string &s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string &text, int line) {
  const char *begin = text.c_str();
  char *end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ParseError(line, "expected a number, got '" + text + "'");
  if (!std::isfinite(v)) throw ParseError(line, "value must be finite");
  return v;
}

std::int64_t parse_count(const std::string &key, const std::string &text, int line) {
  const double v = parse_number(text, line);
  if (v != std::floor(v) || std::fabs(v) > 9.0e15)
    throw InvalidConfigError(key + ": must be an integer count");
  return std::int64_t(v);
}

} // namespace

LoadedConfig load_config(const std::string &source) {
  LoadedConfig loaded;
  ExperimentConfig &cfg = loaded.config;

  using Setter = std::function<void(const std::string &, int)>;
  const std::map<std::string, Setter> setters = {
      {"t_phys", [&](const std::string &v, int l) { cfg.t_phys = parse_number(v, l); }},
      {"epsilon", [&](const std::string &v, int l) { cfg.epsilon = parse_number(v, l); }},
      {"t_choice", [&](const std::string &v, int l) { cfg.t_choice = parse_number(v, l); }},
      {"t_delay", [&](const std::string &v, int l) { cfg.t_delay = parse_number(v, l); }},
      {"n_signal", [&](const std::string &v, int l) { cfg.n_signal = parse_count("n_signal", v, l); }},
      {"p_s", [&](const std::string &v, int l) { cfg.p_s = parse_number(v, l); }},
      {"p_i", [&](const std::string &v, int l) { cfg.p_i = parse_number(v, l); }},
      {"p_pair", [&](const std::string &v, int l) { cfg.p_pair = parse_number(v, l); }},
      {"fidelity", [&](const std::string &v, int l) { cfg.fidelity = parse_number(v, l); }},
      {"modes_per_photon",
       [&](const std::string &v, int l) { cfg.modes_per_photon = parse_count("modes_per_photon", v, l); }},
      {"coherence_time",
       [&](const std::string &v, int l) { cfg.coherence_time = parse_number(v, l); }},
      {"readout_time", [&](const std::string &v, int l) { cfg.readout_time = parse_number(v, l); }},
      {"coherence_window_factor",
       [&](const std::string &v, int l) { cfg.coherence_window_factor = parse_number(v, l); }},
      {"multi_pair_threshold",
       [&](const std::string &v, int l) { cfg.multi_pair_threshold = parse_number(v, l); }},
      {"occupancy_policy",
       [&](const std::string &v, int l) {
         if (v == "discard")
           cfg.occupancy_policy = OccupancyPolicy::Discard;
         else if (v == "ignore")
           cfg.occupancy_policy = OccupancyPolicy::Ignore;
         else
           throw ParseError(l, "occupancy_policy must be 'discard' or 'ignore'");
       }},
  };

  std::istringstream in(source);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string stripped = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (stripped.empty()) continue;

    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ParseError(line, "expected 'key = value', got '" + stripped + "'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw ParseError(line, "missing key before '='");
    if (value.empty()) throw ParseError(line, "missing value for key '" + key + "'");

    const auto it = setters.find(key);
    if (it == setters.end()) throw ParseError(line, "unknown key '" + key + "'");
    if (std::find(loaded.provided.begin(), loaded.provided.end(), key) != loaded.provided.end())
      throw ParseError(line, "duplicate key '" + key + "'");
    it->second(value, line);
    loaded.provided.push_back(key);
  }

  for (const auto &[key, setter] : setters)
    if (std::find(loaded.provided.begin(), loaded.provided.end(), key) == loaded.provided.end())
      loaded.defaulted.push_back(key);

  validate_config(cfg);
  return loaded;
}

LoadedConfig load_config_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read config file: " + path);
  return load_config(buf.str());
}

std::vector<std::string> default_notes(const LoadedConfig &loaded) {
  std::vector<std::string> notes;
  const auto defaulted = [&](const char *key) {
    return std::find(loaded.defaulted.begin(), loaded.defaulted.end(), key) !=
           loaded.defaulted.end();
  };
  if (defaulted("fidelity"))
    notes.push_back("fidelity defaulted to 1.0: storage is assumed lossless for erasure; "
                    "supply a measured value for any hardware claim");
  if (defaulted("coherence_time"))
    notes.push_back("coherence_time defaulted to the 1 ps placeholder; the spacing check is "
                    "only meaningful with a measured value");
  return notes;
}

} // namespace dcqe

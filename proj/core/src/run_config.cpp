#include "waveaction/run_config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "waveaction/basis.hpp"

namespace waveaction {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct Extractor {
  std::map<std::string, std::string> kv;
  std::vector<ConfigError>* errors;

  bool has(const std::string& key) const { return kv.count(key) > 0; }

  void number(const std::string& key, double* out) {
    auto it = kv.find(key);
    if (it == kv.end()) return;
    char* end = nullptr;
    const double v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str() || *end != '\0')
      errors->push_back({key, "not a number: '" + it->second + "'"});
    else
      *out = v;
  }

  void integer(const std::string& key, int* out) {
    auto it = kv.find(key);
    if (it == kv.end()) return;
    char* end = nullptr;
    const long v = std::strtol(it->second.c_str(), &end, 10);
    if (end == it->second.c_str() || *end != '\0')
      errors->push_back({key, "not an integer: '" + it->second + "'"});
    else
      *out = static_cast<int>(v);
  }

  void text(const std::string& key, std::string* out) {
    auto it = kv.find(key);
    if (it != kv.end()) *out = it->second;
  }
};

bool profile_key_ok(const std::string& key) {
  return key.empty() || is_named_profile(key) || key.rfind("file:", 0) == 0;
}

}  // namespace

ParsedConfig parse_config_text(const std::string& text) {
  ParsedConfig out;
  std::map<std::string, std::string> kv;

  std::istringstream stream(text);
  std::string line;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      out.errors.push_back({"line " + std::to_string(lineno), "expected 'key = value'"});
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      out.errors.push_back({"line " + std::to_string(lineno), "empty key"});
      continue;
    }
    if (kv.count(key))
      out.errors.push_back({key, "duplicate key"});
    else
      kv[key] = value;
  }

  static const char* known[] = {
      "physical.m",       "physical.kappa",       "physical.L",
      "numerics.N",       "numerics.mu",          "numerics.roundtrip_tol",
      "problem.horizon",  "problem.kind",         "problem.initial_profile",
      "problem.terminal_profile", "problem.n_segments",
      "output.dir",       "output.snapshots",     "output.field_points",
      "output.field_span", "sweep.mu_values",     "sweep.horizon",
      "seed"};
  for (const auto& [key, value] : kv) {
    bool ok = false;
    for (const char* k : known) {
      if (key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) out.errors.push_back({key, "unknown key"});
  }

  Extractor ex{kv, &out.errors};
  RunConfig& cfg = out.config;
  ex.number("physical.m", &cfg.m);
  ex.number("physical.kappa", &cfg.kappa);
  ex.number("physical.L", &cfg.L);
  ex.integer("numerics.N", &cfg.N);
  ex.number("numerics.mu", &cfg.mu);
  ex.number("numerics.roundtrip_tol", &cfg.roundtrip_tol);
  ex.number("problem.horizon", &cfg.horizon);
  ex.text("problem.initial_profile", &cfg.initial_profile);
  ex.text("problem.terminal_profile", &cfg.terminal_profile);
  ex.text("output.dir", &cfg.out_dir);
  ex.integer("output.snapshots", &cfg.snapshots);
  ex.integer("output.field_points", &cfg.field_points);
  ex.number("output.field_span", &cfg.field_span);
  ex.number("sweep.horizon", &cfg.sweep_horizon);

  if (ex.has("problem.kind")) {
    const std::string kind = ex.kv.at("problem.kind");
    if (kind == "displacement")
      cfg.kind = TerminalData::Displacement;
    else if (kind == "velocity")
      cfg.kind = TerminalData::Velocity;
    else
      out.errors.push_back({"problem.kind", "expected 'displacement' or 'velocity'"});
  }
  if (ex.has("problem.n_segments")) {
    const std::string seg = ex.kv.at("problem.n_segments");
    if (seg == "auto") {
      cfg.n_segments = 0;
    } else {
      ex.integer("problem.n_segments", &cfg.n_segments);
      if (cfg.n_segments < 1)
        out.errors.push_back({"problem.n_segments", "must be >= 1 or 'auto'"});
    }
  }
  if (ex.has("sweep.mu_values")) {
    cfg.sweep_mu.clear();
    std::istringstream vs(ex.kv.at("sweep.mu_values"));
    std::string tok;
    while (std::getline(vs, tok, ',')) {
      tok = trim(tok);
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0') {
        out.errors.push_back({"sweep.mu_values", "not a number: '" + tok + "'"});
        break;
      }
      cfg.sweep_mu.push_back(v);
    }
    if (cfg.sweep_mu.empty())
      out.errors.push_back({"sweep.mu_values", "expected a comma-separated list"});
  }
  if (ex.has("seed")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(ex.kv.at("seed").c_str(), &end, 10);
    if (end == ex.kv.at("seed").c_str() || *end != '\0')
      out.errors.push_back({"seed", "not an unsigned integer"});
    else
      cfg.seed = v;
  }

  // Range validation; every violation is reported, not just the first.
  if (!(cfg.m > 0.0)) out.errors.push_back({"physical.m", "must be > 0"});
  if (!(cfg.kappa > 0.0)) out.errors.push_back({"physical.kappa", "must be > 0"});
  if (!(cfg.L > 0.0)) out.errors.push_back({"physical.L", "must be > 0"});
  if (cfg.N < 1) out.errors.push_back({"numerics.N", "must be >= 1"});
  if (cfg.mu < 0.0 || cfg.mu > 1.0) out.errors.push_back({"numerics.mu", "must lie in [0, 1]"});
  if (!(cfg.roundtrip_tol > 0.0))
    out.errors.push_back({"numerics.roundtrip_tol", "must be > 0"});
  if (!(cfg.horizon > 0.0)) out.errors.push_back({"problem.horizon", "must be > 0"});
  if (cfg.snapshots < 1) out.errors.push_back({"output.snapshots", "must be >= 1"});
  if (cfg.field_points < 2) out.errors.push_back({"output.field_points", "must be >= 2"});
  if (cfg.field_span < 0.0) out.errors.push_back({"output.field_span", "must be >= 0"});
  if (!(cfg.sweep_horizon > 0.0)) out.errors.push_back({"sweep.horizon", "must be > 0"});
  if (!profile_key_ok(cfg.initial_profile))
    out.errors.push_back({"problem.initial_profile", "unknown profile '" + cfg.initial_profile + "'"});
  if (!profile_key_ok(cfg.terminal_profile))
    out.errors.push_back({"problem.terminal_profile", "unknown profile '" + cfg.terminal_profile + "'"});
  for (size_t i = 0; i < cfg.sweep_mu.size(); ++i) {
    if (cfg.sweep_mu[i] < 0.0 || cfg.sweep_mu[i] > 1.0) {
      out.errors.push_back({"sweep.mu_values", "entries must lie in [0, 1]"});
      break;
    }
  }
  return out;
}

ParsedConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ParsedConfig out;
    out.errors.push_back({"config", "cannot open '" + path + "'"});
    return out;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace waveaction

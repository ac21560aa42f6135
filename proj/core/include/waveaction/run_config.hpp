#pragma once

#include <string>
#include <vector>

#include "waveaction/tpbvp.hpp"

namespace waveaction {

/// Flat key-value run configuration with dotted section keys. Recognized keys:
///
///   physical.m physical.kappa physical.L
///   numerics.N numerics.mu numerics.roundtrip_tol
///   problem.horizon problem.kind problem.initial_profile
///   problem.terminal_profile problem.n_segments
///   output.dir output.snapshots output.field_points output.field_span
///   sweep.mu_values sweep.horizon
///   seed
///
/// Profiles: "zero", "single-mode", "mode:<k>", "triangle", "raised-cosine",
/// or "file:<path>" (two-column text, '#' comments, ascending positions).
struct RunConfig {
  double m = 1.0;
  double kappa = 1.0;
  double L = 1.0;
  int N = 64;
  double mu = 0.0;
  double roundtrip_tol = 1e-8;

  double horizon = 1.0;
  TerminalData kind = TerminalData::Displacement;
  std::string initial_profile = "zero";
  std::string terminal_profile;
  int n_segments = 0;  // 0 = auto

  std::string out_dir;
  int snapshots = 9;
  int field_points = 201;
  double field_span = 0.0;  // 0 = problem horizon

  std::vector<double> sweep_mu = {1e-1, 3e-2, 1e-2, 3e-3};
  double sweep_horizon = 1.0;

  unsigned long seed = 1u;

  BasisConfig basis() const { return BasisConfig(L, N, m, kappa); }
};

struct ConfigError {
  std::string field;
  std::string message;
};

/// All validation errors are reported together with field paths, never
/// first-failure only.
struct ParsedConfig {
  RunConfig config;
  std::vector<ConfigError> errors;
  bool ok() const { return errors.empty(); }
};

ParsedConfig parse_config_text(const std::string& text);
ParsedConfig parse_config_file(const std::string& path);

}  // namespace waveaction

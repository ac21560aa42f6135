#include "waveaction/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "waveaction/errors.hpp"
#include "waveaction/long_horizon.hpp"
#include "waveaction/operators.hpp"
#include "waveaction/payoff.hpp"
#include "waveaction/propagator.hpp"
#include "waveaction/riccati.hpp"
#include "waveaction/version.hpp"

namespace waveaction {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
      .count();
}

struct OutputWriter {
  fs::path dir;
  json files = json::array();

  explicit OutputWriter(const std::string& out_dir) : dir(out_dir) {
    fs::create_directories(dir);
  }

  void write(const std::string& name, const std::string& contents) {
    const fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << contents;
    out.close();
    files.push_back({{"file", name}, {"checksum", "fnv1a:" + fnv1a_hex(contents)}});
  }

  void write_manifest(json manifest) {
    manifest["outputs"] = files;
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << "\n";
  }
};

json config_echo(const RunConfig& cfg) {
  json j;
  j["physical"] = {{"m", cfg.m}, {"kappa", cfg.kappa}, {"L", cfg.L}};
  j["numerics"] = {{"N", cfg.N}, {"mu", cfg.mu}, {"roundtrip_tol", cfg.roundtrip_tol}};
  j["problem"] = {{"horizon", cfg.horizon},
                  {"kind", cfg.kind == TerminalData::Displacement ? "displacement" : "velocity"},
                  {"initial_profile", cfg.initial_profile},
                  {"terminal_profile", cfg.terminal_profile},
                  {"n_segments", cfg.n_segments}};
  j["output"] = {{"snapshots", cfg.snapshots},
                 {"field_points", cfg.field_points},
                 {"field_span", cfg.field_span}};
  j["sweep"] = {{"mu_values", cfg.sweep_mu}, {"horizon", cfg.sweep_horizon}};
  j["seed"] = cfg.seed;
  return j;
}

SpectralVector load_file_profile(const std::string& path, const BasisConfig& basis) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open profile file '" + path + "'");
  std::vector<double> pos, val;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double p = 0.0, v = 0.0;
    if (ls >> p >> v) {
      pos.push_back(p);
      val.push_back(v);
    }
  }
  return project_profile(pos, val, basis);
}

SpectralVector resolve_profile(const std::string& key, const BasisConfig& basis) {
  if (key.empty() || key == "zero") return SpectralVector(basis);
  if (key.rfind("file:", 0) == 0) return load_file_profile(key.substr(5), basis);
  return project_named_profile(key, basis);
}

std::vector<double> uniform_grid(double length, int points) {
  std::vector<double> grid(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i)
    grid[static_cast<size_t>(i)] =
        length * static_cast<double>(i) / static_cast<double>(points - 1);
  return grid;
}

std::string sampled_csv(const char* schema, const char* columns,
                        const std::vector<double>& xs, const std::vector<double>& ys) {
  std::string out = std::string("# schema: ") + schema + "\n" + columns + "\n";
  for (size_t i = 0; i < xs.size(); ++i) out += fmt(xs[i]) + "," + fmt(ys[i]) + "\n";
  return out;
}

std::string spectral_csv(const char* schema, const SpectralVector& v) {
  std::string out = std::string("# schema: ") + schema + "\nn,coeff\n";
  for (int n = 1; n <= v.size(); ++n)
    out += std::to_string(n) + "," + fmt(v.coeffs[static_cast<size_t>(n - 1)]) + "\n";
  return out;
}

int touched_singular_count(const TpbvpSolution& sol, const TpbvpProblem& prob) {
  int touched = 0;
  for (int n : sol.singular_modes) {
    const size_t i = static_cast<size_t>(n - 1);
    if (prob.initial_displacement.coeffs[i] != 0.0 || prob.terminal.coeffs[i] != 0.0) ++touched;
  }
  return touched;
}

struct SolveArtifacts {
  TpbvpProblem prob;
  TpbvpSolution sol;
  double roundtrip_error = 0.0;
};

SolveArtifacts solve_configured(const RunConfig& cfg) {
  const BasisConfig basis = cfg.basis();
  SolveArtifacts art;
  art.prob.cfg = basis;
  art.prob.mu = cfg.mu;
  art.prob.horizon = cfg.horizon;
  art.prob.kind = cfg.kind;
  art.prob.n_segments = std::max(1, cfg.n_segments);
  art.prob.initial_displacement = resolve_profile(cfg.initial_profile, basis);
  art.prob.terminal = resolve_profile(cfg.terminal_profile, basis);
  art.sol = solve(art.prob);

  // Terminal-state verification: propagate (x0, w0) to the horizon and
  // compare against the achieved/selected terminal displacement.
  const auto snaps = propagate_profile(art.prob.initial_displacement, art.sol.initial_velocity,
                                       cfg.horizon, cfg.mu, 1);
  const SpectralVector reached = displacement_of(snaps.back());
  SpectralVector target = art.sol.z_star;
  for (int n : art.sol.singular_modes) target.coeffs[static_cast<size_t>(n - 1)] = 0.0;
  double diff = 0.0, norm = 0.0;
  for (size_t i = 0; i < target.coeffs.size(); ++i) {
    const double d = reached.coeffs[i] - target.coeffs[i];
    diff += d * d;
    norm += target.coeffs[i] * target.coeffs[i];
  }
  art.roundtrip_error = norm > 0.0 ? std::sqrt(diff / norm) : std::sqrt(diff);
  return art;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  unsigned long long h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return buf;
}

RunConfig apply_overrides(RunConfig cfg, const CommandOptions& opt) {
  if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
  if (cfg.out_dir.empty()) {
    if (const char* env = std::getenv("WAVEACTION_OUTPUT_DIR"); env && *env) cfg.out_dir = env;
  }
  if (cfg.out_dir.empty()) cfg.out_dir = ".";
  if (opt.has_seed) cfg.seed = opt.seed;
  if (opt.modes_override > 0) cfg.N = opt.modes_override;
  if (opt.has_mu) cfg.mu = opt.mu_override;
  return cfg;
}

int cmd_solve(const RunConfig& raw, const CommandOptions& opt, std::ostream& log) {
  const RunConfig cfg = apply_overrides(raw, opt);
  if (cfg.terminal_profile.empty()) {
    log << "error: problem.terminal_profile is required for solve\n";
    return kExitConfig;
  }
  const auto t0 = std::chrono::steady_clock::now();
  try {
    SolveArtifacts art = solve_configured(cfg);
    const double solve_ms = elapsed_ms(t0);

    OutputWriter out(cfg.out_dir);
    const auto grid = uniform_grid(cfg.L, cfg.field_points);
    out.write("velocity_profile.csv",
              sampled_csv("velocity-profile v1", "lambda,v", grid,
                          reconstruct(art.sol.initial_velocity, grid)));
    out.write("velocity_spectral.csv",
              spectral_csv("spectral-dump v1", art.sol.initial_velocity));
    if (cfg.kind == TerminalData::Velocity) {
      out.write("zstar_profile.csv", sampled_csv("zstar-profile v1", "lambda,z", grid,
                                                 reconstruct(art.sol.z_star, grid)));
      out.write("zstar_spectral.csv", spectral_csv("spectral-dump v1", art.sol.z_star));
    }
    {
      const double tau = cfg.horizon / static_cast<double>(art.sol.segments_used);
      const FundamentalSolution diag = make_fundamental_solution(cfg.mu, kInf, tau, cfg.basis());
      std::ostringstream modes;
      write_mode_table(diag, modes);
      out.write("modes.csv", modes.str());
    }

    json manifest;
    manifest["library_version"] = kVersion;
    manifest["command"] = "solve";
    manifest["config"] = config_echo(cfg);
    manifest["diagnostics"] = {
        {"roundtrip_error", art.roundtrip_error},
        {"tail_indicator_w0", art.sol.initial_velocity.tail_indicator()},
        {"tail_indicator_target", art.prob.terminal.tail_indicator()},
        {"singular_modes", art.sol.singular_modes},
        {"segments_used", art.sol.segments_used}};
    manifest["timings_ms"] = {{"solve", solve_ms}, {"total", elapsed_ms(t0)}};
    out.write_manifest(manifest);

    const int touched = touched_singular_count(art.sol, art.prob);
    if (touched > 0) {
      log << "conjugate-point modes carrying data:";
      for (int n : art.sol.singular_modes) log << ' ' << n;
      log << "\n";
      return kExitConjugatePoint;
    }
    if (art.roundtrip_error > cfg.roundtrip_tol) {
      log << "round-trip verification failed: " << art.roundtrip_error << " > "
          << cfg.roundtrip_tol << "\n";
      return kExitSuiteFailure;
    }
    log << "solve ok: roundtrip_error=" << art.roundtrip_error << " segments="
        << art.sol.segments_used << "\n";
    return kExitOk;
  } catch (const ConjugatePointError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConjugatePoint;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_field(const RunConfig& raw, const CommandOptions& opt, std::ostream& log) {
  const RunConfig cfg = apply_overrides(raw, opt);
  if (cfg.terminal_profile.empty()) {
    log << "error: problem.terminal_profile is required for field\n";
    return kExitConfig;
  }
  try {
    SolveArtifacts art = solve_configured(cfg);
    const int touched = touched_singular_count(art.sol, art.prob);

    const double span = cfg.field_span > 0.0 ? cfg.field_span : cfg.horizon;
    const int nsnap = std::max(2, cfg.snapshots);
    const auto snaps = propagate_profile(art.prob.initial_displacement,
                                         art.sol.initial_velocity, span, cfg.mu, nsnap);
    const auto grid = uniform_grid(cfg.L, cfg.field_points);

    std::string csv = "# schema: field v1\ns,lambda,u\n";
    for (const WaveState& s : snaps) {
      const auto u = reconstruct(displacement_of(s), grid);
      for (size_t i = 0; i < grid.size(); ++i)
        csv += fmt(s.time) + "," + fmt(grid[i]) + "," + fmt(u[i]) + "\n";
    }

    OutputWriter out(cfg.out_dir);
    out.write("field.csv", csv);
    json manifest;
    manifest["library_version"] = kVersion;
    manifest["command"] = "field";
    manifest["config"] = config_echo(cfg);
    manifest["diagnostics"] = {{"span", span},
                               {"snapshots", nsnap},
                               {"roundtrip_error", art.roundtrip_error},
                               {"singular_modes", art.sol.singular_modes}};
    out.write_manifest(manifest);
    if (touched > 0) return kExitConjugatePoint;
    log << "field ok: " << nsnap << " snapshots over [0, " << span << "]\n";
    return kExitOk;
  } catch (const ConjugatePointError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConjugatePoint;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_sweep(const RunConfig& raw, const CommandOptions& opt, std::ostream& log) {
  const RunConfig cfg = apply_overrides(raw, opt);
  try {
    const BasisConfig basis = cfg.basis();
    WaveState y0;
    y0.basis = basis;
    y0.mu = 0.0;
    y0.time = 0.0;
    const SpectralVector x0 = resolve_profile(cfg.initial_profile, basis);
    if (x0.norm_half() > 0.0) {
      y0.xi = x0.coeffs;
      y0.pi.assign(x0.coeffs.size(), 0.0);
    } else {
      // Smooth synthetic data, coefficients decaying as n^-4.
      y0.xi.resize(static_cast<size_t>(basis.truncation));
      y0.pi.resize(static_cast<size_t>(basis.truncation));
      for (int n = 1; n <= basis.truncation; ++n) {
        const double a = std::pow(static_cast<double>(n), -4.0);
        y0.xi[static_cast<size_t>(n - 1)] = a;
        y0.pi[static_cast<size_t>(n - 1)] = a;
      }
    }

    std::vector<double> mus = cfg.sweep_mu;
    std::sort(mus.rbegin(), mus.rend());
    const auto table = trotter_kato_gap(y0, cfg.sweep_horizon, mus);

    std::string csv = "# schema: gap-table v1\nmu,gap\n";
    for (const GapEntry& e : table) csv += fmt(e.mu) + "," + fmt(e.gap) + "\n";

    // Fitted log-log slope over the positive entries.
    double slope = 0.0;
    {
      std::vector<double> lx, ly;
      for (const GapEntry& e : table) {
        if (e.mu > 0.0 && e.gap > 0.0) {
          lx.push_back(std::log(e.mu));
          ly.push_back(std::log(e.gap));
        }
      }
      if (lx.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < lx.size(); ++i) {
          sx += lx[i];
          sy += ly[i];
          sxx += lx[i] * lx[i];
          sxy += lx[i] * ly[i];
        }
        const double nn = static_cast<double>(lx.size());
        slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
      }
    }

    OutputWriter out(cfg.out_dir);
    out.write("gap_table.csv", csv);
    json manifest;
    manifest["library_version"] = kVersion;
    manifest["command"] = "sweep";
    manifest["config"] = config_echo(cfg);
    manifest["diagnostics"] = {{"fitted_order", slope}};
    out.write_manifest(manifest);
    log << "sweep ok: fitted order " << slope << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

namespace {

// ---- validation suites ----

SuiteResult suite_operator_identities(const RunConfig& cfg) {
  SuiteResult res{"operator-identities", true, ""};
  double worst = 0.0;
  std::string worst_case;
  auto check = [&](double got, double want, const std::string& label) {
    const double denom = std::max({std::abs(want), std::abs(got), 1e-300});
    const double rel = std::abs(got - want) / denom;
    if (rel > worst) {
      worst = rel;
      worst_case = label;
    }
  };
  for (double L : {0.5, 1.0, 2.0}) {
    const BasisConfig basis(L, cfg.N, cfg.m, cfg.kappa);
    for (double mu : {1e-3, 0.1, 1.0}) {
      const auto A = make_operator(OperatorKind::A, mu, basis);
      const auto As = make_operator(OperatorKind::A_sqrt, mu, basis);
      const auto J = make_operator(OperatorKind::J, mu, basis);
      const auto Imu = make_operator(OperatorKind::I_mu, mu, basis);
      const auto Is = make_operator(OperatorKind::I_mu_sqrt, mu, basis);
      const auto M = make_operator(OperatorKind::M_mu, mu, basis);
      const auto K = make_operator(OperatorKind::K_mu, mu, basis);
      for (int n = 1; n <= basis.truncation; ++n) {
        const double lam = lambda_n(n, basis);
        check(J.eig(n) * As.eig(n), 1.0, "J*A^1/2=I");
        check(As.eig(n) * As.eig(n), A.eig(n), "A^1/2*A^1/2=A");
        check(Is.eig(n) * Is.eig(n), Imu.eig(n), "I_mu^1/2 squared");
        check(K.eig(n) * K.eig(n), M.eig(n), "K_mu^2=M_mu");
        check(M.eig(n) * M.eig(n), 1.0 / lam + mu * mu, "M_mu^2=A^-1+mu^2 I");
        // A I_mu = (1/mu^2)(I - I_mu), rearranged to I_mu + mu^2 A I_mu = I so
        // small mu^2 lambda does not cancel.
        check(Imu.eig(n) + mu * mu * A.eig(n) * Imu.eig(n), 1.0, "A I_mu=(I-I_mu)/mu^2");
        check(op_compose(As, Imu).eig(n), op_compose(Imu, As).eig(n), "commutation");
      }
    }
  }
  res.pass = worst < 1e-13;
  res.detail = "max relative error " + fmt(worst) + " (" + worst_case + ")";
  return res;
}

SuiteResult suite_riccati_residuals(const RunConfig& cfg, const ValidateOptions& opt) {
  SuiteResult res{"riccati-residuals", true, ""};
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const BasisConfig basis = cfg.basis();
  const double cb = cbar(cfg.m, cfg.kappa);
  const double h = 1e-5;
  double worst = 0.0;
  int worst_mode = 0;
  for (int trial = 0; trial < 64; ++trial) {
    const double mu = 0.3 + 0.7 * unif(rng);
    const double tb = concave_horizon(mu, cfg.m, cfg.kappa);
    const double t = (0.3 + 0.55 * unif(rng)) * tb;
    const double c = cb * std::exp(std::log(1.5) + unif(rng) * (std::log(20.0) - std::log(1.5)));
    int n = 1 + static_cast<int>(unif(rng) * std::min(cfg.N, 64));
    if (opt.corrupt_mode > 0 && trial == 0) n = opt.corrupt_mode;

    ModeTriple lo = eig_pqr_finite(n, t - h, mu, c, basis);
    ModeTriple mid = eig_pqr_finite(n, t, mu, c, basis);
    ModeTriple hi = eig_pqr_finite(n, t + h, mu, c, basis);
    if (opt.corrupt_mode > 0 && n == opt.corrupt_mode) mid.p += 1e-3;  // fault injection hook
    const ModeParams mp = mode_params(n, mu, basis);
    const double g = mp.lambda_mu / cfg.m;
    const double rp = (hi.p - lo.p) / (2.0 * h) - (cfg.kappa + g * mid.p * mid.p);
    const double rq = (hi.q - lo.q) / (2.0 * h) - g * mid.p * mid.q;
    const double rr = (hi.r - lo.r) / (2.0 * h) - g * mid.q * mid.q;
    const double bad = std::max({std::abs(rp), std::abs(rq), std::abs(rr)});
    if (bad > worst) {
      worst = bad;
      worst_mode = n;
    }
  }
  res.pass = worst < 1e-6;
  res.detail = "max |residual| " + fmt(worst) + " at mode " + std::to_string(worst_mode);
  return res;
}

SuiteResult suite_hjb(const RunConfig& cfg, const ValidateOptions& opt) {
  SuiteResult res{"hjb-residual", true, ""};
  std::mt19937_64 rng(opt.seed + 1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const BasisConfig basis = cfg.basis();
  const double cb = cbar(cfg.m, cfg.kappa);

  double worst_dpe = 0.0;
  double worst_ic = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double mu = 0.3 + 0.7 * unif(rng);
    const double tb = concave_horizon(mu, cfg.m, cfg.kappa);
    const double t = (0.3 + 0.5 * unif(rng)) * tb;
    const double c = cb * (1.5 + 8.0 * unif(rng));
    SpectralVector x(basis), z(basis);
    for (int i = 0; i < basis.truncation; ++i) {
      const double decay = 1.0 / (1.0 + static_cast<double>(i) * static_cast<double>(i));
      x.coeffs[static_cast<size_t>(i)] = gauss(rng) * decay;
      z.coeffs[static_cast<size_t>(i)] = gauss(rng) * decay;
    }

    // dW/dt by centered difference; grad_x W by coefficient-wise centered
    // difference (exact for the quadratic form).
    const double ht = 1e-6 * tb;
    const auto fs_lo = make_fundamental_solution(mu, c, t - ht, basis);
    const auto fs_mid = make_fundamental_solution(mu, c, t, basis);
    const auto fs_hi = make_fundamental_solution(mu, c, t + ht, basis);
    const double dwdt = (eval_W(fs_hi, x, z) - eval_W(fs_lo, x, z)) / (2.0 * ht);
    SpectralVector grad(basis);
    const double hx = 1e-4;
    for (int i = 0; i < basis.truncation; ++i) {
      SpectralVector xp = x, xm = x;
      xp.coeffs[static_cast<size_t>(i)] += hx;
      xm.coeffs[static_cast<size_t>(i)] -= hx;
      grad.coeffs[static_cast<size_t>(i)] =
          (eval_W(fs_mid, xp, z) - eval_W(fs_mid, xm, z)) / (2.0 * hx);
    }
    const double H = verification_hamiltonian(x, grad, mu, basis);
    worst_dpe = std::max(worst_dpe, std::abs(dwdt - H));

    // W(0,x,z) = -(c/2)||K_mu (x - z)||^2 through the operator family.
    const auto fs0 = make_fundamental_solution(mu, c, 0.0, basis);
    const auto K = make_operator(OperatorKind::K_mu, mu, basis);
    const SpectralVector kd = op_apply(K, x - z);
    const double psi = -0.5 * c * kd.norm_half() * kd.norm_half();
    const double w0 = eval_W(fs0, x, z);
    worst_ic = std::max(worst_ic, std::abs(w0 - psi) / std::max(1.0, std::abs(psi)));
  }
  res.pass = worst_dpe < 1e-5 && worst_ic < 1e-12;
  res.detail = "max |DPE residual| " + fmt(worst_dpe) + ", max IC gap " + fmt(worst_ic);
  return res;
}

SuiteResult suite_concavity(const RunConfig& cfg, const ValidateOptions& opt) {
  SuiteResult res{"concavity", true, ""};
  std::mt19937_64 rng(opt.seed + 2);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const BasisConfig basis = cfg.basis();
  double worst_margin = -kInf;  // max over probes of (second difference - bound)
  bool all_negative = true;
  for (int trial = 0; trial < 200; ++trial) {
    const double mu = 0.2 + 0.8 * unif(rng);
    const double tb = concave_horizon(mu, cfg.m, cfg.kappa);
    const double t = 0.9 * tb;
    const int K = 4;

    PayoffSpec spec;
    spec.cfg = basis;
    spec.mu = mu;
    spec.horizon = t;
    if (trial % 2 == 0) {
      spec.terminal = TerminalKind::Zero;
    } else {
      spec.terminal = TerminalKind::Quadratic;
      spec.weight_c = 1.0 + 10.0 * unif(rng);
      spec.target = SpectralVector(basis);
      for (auto& v : spec.target.coeffs) v = gauss(rng);
    }
    SpectralVector x0(basis);
    for (auto& v : x0.coeffs) v = gauss(rng);
    auto randin = [&]() {
      PiecewiseConstantInput w = PiecewiseConstantInput::zero(basis, K, t);
      for (auto& step : w.steps)
        for (auto& v : step) v = gauss(rng);
      return w;
    };
    const auto w_star = randin();
    const auto w_tilde = randin();
    const double delta = 0.2 + 0.8 * unif(rng);

    const double dd = second_difference(spec, x0, w_star, w_tilde, delta);
    const double bound =
        -delta * delta * (cfg.m * mu * mu - cfg.kappa * t * t / 2.0) * input_norm_sq(w_tilde);
    if (dd >= 0.0) all_negative = false;
    worst_margin = std::max(worst_margin, dd - bound);
  }
  res.pass = all_negative && worst_margin <= 1e-10;
  res.detail = "max (second difference - bound) = " + fmt(worst_margin);
  return res;
}

SuiteResult suite_roundtrip(const RunConfig& cfg) {
  SuiteResult res{"round-trip", true, ""};
  const BasisConfig basis = cfg.basis();
  const double tunit = cfg.L * std::sqrt(cfg.m / cfg.kappa);

  TpbvpProblem prob;
  prob.cfg = basis;
  prob.mu = 0.0;
  prob.horizon = std::numbers::pi / 3.0 * tunit;
  prob.kind = TerminalData::Displacement;
  prob.initial_displacement = SpectralVector(basis);
  prob.terminal = project_bandlimited_profile("raised-cosine", basis, 16);
  const TpbvpSolution sol = solve_displacement(prob);
  const auto snaps =
      propagate_profile(prob.initial_displacement, sol.initial_velocity, prob.horizon, 0.0, 1);
  const SpectralVector reached = displacement_of(snaps.back());
  const double err = (reached - prob.terminal).norm_half() /
                     std::max(prob.terminal.norm_half(), 1e-300);

  // Velocity-target two-path consistency at a quarter-period-free horizon.
  TpbvpProblem vprob = prob;
  vprob.kind = TerminalData::Velocity;
  vprob.horizon = 0.37 * tunit;
  vprob.terminal = project_bandlimited_profile("raised-cosine", basis, 16);
  const TpbvpSolution vsol = solve_velocity(vprob);
  const SpectralVector oneshot = velocity_one_shot(vprob);
  double twopath = 0.0;
  for (size_t i = 0; i < oneshot.coeffs.size(); ++i)
    twopath = std::max(twopath,
                       std::abs(oneshot.coeffs[i] - vsol.initial_velocity.coeffs[i]));

  res.pass = err < 1e-8 && twopath < 1e-12;
  res.detail = "displacement round-trip " + fmt(err) + ", velocity two-path gap " + fmt(twopath);
  return res;
}

}  // namespace

std::vector<SuiteResult> run_validation_suites(const RunConfig& cfg, const ValidateOptions& opt) {
  std::vector<SuiteResult> out;
  out.push_back(suite_operator_identities(cfg));
  out.push_back(suite_riccati_residuals(cfg, opt));
  out.push_back(suite_hjb(cfg, opt));
  out.push_back(suite_concavity(cfg, opt));
  out.push_back(suite_roundtrip(cfg));
  return out;
}

int cmd_validate(const RunConfig& raw, const CommandOptions& opt, std::ostream& log) {
  const RunConfig cfg = apply_overrides(raw, opt);
  try {
    ValidateOptions vopt;
    vopt.seed = cfg.seed;
    const auto suites = run_validation_suites(cfg, vopt);

    bool all = true;
    json report = json::array();
    for (const SuiteResult& s : suites) {
      all = all && s.pass;
      log << (s.pass ? "[PASS] " : "[FAIL] ") << s.name << ": " << s.detail << "\n";
      report.push_back({{"suite", s.name}, {"pass", s.pass}, {"detail", s.detail}});
    }

    OutputWriter out(cfg.out_dir);
    json manifest;
    manifest["library_version"] = kVersion;
    manifest["command"] = "validate";
    manifest["config"] = config_echo(cfg);
    manifest["suites"] = report;
    out.write("validate_report.json", manifest.dump(2) + "\n");
    out.write_manifest(manifest);
    return all ? kExitOk : kExitSuiteFailure;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace waveaction

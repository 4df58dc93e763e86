// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <random>

#include "darkcat/cx.hpp"
#include "darkcat/dark_states.hpp"
#include "darkcat/gates.hpp"
#include "darkcat/stabilization.hpp"

namespace darkcat::cli {
namespace {

Cell integer_cell(long long v) { return Cell{static_cast<std::int64_t>(v)}; }
Cell flag_cell(bool b) { return integer_cell(b ? 1 : 0); }

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class T>
T lookup(const std::map<std::string, T>& table, const std::string& key) {
  return table.at(key);
}

cplx read_complex(ConfigReader& r, const std::string& key) {
  const std::vector<double> v = r.numbers(key, {0.0});
  if (v.size() > 2) throw ConfigError(key + ": expected a number or [re, im]");
  return {v[0], v.size() == 2 ? v[1] : 0.0};
}

double read_positive(ConfigReader& r, const std::string& key, double fallback) {
  const double v = r.number(key, fallback);
  if (!(v > 0.0)) throw ConfigError(key + ": must be positive");
  return v;
}

const std::map<std::string, Polarization> kPolarizations = {{"all", Polarization::kAllThree},
                                                             {"sigma_pm", Polarization::kSigmaPmOnly}};

// ---------------------------------------------------------------------------
// dark-states

struct DarkJob {
  DriveConfig drive;
  std::string source;
  int index = 0;
};

CMatrix pair_matrix(const DarkStatePair& p) {
  CMatrix m(p.ds1.size(), 2);
  m << p.ds1, p.ds2;
  return m;
}

}  // namespace

Table run_dark_states(ConfigReader& cfg, const RunContext& ctx) {
  const std::vector<HalfInt> spins = cfg.spins("fg");
  const double detuning = cfg.number("detuning_rad_per_us", 0.0);
  const double zeeman = cfg.number("differential_zeeman_rad_per_us", 0.0);
  const double gamma = cfg.number("gamma_per_us", 0.0);
  const int random_count = cfg.integer("random_drives", 0);
  const int seed = cfg.integer("seed", 1);
  if (random_count < 0) throw ConfigError("random_drives: must be non-negative");

  std::vector<DriveConfig> given;
  if (cfg.has("drives")) {
    for (ConfigReader d : cfg.objects("drives")) {
      DriveConfig dc;
      dc.omega.plus = read_complex(d, "omega_plus_rad_per_us");
      dc.omega.zero = read_complex(d, "omega_zero_rad_per_us");
      dc.omega.minus = read_complex(d, "omega_minus_rad_per_us");
      dc.detuning = d.number("detuning_rad_per_us", detuning);
      dc.differential_zeeman = d.number("differential_zeeman_rad_per_us", zeeman);
      dc.gamma = d.number("gamma_per_us", gamma);
      d.finish();
      if (dc.omega.norm() == 0.0) throw ConfigError("drives: all-zero drive has no dark-state pair");
      given.push_back(dc);
    }
  }
  if (given.empty() && random_count == 0) throw ConfigError("need drives or random_drives > 0");

  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<DarkJob> jobs;
  for (HalfInt fg : spins) {
    for (std::size_t i = 0; i < given.size(); ++i) {
      DriveConfig dc = given[i];
      dc.fg = fg;
      jobs.push_back({dc, "given", static_cast<int>(i)});
    }
    for (int i = 0; i < random_count; ++i) {
      DriveConfig dc;
      dc.fg = fg;
      dc.omega.plus = {normal(rng), normal(rng)};
      dc.omega.zero = {normal(rng), normal(rng)};
      dc.omega.minus = {normal(rng), normal(rng)};
      dc.detuning = detuning;
      dc.differential_zeeman = zeeman;
      dc.gamma = gamma;
      jobs.push_back({dc, "random", i});
    }
  }

  Table t;
  t.columns = {"fg",          "source",      "index",          "omega_norm_rad_per_us", "principal_angle_rad",
               "residual_null", "residual_rotation", "degenerate", "orthogonal", "theta1_rad",
               "phi1_rad",    "theta2_rad",  "phi2_rad"};
  t.rows = parallel_rows(jobs.size(), ctx.threads, [&](std::size_t i) -> std::vector<Row> {
    const DarkJob& job = jobs[i];
    const DarkSpinSpace space(job.drive.fg);
    const DarkStatePair a = find_dark_states_null(job.drive);
    const DarkStatePair b = find_dark_states_rotation(job.drive);
    const CMatrix h = build_hds(job.drive);
    auto residual = [&](const DarkStatePair& p) {
      return std::max((h * space.embed_ground(p.ds1)).norm(), (h * space.embed_ground(p.ds2)).norm());
    };
    const auto angle = [](const std::optional<ScsAngles>& s, bool theta) {
      return s ? (theta ? s->theta : s->phi) : kNaN;
    };
    return {{job.drive.fg.value(), job.source, integer_cell(job.index), job.drive.omega.norm(),
             max_principal_angle(pair_matrix(a), pair_matrix(b)), residual(a), residual(b), flag_cell(b.degenerate),
             flag_cell(b.orthogonal), angle(b.angles1, true), angle(b.angles1, false), angle(b.angles2, true),
             angle(b.angles2, false)}};
  });
  return t;
}

namespace {

StabilizationConfig read_stabilization(ConfigReader& cfg) {
  StabilizationConfig s;
  s.omega = read_positive(cfg, "omega_rad_per_us", 1.0);
  s.gamma = read_positive(cfg, "gamma_per_us", 1.0);
  s.detuning = cfg.number("detuning_rad_per_us", 0.0);
  s.differential_zeeman = cfg.number("differential_zeeman_rad_per_us", 0.0);
  s.polarization = lookup(kPolarizations, cfg.choice("polarization", {"all", "sigma_pm"}, "all"));
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// noise-bench

Table run_noise_bench(ConfigReader& cfg, const RunContext& ctx) {
  const std::vector<HalfInt> spins = cfg.spins("fg");
  const StabilizationConfig base = read_stabilization(cfg);
  const std::string noise = cfg.choice("noise", {"white", "ou"}, "white");
  const NoiseAxis axis = cfg.choice("axis", {"z", "x"}, "z") == "z" ? NoiseAxis::kZ : NoiseAxis::kX;
  const double kappa = cfg.number("kappa_per_us", 1e-4);
  if (kappa < 0.0) throw ConfigError("kappa_per_us: must be non-negative");
  std::vector<double> lambdas = {0.0};
  if (noise == "ou") {
    lambdas = cfg.numbers("lambda_per_us");
    for (double l : lambdas) {
      if (!(l > 0.0)) throw ConfigError("lambda_per_us: must be positive");
    }
  } else if (cfg.has("lambda_per_us")) {
    throw ConfigError("lambda_per_us: only used with \"noise\": \"ou\"");
  }
  RateWindowOptions window;
  window.samples = cfg.integer("window_samples", window.samples);
  window.min_r_squared = cfg.number("min_r_squared", window.min_r_squared);
  if (window.samples < 5) throw ConfigError("window_samples: need at least 5");
  if (!(window.min_r_squared > 0.0 && window.min_r_squared <= 1.0)) {
    throw ConfigError("min_r_squared: must lie in (0, 1]");
  }

  struct Job {
    HalfInt fg;
    double lambda;
  };
  std::vector<Job> jobs;
  for (double l : lambdas) {
    for (HalfInt fg : spins) jobs.push_back({fg, l});
  }

  Table t;
  t.columns = {"fg",
               "noise",
               "lambda_per_us",
               "kappa_per_us",
               "slope_xx_per_us",
               "slope_yy_per_us",
               "slope_zz_per_us",
               "normalized_slope_xx_per_us",
               "normalized_slope_zz_per_us",
               "window_zz_lo_us",
               "window_zz_hi_us",
               "r_squared_zz",
               "window_shifts_zz",
               "firstorder_slope_zz_per_us"};
  t.rows = parallel_rows(jobs.size(), ctx.threads, [&](std::size_t i) -> std::vector<Row> {
    NoiseBenchSpec spec;
    spec.stab = base;
    spec.stab.fg = jobs[i].fg;
    spec.kind = noise == "ou" ? NoiseKind::kOrnsteinUhlenbeck : NoiseKind::kWhite;
    spec.axis = axis;
    spec.kappa = kappa;
    spec.lambda = jobs[i].lambda;
    const RateEstimate r = stabilized_noise_rates(spec, window);
    const DiagonalRate& zz = r.diag[3];
    return {{jobs[i].fg.value(), noise, jobs[i].lambda, kappa, r.diag[1].slope, r.diag[2].slope, zz.slope,
             r.diag[1].normalized_slope, zz.normalized_slope, zz.t_lo, zz.t_hi, zz.r_squared, integer_cell(zz.shifts),
             bitflip_rate_firstorder(jobs[i].fg, kappa).exact}};
  });
  return t;
}

// ---------------------------------------------------------------------------
// stab-gap

Table run_stab_gap(ConfigReader& cfg, const RunContext& ctx) {
  const std::vector<HalfInt> spins = cfg.spins("fg");
  const std::vector<double> omegas = cfg.numbers("omega_rad_per_us", {1.0});
  const std::vector<double> gammas = cfg.numbers("gamma_per_us", {1.0});
  const std::vector<std::string> pols = cfg.choices("polarization", {"all", "sigma_pm"}, {"all"});
  const double detuning = cfg.number("detuning_rad_per_us", 0.0);
  const double zeeman = cfg.number("differential_zeeman_rad_per_us", 0.0);
  for (double x : omegas) {
    if (!(x > 0.0)) throw ConfigError("omega_rad_per_us: must be positive");
  }
  for (double x : gammas) {
    if (!(x > 0.0)) throw ConfigError("gamma_per_us: must be positive");
  }

  std::vector<StabilizationConfig> grid;
  std::vector<std::string> pol_names;
  for (const std::string& p : pols) {
    for (HalfInt fg : spins) {
      for (double g : gammas) {
        for (double w : omegas) {
          StabilizationConfig s;
          s.fg = fg;
          s.omega = w;
          s.gamma = g;
          s.polarization = lookup(kPolarizations, p);
          s.detuning = detuning;
          s.differential_zeeman = zeeman;
          grid.push_back(s);
          pol_names.push_back(p);
        }
      }
    }
  }

  Table t;
  t.columns = {"fg",          "polarization",    "omega_rad_per_us", "gamma_per_us", "gap_per_us",
               "reference_per_us", "gap_over_reference"};
  t.rows = parallel_rows(grid.size(), ctx.threads, [&](std::size_t i) -> std::vector<Row> {
    const GapPoint p = dissipative_gap_scan({grid[i]}).front();
    return {{p.cfg.fg.value(), pol_names[i], p.cfg.omega, p.cfg.gamma, p.gap, p.reference, p.gap / p.reference}};
  });
  return t;
}

// ---------------------------------------------------------------------------
// gate-bench

Table run_gate_bench(ConfigReader& cfg, const RunContext& ctx) {
  static const std::map<std::string, GateKind> kinds = {{"uz", GateKind::kUz},
                                                        {"ux", GateKind::kUx},
                                                        {"prep_plus", GateKind::kPrepPlus},
                                                        {"ux_holonomic", GateKind::kUxHolonomic}};
  static const std::map<std::string, CdForm> cds = {
      {"none", CdForm::kNone}, {"generic", CdForm::kGeneric}, {"per_segment", CdForm::kPerSegment}};

  GateSpec base;
  const std::string gate = cfg.choice("gate", {"uz", "ux", "prep_plus", "ux_holonomic"}, "uz");
  base.kind = lookup(kinds, gate);
  const std::vector<HalfInt> spins = cfg.spins("fg");
  const std::vector<double> durations = cfg.numbers("duration_us");
  for (double d : durations) {
    if (!(d > 0.0)) throw ConfigError("duration_us: must be positive");
  }
  base.omega = read_positive(cfg, "omega_rad_per_us", 1.0);
  const std::vector<std::string> cd_names = cfg.choices("cd", {"none", "generic", "per_segment"}, {"none"});
  base.stabilize_after = cfg.boolean("stabilize_after", true);
  base.alpha1 = cfg.number("alpha1_rad", kDefaultAlpha1);
  base.beta1 = cfg.number("beta1_rad", kDefaultBeta1);
  base.alpha_x = cfg.number("alpha_x_rad", kPi);
  base.gamma = cfg.number("gamma_per_us", 0.0);
  if (base.gamma < 0.0) throw ConfigError("gamma_per_us: must be non-negative");
  std::optional<OUNoise> noise;
  if (cfg.has("noise")) {
    ConfigReader n = cfg.object("noise");
    noise = OUNoise{n.number("kappa_per_us"), n.number("lambda_per_us")};
    n.finish();
    if (noise->kappa < 0.0 || !(noise->lambda > 0.0)) {
      throw ConfigError("noise: need kappa_per_us >= 0 and lambda_per_us > 0");
    }
  }

  struct Job {
    GateSpec spec;
    std::string cd;
  };
  std::vector<Job> jobs;
  for (const std::string& c : cd_names) {
    for (HalfInt fg : spins) {
      for (double d : durations) {
        GateSpec s = base;
        s.fg = fg;
        s.duration = d;
        s.cd = lookup(cds, c);
        jobs.push_back({s, c});
      }
    }
  }

  Table t;
  t.columns = {"gate",  "fg",           "duration_us",        "cd",          "r_xx",        "r_yy",
               "r_zz",  "alpha_star_rad", "nominal_angle_rad", "infidelity", "biased",       "prep_fidelity",
               "leakage"};
  t.rows = parallel_rows(jobs.size(), ctx.threads, [&](std::size_t i) -> std::vector<Row> {
    const GateSpec& s = jobs[i].spec;
    const GateResult r = simulate_gate(s, noise, ctx.ode);
    const Ptm& res = r.channel.residual;
    return {{gate, s.fg.value(), s.duration, jobs[i].cd, res(1, 1), res(2, 2), res(3, 3), r.channel.alpha_star,
             r.nominal_angle, r.infidelity.value, flag_cell(r.infidelity.biased), r.prep_fidelity, r.leakage}};
  });
  return t;
}

// ---------------------------------------------------------------------------
// cx-bench

namespace {

const std::map<std::string, ControlState> kControls = {{"zero", ControlState::kZero},
                                                       {"rydberg", ControlState::kRydberg}};

std::vector<double> default_scan_factors() {
  std::vector<double> f;
  for (int k = 0; k <= 10; ++k) f.push_back(1.0 + 0.05 * k);
  return f;
}

}  // namespace

Table run_cx_bench(ConfigReader& cfg, const RunContext& ctx) {
  const std::string mode = cfg.choice("mode", {"ptm", "scan", "monitor", "trace", "rate"}, "ptm");
  const std::vector<HalfInt> spins = cfg.spins("fg");
  CxConfig base;
  base.omega_r = cfg.number("omega_r_rad_per_us");
  base.delta_r = cfg.number("delta_r_rad_per_us");
  const std::vector<double> blockades = cfg.numbers("v_rad_per_us", {base.v});
  base.gamma_r = cfg.number("gamma_r_per_us", 0.0);
  base.ramp = cfg.choice("ramp", {"tanh", "none"}, "tanh") == "tanh" ? CxRamp::kTanh : CxRamp::kNone;
  base.ramp_a = cfg.number("ramp_a", base.ramp_a);
  base.ramp_n = cfg.integer("ramp_n", base.ramp_n);
  base.decay = cfg.choice("decay", {"basic", "extended"}, "basic") == "basic" ? CxDecayModel::kBasic
                                                                              : CxDecayModel::kExtended;
  base.stabilize_after = cfg.boolean("stabilize_after", true);

  std::vector<double> durations, factors;
  if (cfg.has("duration_us") && cfg.has("duration_factor")) {
    throw ConfigError("give duration_us or duration_factor, not both");
  }
  if (mode != "scan" && mode != "rate") {
    if (cfg.has("duration_us")) {
      durations = cfg.numbers("duration_us");
      for (double d : durations) {
        if (!(d > 0.0)) throw ConfigError("duration_us: must be positive");
      }
    } else {
      factors = cfg.numbers("duration_factor", {1.0});
      for (double f : factors) {
        if (!(f > 0.0)) throw ConfigError("duration_factor: must be positive");
      }
    }
  }
  std::vector<std::string> controls = {"zero"};
  if (mode == "ptm" || mode == "monitor" || mode == "trace") {
    controls = cfg.choices("control", {"zero", "rydberg"}, {"zero", "rydberg"});
  }
  const std::string model = mode == "ptm" ? cfg.choice("model", {"block", "full"}, "block") : "block";
  const std::vector<int> n_re = mode == "monitor" ? cfg.integers("n_re", {0}) : std::vector<int>{0};
  for (int n : n_re) {
    if (n < 0) throw ConfigError("n_re: must be non-negative");
  }
  const int samples = mode == "trace" ? cfg.integer("samples", 101) : 0;
  if (mode == "trace" && samples < 2) throw ConfigError("samples: need at least 2");
  const std::vector<double> scan_factors =
      mode == "scan" ? cfg.numbers("scan_factors", default_scan_factors()) : std::vector<double>{};

  // Validate every grid point up front so a bad entry is a config error.
  struct Job {
    CxConfig cx;
    std::string control;
    double factor = kNaN;
  };
  std::vector<Job> jobs;
  const std::size_t n_dur = std::max<std::size_t>(1, std::max(durations.size(), factors.size()));
  for (const std::string& c : controls) {
    for (int n : n_re) {
      for (HalfInt fg : spins) {
        for (double v : blockades) {
          for (std::size_t k = 0; k < n_dur; ++k) {
            CxConfig x = base;
            x.fg = fg;
            x.v = v;
            x.n_re = n;
            double factor = kNaN;
            try {
              validate(x);
              if (!durations.empty()) {
                x.duration = durations[k];
              } else if (!factors.empty()) {
                factor = factors[k];
                x.duration = factor * predicted_gate_time(x);
              }
              validate(x);
            } catch (const InvalidArgument& e) {
              throw ConfigError(e.what());
            }
            jobs.push_back({x, c, factor});
          }
        }
      }
    }
  }

  Table t;
  if (mode == "ptm") {
    t.columns = {"fg",         "v_rad_per_us", "control", "model",      "duration_us", "duration_factor",
                 "mu_per_us",  "r_xx",         "r_yy",    "r_zz",       "infidelity",  "biased",
                 "retained"};
  } else if (mode == "scan") {
    t.columns = {"fg", "v_rad_per_us", "t_pi_us", "t_opt_us", "t_opt_factor", "infidelity", "biased", "retained"};
  } else if (mode == "monitor") {
    t.columns = {"fg", "v_rad_per_us", "control", "n_re", "duration_us", "fidelity", "stop_probability"};
  } else if (mode == "trace") {
    t.columns = {"fg", "v_rad_per_us", "control", "duration_us", "t_us", "p0", "p1", "p_rydberg"};
  } else {
    t.columns = {"fg", "v_rad_per_us", "mu_effective_per_us", "measured_rate_per_us", "relative_difference"};
  }

  t.rows = parallel_rows(jobs.size(), ctx.threads, [&](std::size_t i) -> std::vector<Row> {
    const Job& job = jobs[i];
    const CxConfig& x = job.cx;
    const ControlState control = lookup(kControls, job.control);
    const double fg = x.fg.value();
    if (mode == "ptm") {
      const CxOutcome o = model == "full" ? simulate_cx_full(x, control, ctx.ode) : simulate_cx(x, control, ctx.ode);
      return {{fg, x.v, job.control, model, o.duration, job.factor, mu_effective(x), o.residual(1, 1),
               o.residual(2, 2), o.residual(3, 3), o.infidelity.value, flag_cell(o.infidelity.biased), o.retained}};
    }
    if (mode == "scan") {
      const TimeScan s = scan_gate_time(x, scan_factors, ctx.ode);
      const double t_pi = predicted_gate_time(x);
      return {{fg, x.v, t_pi, s.t_opt, s.t_opt / t_pi, s.best.infidelity.value, flag_cell(s.best.infidelity.biased),
               s.best.retained}};
    }
    if (mode == "monitor") {
      const MonitoredOutcome m = monitored_cx(x, control, ctx.ode);
      return {{fg, x.v, job.control, integer_cell(x.n_re), cx_duration(x), m.fidelity, m.stop_probability}};
    }
    if (mode == "trace") {
      const double duration = cx_duration(x);
      std::vector<double> times(samples);
      for (int k = 0; k < samples; ++k) times[k] = duration * k / (samples - 1);
      const PopulationTrace p = cx_population_trace(x, control, times, ctx.ode);
      std::vector<Row> rows;
      for (std::size_t k = 0; k < p.t.size(); ++k) {
        rows.push_back({fg, x.v, job.control, duration, p.t[k], p.p0[k], p.p1[k], p.pr[k]});
      }
      return rows;
    }
    const double mu = mu_effective(x);
    const double measured = measured_swap_rate(x, ctx.ode);
    return {{fg, x.v, mu, measured, measured / mu - 1.0}};
  });
  return t;
}

CommandFn find_command(const std::string& name) {
  static const std::map<std::string, CommandFn> commands = {{"dark-states", &run_dark_states},
                                                            {"noise-bench", &run_noise_bench},
                                                            {"stab-gap", &run_stab_gap},
                                                            {"gate-bench", &run_gate_bench},
                                                            {"cx-bench", &run_cx_bench}};
  const auto it = commands.find(name);
  return it == commands.end() ? nullptr : it->second;
}

}  // namespace darkcat::cli

#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <optional>
#include <random>
#include <sstream>

#include "output.hpp"
#include "stripwave/errors.hpp"
#include "stripwave/fd_oracle.hpp"
#include "stripwave/kernels.hpp"
#include "stripwave/modal_core.hpp"
#include "stripwave/norm_analysis.hpp"
#include "stripwave/parallel.hpp"
#include "stripwave/spectrum.hpp"
#include "stripwave/timedomain.hpp"

namespace stripwave::cli {
namespace {

using json = nlohmann::ordered_json;

struct Common {
  std::string config_file;
  std::optional<double> a0, sigma, c0, regime_c, regime_C;
  std::optional<int> grid, quad;
  std::uint64_t seed = 20240611;
  std::string out;
  std::string format = "csv";
  bool dry_run = false;
  unsigned threads = 1;
  std::string timestamp;
  std::string kernels = "auto";
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config_file, "key=value file with ProblemConfig fields; flags win");
  app->add_option("--a0", c.a0, "damping amplitude (0 runs the undamped oracle)");
  app->add_option("--sigma", c.sigma, "strip boundary in (0,1)");
  app->add_option("--c0", c.c0, "forbidden-band constant in (0, pi^2)");
  app->add_option("--regime-c", c.regime_c, "small regime constant (< 1)");
  app->add_option("--regime-C", c.regime_C, "large regime constant (> 1)");
  app->add_option("--grid", c.grid, "FD grid intervals (meaning depends on the command)");
  app->add_option("--quad", c.quad, "minimum quadrature intervals for the modal solver");
  app->add_option("--seed", c.seed, "seed for random data and power iteration");
  app->add_option("--out", c.out, "directory for CSV/JSON output");
  app->add_option("--format", c.format, "row format")->check(CLI::IsMember({"csv", "json"}));
  app->add_flag("--dry-run", c.dry_run, "validate and plan without heavy computation");
  app->add_option("--threads", c.threads, "worker threads (0 = all cores)");
  app->add_option("--timestamp", c.timestamp, "manifest timestamp (default SOURCE_DATE_EPOCH, else now)");
  app->add_option("--kernels", c.kernels, "kernel backend")->check(CLI::IsMember({"auto", "scalar", "avx2"}));
}

std::string iso_time(std::time_t t) {
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Run {
  ProblemConfig cfg;
  RunManifest manifest;
  Format format = Format::Csv;
  std::string out;
};

Run prepare(const std::string& command, const Common& c, const std::vector<std::string>& args) {
  Run run;
  if (!c.config_file.empty()) run.cfg = load_config_file(c.config_file);
  if (c.a0) run.cfg.a0 = *c.a0;
  if (c.sigma) run.cfg.sigma = *c.sigma;
  if (c.c0) run.cfg.c0 = *c.c0;
  if (c.regime_c) run.cfg.regime_c = *c.regime_c;
  if (c.regime_C) run.cfg.regime_C = *c.regime_C;
  if (c.quad) run.cfg.quad_points = *c.quad;
  run.cfg.validate();

  if (c.kernels == "scalar") kernels::set_backend(kernels::Backend::Scalar);
  else if (c.kernels == "avx2") kernels::set_backend(kernels::Backend::Avx2);
  else kernels::set_backend(kernels::backend_available(kernels::Backend::Avx2) ? kernels::Backend::Avx2
                                                                                : kernels::Backend::Scalar);

  run.manifest.command = command;
  run.manifest.args = args;
  run.manifest.seed = c.seed;
  run.manifest.kernels = std::string(kernels::backend_name(kernels::active_backend()));
  run.manifest.config = run.cfg;
  if (!c.timestamp.empty()) {
    run.manifest.timestamp = c.timestamp;
  } else if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    run.manifest.timestamp = iso_time(std::time_t(std::atoll(epoch)));
  } else {
    run.manifest.timestamp = iso_time(std::time(nullptr));
  }
  run.format = c.format == "json" ? Format::Json : Format::Csv;
  run.out = c.out;
  return run;
}

void finish(std::ostream& out, const Run& run, const Table* table, json summary) {
  summary["manifest"] = run.manifest.to_json();
  if (!run.out.empty()) write_outputs(run.out, run.manifest, table, summary, run.format);
  out << summary.dump(2) << "\n";
}

Cell opt_regime(const std::optional<RegimeLabel>& r) {
  if (!r) return std::monostate{};
  return std::string(regime_name(r->regime));
}

// ---------------------------------------------------------------- mode-norm

struct ModeNormArgs {
  double s = 0.0;
  int n = 0;
  std::string method = "analytic";
};

int cmd_mode_norm(const Run& run, const Common& c, const ModeNormArgs& a, std::ostream& out) {
  const auto ctx = make_mode_context(run.cfg, a.s, a.n);
  std::optional<RegimeLabel> regime;
  if (std::abs(a.s) >= run.cfg.s0) regime = classify_regime(run.cfg, std::abs(a.s), ctx);
  const double bound = ctx.forbidden ? std::nan("") : bound_value(ctx);

  NormOptions opt;
  opt.method = a.method == "fd" ? NormMethod::Fd : NormMethod::AnalyticPower;
  opt.fd_intervals = c.grid.value_or(4096);
  opt.power.seed = c.seed;
  const int intervals = opt.method == NormMethod::Fd ? aligned_intervals(run.cfg.sigma, opt.fd_intervals)
                                                     : resolvent_intervals(run.cfg, ctx);
  std::optional<double> norm;
  if (!c.dry_run) norm = mode_norm(run.cfg, a.s, a.n, opt);

  Table table("mode-norm/1", {"s", "n", "k_re", "k_im", "kprime_re", "kprime_im", "forbidden", "regime",
                              "mode_norm", "bound_value", "method", "intervals"});
  table.add_row({a.s, (long long)a.n, ctx.k.real(), ctx.k.imag(), ctx.kprime.real(), ctx.kprime.imag(),
                 std::string(ctx.forbidden ? "true" : "false"), opt_regime(regime),
                 norm ? Cell(*norm) : Cell(std::monostate{}), ctx.forbidden ? Cell(std::monostate{}) : Cell(bound),
                 a.method, (long long)intervals});

  json rec;
  rec["s"] = a.s;
  rec["n"] = a.n;
  rec["k"] = {ctx.k.real(), ctx.k.imag()};
  rec["kprime"] = {ctx.kprime.real(), ctx.kprime.imag()};
  rec["forbidden"] = ctx.forbidden;
  rec["regime"] = regime ? json(std::string(regime_name(regime->regime))) : json(nullptr);
  rec["mode_norm"] = norm ? json(*norm) : json(nullptr);
  rec["bound_value"] = ctx.forbidden ? json(nullptr) : json(bound);
  if (ctx.forbidden) rec["forbidden_bound"] = 1.0 / (pi * pi - ctx.k2);
  rec["method"] = a.method;
  rec["intervals"] = intervals;
  json summary;
  summary["schema"] = "mode-norm-summary/1";
  summary["record"] = rec;
  finish(out, run, &table, summary);
  return 0;
}

// -------------------------------------------------------------------- sweep

struct SweepArgs {
  double s_min = 10.0;
  double s_max = 1280.0;
  int points = 8;
  std::string method = "analytic";
  bool resonant = false;
};

int cmd_sweep(const Run& run, const Common& c, const SweepArgs& a, std::ostream& out, std::ostream& err) {
  if (a.points < 1 || !(a.s_min >= 1.0) || a.s_max < a.s_min) throw ConfigError("sweep: needs points >= 1 and 1 <= s-min <= s-max");
  std::vector<double> targets(std::size_t(a.points));
  for (int i = 0; i < a.points; ++i)
    targets[i] = a.points == 1 ? a.s_min : a.s_min * std::exp2(std::log2(a.s_max / a.s_min) * i / (a.points - 1));

  FullNormOptions opt;
  opt.threads = c.threads;
  opt.norm.method = a.method == "fd" ? NormMethod::Fd : NormMethod::AnalyticPower;
  opt.norm.fd_intervals = c.grid.value_or(4096);
  opt.norm.power.seed = c.seed;

  Table table("sweep/1", {"s_target", "s", "full_norm", "n_star", "regime_star", "ratio_to_sqrt_s", "tail_bound",
                          "modes_failed", "status"});
  std::vector<SweepRecord> good;
  for (double target : targets) {
    SweepRecord rec;
    std::string status = "ok";
    long long failed = 0;
    try {
      const double s = a.resonant && !c.dry_run ? resonant_frequency(run.cfg, target) : target;
      if (c.dry_run) {
        rec.s = s;
        rec.full_norm = std::sqrt(s);
        rec.n_star = std::max(1, int(std::lround(s / pi)));
        status = "synthetic";
      } else {
        rec = full_norm(run.cfg, s, opt);
        for (const auto& m : rec.per_mode) failed += m.ok ? 0 : 1;
        if (failed > 0) status = failed == (long long)rec.per_mode.size() ? "failed" : "partial";
        err << "s=" << format_double(rec.s) << " full_norm=" << format_double(rec.full_norm)
            << " n*=" << rec.n_star << " (" << rec.elapsed.count() << " s)\n";
      }
    } catch (const Error& e) {
      status = std::string("failed: ") + e.what();
      rec.s = target;
    }
    const bool ok = status == "ok" || status == "synthetic";
    Cell regime_star = std::monostate{};
    if (ok && !c.dry_run && rec.n_star > 0) regime_star = opt_regime(rec.per_mode[rec.n_star - 1].regime);
    table.add_row({target, rec.s, ok ? Cell(rec.full_norm) : Cell(std::monostate{}), (long long)rec.n_star,
                   regime_star, ok ? Cell(rec.full_norm / (1.0 + std::sqrt(rec.s))) : Cell(std::monostate{}),
                   c.dry_run || !ok ? Cell(std::monostate{}) : Cell(rec.tail_bound), failed, status});
    if (ok) good.push_back(std::move(rec));
  }

  json summary;
  summary["schema"] = "sweep-summary/1";
  summary["rows_total"] = a.points;
  summary["rows_ok"] = good.size();
  summary["method"] = a.method;
  summary["resonant"] = a.resonant;
  if (!good.empty()) summary["band_ratio"] = band_ratio(good);
  try {
    summary["slope"] = scaling_fit(good).slope;
  } catch (const DomainError&) {
    // fewer than 6 points or under 2 decades: no slope field
  }
  finish(out, run, &table, summary);
  return double(good.size()) >= 0.9 * a.points ? 0 : 2;
}

// ----------------------------------------------------------------- spectrum

struct SpectrumArgs {
  int n_min = 5;
  int n_max = 60;
  bool calibrate = true;
};

int cmd_spectrum(const Run& run, const Common& c, const SpectrumArgs& a, std::ostream& out, std::ostream& err) {
  json summary;
  summary["schema"] = "spectrum-summary/1";
  if (run.cfg.undamped()) {
    summary["status"] = "degenerate";
    summary["reason"] = "a0 = 0: every root is real, Re z = 0, no decay";
    finish(out, run, nullptr, summary);
    return 2;
  }
  Table table("spectrum/1", {"n", "re_s", "im_s", "re_z", "im_z", "residual", "scale", "newton_iters"});
  if (c.dry_run) {
    Table boxes("spectrum-plan/1", {"n", "re_lo", "re_hi", "im_lo", "im_hi"});
    for (int n = a.n_min; n <= a.n_max; ++n) {
      const auto b = quasimode_box(run.cfg, n);
      boxes.add_row({(long long)n, b.re_lo, b.re_hi, b.im_lo, b.im_hi});
    }
    summary["status"] = "planned";
    finish(out, run, &boxes, summary);
    return 0;
  }
  const auto scan = asymptotic_scan(run.cfg, a.n_min, a.n_max, c.threads);
  for (const auto& r : scan.records)
    table.add_row({(long long)r.n, r.s_root.real(), r.s_root.imag(), r.z.real(), r.z.imag(), r.residual, r.scale,
                   (long long)r.newton_iters});
  summary["status"] = "ok";
  summary["exponent"] = scan.exponent;
  summary["roots"] = scan.records.size();
  summary["missing"] = scan.missing;
  summary["map"] = "z = -i s (Re z > 0)";
  if (a.calibrate) {
    const int grid = c.grid.value_or(300);
    const auto o = calibrate_orientation(run.cfg, a.n_min, grid);
    summary["orientation"] = o == Orientation::MinusI ? "-i" : "+i";
    summary["orientation_check"] = {{"n", a.n_min}, {"intervals", aligned_intervals(run.cfg.sigma, grid)}};
    if (o != Orientation::MinusI) {
      err << "orientation check against the FD pencil disagrees with z = -i s\n";
      finish(out, run, &table, summary);
      return 2;
    }
  }
  finish(out, run, &table, summary);
  return 0;
}

// ----------------------------------------------------------------- simulate

struct SimulateArgs {
  int quasimode_n = 10;
  std::string modes;
  std::optional<double> T, dt;
};

std::vector<int> parse_modes(const std::string& text) {
  std::vector<int> modes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      modes.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ConfigError("bad mode list '" + text + "'");
    }
    if (modes.back() < 1) throw ConfigError("mode indices must be >= 1");
  }
  if (modes.empty()) throw ConfigError("empty mode list");
  return modes;
}

ModalState random_state(int n, int intervals, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<cplx> cu(6), cv(6);
  for (int m = 0; m < 6; ++m) {
    cu[m] = cplx(gauss(rng), gauss(rng)) / double((m + 1) * (m + 1));
    cv[m] = cplx(gauss(rng), gauss(rng)) / double(m + 1);
  }
  auto series = [](const std::vector<cplx>& c) {
    return [c](double x) {
      cplx acc = 0.0;
      for (std::size_t m = 0; m < c.size(); ++m) acc += c[m] * std::sin(double(m + 1) * pi * x);
      return acc;
    };
  };
  auto u = GridFunction::sample(0.0, 1.0, std::size_t(intervals) + 1, series(cu));
  auto v = GridFunction::sample(0.0, 1.0, std::size_t(intervals) + 1, series(cv));
  std::vector<cplx> uu(u.values().begin(), u.values().end()), vv(v.values().begin(), v.values().end());
  uu.front() = uu.back() = vv.front() = vv.back() = 0.0;
  return make_state(n, GridFunction(0.0, 1.0, std::move(uu)), GridFunction(0.0, 1.0, std::move(vv)));
}

int cmd_simulate(const Run& run, const Common& c, const SimulateArgs& a, std::ostream& out) {
  const int intervals = aligned_intervals(run.cfg.sigma, c.grid.value_or(1024));
  std::vector<ModalState> initial;
  std::optional<SpectrumRecord> rec;
  json summary;
  summary["schema"] = "simulate-summary/1";
  double T = 0.0, dt = 0.0;
  if (!a.modes.empty()) {
    std::mt19937_64 rng(c.seed);
    int n_max = 1;
    for (int n : parse_modes(a.modes)) {
      initial.push_back(random_state(n, intervals, rng));
      n_max = std::max(n_max, n);
    }
    T = a.T.value_or(1.0);
    dt = a.dt.value_or(std::min(1e-3, 0.1 / (n_max * pi)));
    summary["datum"] = "random";
    summary["modes"] = parse_modes(a.modes);
  } else {
    if (run.cfg.undamped()) throw ConfigError("simulate: quasimode data needs a0 > 0 (use --modes for a0 = 0)");
    rec = least_damped_root(run.cfg, a.quasimode_n);
    if (!rec) throw NumericalError("no quasimode root found for n = " + std::to_string(a.quasimode_n));
    initial.push_back(quasimode_state(run.cfg, *rec, intervals));
    T = a.T.value_or(0.5 / rec->z.real());
    dt = a.dt.value_or(std::min(1e-3, 0.1 / (a.quasimode_n * pi)));
    summary["datum"] = "quasimode";
    summary["n"] = a.quasimode_n;
    summary["z"] = {rec->z.real(), rec->z.imag()};
  }
  summary["T"] = T;
  summary["dt"] = dt;
  summary["intervals"] = intervals;
  if (c.dry_run) {
    summary["status"] = "planned";
    finish(out, run, nullptr, summary);
    return 0;
  }
  const auto trace = simulate(run.cfg, initial, T, dt, c.threads);
  Table table("energy-trace/1", {"t", "energy"});
  for (std::size_t i = 0; i < trace.times.size(); ++i) table.add_row({trace.times[i], trace.energies[i]});
  summary["status"] = "ok";
  summary["steps"] = trace.times.size() - 1;
  summary["energy_initial"] = trace.energies.front();
  summary["energy_final"] = trace.energies.back();
  summary["non_increasing"] = true;
  int code = 0;
  if (rec) {
    const double fitted = fit_decay_rate(trace, 0.5 / rec->z.real());
    const double expected = 2.0 * rec->z.real();
    summary["fitted_rate"] = fitted;
    summary["expected_rate"] = expected;
    summary["relative_error"] = std::abs(fitted - expected) / expected;
  }
  finish(out, run, &table, summary);
  return code;
}

// -------------------------------------------------------------- bound-check

struct BoundArgs {
  int samples = 200;
  double s_min = 50.0;
  double s_max = 1000.0;
  double K = 100.0;
};

int cmd_bound_check(const Run& run, const Common& c, const BoundArgs& a, std::ostream& out) {
  const auto set = stratified_samples(run.cfg, a.samples, a.s_min, a.s_max, c.seed);
  const std::size_t m = set.samples.size();
  std::vector<double> norms(m, std::nan("")), bounds(m);
  std::vector<std::string> status(m, "ok");
  NormOptions opt;
  opt.power.seed = c.seed;
  if (!c.dry_run) {
    parallel_for(m, c.threads, [&](std::size_t i) {
      const auto& smp = set.samples[i];
      try {
        bounds[i] = bound_value(make_mode_context(run.cfg, smp.s, smp.n));
        norms[i] = mode_norm(run.cfg, smp.s, smp.n, opt);
      } catch (const Error& e) {
        status[i] = std::string("failed: ") + e.what();
      }
    });
  }
  Table table("bound-check/1", {"s", "n", "k", "regime", "mode_norm", "bound_value", "ratio", "status"});
  double worst = 0.0;
  long long violations = 0, failures = 0;
  json per_regime = json::object();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& smp = set.samples[i];
    const double k = std::sqrt((smp.s - smp.n * pi) * (smp.s + smp.n * pi));
    const std::string rn(regime_name(smp.regime));
    per_regime[rn] = per_regime.value(rn, 0) + 1;
    Cell ratio = std::monostate{};
    if (c.dry_run) {
      status[i] = "planned";
    } else if (status[i] == "ok") {
      const double q = norms[i] / bounds[i];
      ratio = q;
      worst = std::max(worst, q);
      if (q > a.K) ++violations;
    } else {
      ++failures;
    }
    table.add_row({smp.s, (long long)smp.n, k, rn, c.dry_run ? Cell(std::monostate{}) : Cell(norms[i]),
                   c.dry_run ? Cell(std::monostate{}) : Cell(bounds[i]), ratio, status[i]});
  }
  json summary;
  summary["schema"] = "bound-check-summary/1";
  summary["samples"] = m;
  summary["per_regime"] = per_regime;
  json uncovered = json::array();
  for (auto r : set.uncovered) uncovered.push_back(std::string(regime_name(r)));
  summary["uncovered_regimes"] = uncovered;
  summary["K_threshold"] = a.K;
  if (!c.dry_run) {
    summary["K_empirical"] = worst;
    summary["violations"] = violations;
    summary["failures"] = failures;
  }
  finish(out, run, &table, summary);
  return violations == 0 && double(failures) <= 0.1 * double(m) ? 0 : 2;
}

// ------------------------------------------------------------------ regimes

int cmd_regimes(const Run& run, double s, std::ostream& out) {
  if (!(s >= run.cfg.s0)) throw DomainError("regimes: s must be >= s0 = " + format_double(run.cfg.s0));
  const int n_max = int(std::ceil(s / pi)) + 3;
  Table table("regimes/1", {"n", "k2", "k_re", "k_im", "kprime_re", "kprime_im", "forbidden", "regime"});
  json counts = json::object();
  for (int n = 1; n <= n_max; ++n) {
    const auto ctx = make_mode_context(run.cfg, s, n);
    const auto label = classify_regime(run.cfg, s, ctx);
    const std::string rn(regime_name(label.regime));
    counts[rn] = counts.value(rn, 0) + 1;
    table.add_row({(long long)n, ctx.k2, ctx.k.real(), ctx.k.imag(), ctx.kprime.real(), ctx.kprime.imag(),
                   std::string(ctx.forbidden ? "true" : "false"), rn});
  }
  json summary;
  summary["schema"] = "regimes-summary/1";
  summary["s"] = s;
  summary["modes"] = n_max;
  summary["counts"] = counts;
  finish(out, run, &table, summary);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resolvent, spectrum and decay computations for the strip-damped wave equation", "stripwave"};
  app.require_subcommand(1);

  Common common;
  ModeNormArgs mn;
  auto* mode_norm_cmd = app.add_subcommand("mode-norm", "norm of one mode resolvent P_n(s)^{-1}");
  add_common(mode_norm_cmd, common);
  mode_norm_cmd->add_option("--s", mn.s, "frequency")->required();
  mode_norm_cmd->add_option("--n", mn.n, "mode index (>= 1)")->required();
  mode_norm_cmd->add_option("--method", mn.method)->check(CLI::IsMember({"analytic", "fd"}));

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "full resolvent norm over log-spaced s and its power-law fit");
  add_common(sweep_cmd, common);
  sweep_cmd->add_option("--s-min", sw.s_min);
  sweep_cmd->add_option("--s-max", sw.s_max);
  sweep_cmd->add_option("--points", sw.points);
  sweep_cmd->add_option("--method", sw.method)->check(CLI::IsMember({"analytic", "fd"}));
  sweep_cmd->add_flag("--resonant", sw.resonant, "move each s onto the nearest quasimode frequency");

  SpectrumArgs sp;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "least-damped eigenvalue per mode and the decay exponent");
  add_common(spectrum_cmd, common);
  spectrum_cmd->add_option("--n-min", sp.n_min);
  spectrum_cmd->add_option("--n-max", sp.n_max);
  bool no_calibrate = false;
  spectrum_cmd->add_flag("--no-calibrate", no_calibrate, "skip the orientation check against the FD pencil");

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "modal time stepping with an energy trace");
  add_common(simulate_cmd, common);
  simulate_cmd->add_option("--quasimode-n", sim.quasimode_n, "start from the least-damped eigenmode of mode n");
  simulate_cmd->add_option("--modes", sim.modes, "comma-separated modes with random smooth data instead");
  simulate_cmd->add_option("--T", sim.T, "final time");
  simulate_cmd->add_option("--dt", sim.dt, "time step");

  BoundArgs bc;
  auto* bound_cmd = app.add_subcommand("bound-check", "mode norms against the explicit per-mode bound");
  add_common(bound_cmd, common);
  bound_cmd->add_option("--samples", bc.samples);
  bound_cmd->add_option("--s-min", bc.s_min);
  bound_cmd->add_option("--s-max", bc.s_max);
  bound_cmd->add_option("--K", bc.K, "allowed ratio mode_norm / bound");

  double regimes_s = 0.0;
  auto* regimes_cmd = app.add_subcommand("regimes", "regime label of every mode at one frequency");
  add_common(regimes_cmd, common);
  regimes_cmd->add_option("--s", regimes_s, "frequency")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    CLI::App* sub = app.get_subcommands().front();
    const Run run = prepare(sub->get_name(), common, args);
    if (sub == mode_norm_cmd) return cmd_mode_norm(run, common, mn, out);
    if (sub == sweep_cmd) return cmd_sweep(run, common, sw, out, err);
    if (sub == spectrum_cmd) {
      sp.calibrate = !no_calibrate;
      return cmd_spectrum(run, common, sp, out, err);
    }
    if (sub == simulate_cmd) return cmd_simulate(run, common, sim, out);
    if (sub == bound_cmd) return cmd_bound_check(run, common, bc, out);
    return cmd_regimes(run, regimes_s, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << " (last estimate " << format_double(e.last_estimate()) << ")\n";
    return 2;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace stripwave::cli

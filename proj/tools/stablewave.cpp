// stablewave: batch command-line front end.
//
//   stablewave packet      --alpha 2 --c 3.14159 --x-min -3 --x-max 3 --n 7
//   stablewave amplitude   --alpha 1 --c 1 --method closed --format svg --out a.svg
//   stablewave density     --alpha 1.5 --method series
//   stablewave uncertainty --alpha 0.5 --beta -1 --c 2
//   stablewave evolve      --alpha 1.5 --v 1 --t 4 --frames 5
//   stablewave pde-check   --alpha 2 --c 1 --v 1 --t 0.5 --fd-step 1e-4
//   stablewave selftest
//
// Exit status: 0 success, 1 numeric failure, 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "output.hpp"
#include "stablewave/selftest.hpp"
#include "stablewave/stablewave.hpp"

namespace sw = stablewave;
using stablewave::cli::Json;
using stablewave::cli::Table;

namespace {

constexpr int kOk = 0;
constexpr int kNumericFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  double alpha = 2.0, beta = 0.0, m = 0.0, c = 1.0, v = 0.0, t = 0.0;
  std::optional<double> x_min, x_max, z_min, z_max;
  int n = 101;
  std::string method = "auto";
  std::string format;
  std::string out;
  std::optional<double> abs_tol, rel_tol;
  double fd_step = 1e-3;
  std::optional<double> exclusion_radius;
  double h = 1.0, mass = 1.0;
  int frames = 5;
  bool formula_only = false;
};

sw::StableParams params_of(const Options& o) {
  const sw::StableParams p{o.alpha, o.beta, o.m, o.c};
  p.validate();
  return p;
}

double env_double(const char* name) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return 0.0;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (*end != '\0' || !(v > 0.0)) throw UsageError(std::string(name) + " must be a positive number");
  return v;
}

// Defaults, then STABLEWAVE_ABS_TOL / STABLEWAVE_REL_TOL, then flags.
sw::QuadratureConfig quadrature_of(const Options& o) {
  sw::QuadratureConfig q;
  if (double e = env_double("STABLEWAVE_ABS_TOL"); e > 0.0) q.abs_tol = e;
  if (double e = env_double("STABLEWAVE_REL_TOL"); e > 0.0) q.rel_tol = e;
  if (o.abs_tol) q.abs_tol = *o.abs_tol;
  if (o.rel_tol) q.rel_tol = *o.rel_tol;
  q.validate();
  return q;
}

std::vector<double> x_grid(const Options& o, double center, double scale) {
  const double lo = o.x_min.value_or(center - 8.0 * scale);
  const double hi = o.x_max.value_or(center + 8.0 * scale);
  if (!(lo < hi)) throw UsageError("--x-min must be below --x-max");
  return sw::linspace(lo, hi, o.n);
}

std::vector<double> z_grid(const Options& o) {
  const auto p = params_of(o);
  const double s = p.c_prime();
  const double lo = o.z_min.value_or(p.m - 8.0 * s);
  const double hi = o.z_max.value_or(p.m + 8.0 * s);
  if (!(lo < hi)) throw UsageError("--z-min must be below --z-max");
  return sw::linspace(lo, hi, o.n);
}

Json params_json(const sw::StableParams& p) {
  return Json{{"alpha", p.alpha}, {"beta", p.beta}, {"m", p.m}, {"c", p.c}};
}

Json report_json(const sw::ResidualReport& r) {
  return Json{{"max_abs", sw::cli::json_number(r.max_abs)},
              {"rms", sw::cli::json_number(r.rms)},
              {"max_rel", sw::cli::json_number(r.max_rel)},
              {"n_evaluated", r.n_evaluated},
              {"n_excluded", r.n_excluded}};
}

Json complex_json(sw::Complex z) {
  return Json{{"re", sw::cli::json_number(z.real())}, {"im", sw::cli::json_number(z.imag())}};
}

std::string format_or(const Options& o, const std::string& fallback) { return o.format.empty() ? fallback : o.format; }

void require_json(const Options& o) {
  if (format_or(o, "json") != "json") throw UsageError("this command writes JSON only");
}

// Grid output in the requested format. `plot` lists the columns drawn
// against the first one in SVG; `group` splits the rows into one polyline
// per distinct value of that column.
void emit_table(std::ostream& os, const Options& o, const Table& t, const std::string& command,
                const std::vector<std::string>& plot, const std::string& group = "") {
  const std::string f = format_or(o, "csv");
  if (f == "csv") {
    sw::cli::write_csv(os, t);
  } else if (f == "json") {
    Json j{{"command", command}, {"params", params_json(params_of(o))}, {"rows", sw::cli::table_json(t)}};
    sw::cli::write_json(os, j);
  } else {
    const std::size_t xi = group.empty() ? 0 : 1;
    std::vector<sw::cli::Series> series;
    for (const auto& name : plot) {
      const std::size_t yi = t.column(name);
      for (const auto& row : t.rows) {
        const std::string label =
            group.empty() ? name : name + " " + group + "=" + sw::cli::format_number(row[t.column(group)]);
        if (series.empty() || series.back().label != label) series.push_back({label, {}, {}});
        series.back().x.push_back(row[xi]);
        series.back().y.push_back(row[yi]);
      }
    }
    sw::cli::write_svg(os, series, t.columns[xi], command);
  }
}

int cmd_packet(const Options& o, std::ostream& os) {
  const sw::WavePacket w(params_of(o), o.v);
  Table t{{"x", "re", "im", "prob"}, {}};
  const double width = std::exp(-std::log(2.0 * o.c) / o.alpha);
  for (double x : x_grid(o, o.v * o.t, width)) {
    const auto z = sw::psi(w, x, o.t);
    t.add({x, z.real(), z.imag(), sw::prob_density(w, x, o.t)});
  }
  emit_table(os, o, t, "packet", {"re", "im", "prob"});
  return kOk;
}

sw::AmplitudeMethod amplitude_method(const Options& o) {
  const auto p = params_of(o);
  if (o.method == "closed") return sw::closed_method_for(p);
  if (o.method == "series") return sw::AmplitudeMethod::Series;
  if (o.method == "numeric") return sw::AmplitudeMethod::NumericFT;
  try {
    return sw::closed_method_for(p);
  } catch (const sw::MethodMismatch&) {
    return sw::AmplitudeMethod::NumericFT;
  }
}

int cmd_amplitude(const Options& o, std::ostream& os) {
  const auto q = quadrature_of(o);
  const sw::AmplitudeEvaluator e(sw::WavePacket(params_of(o)), amplitude_method(o), q);
  Table t{{"z", "value"}, {}};
  for (double z : z_grid(o)) t.add({z, sw::amplitude(e, z)});
  emit_table(os, o, t, "amplitude", {"value"});
  return kOk;
}

int cmd_density(const Options& o, std::ostream& os) {
  const auto p = params_of(o);
  const auto q = quadrature_of(o);
  std::string method = o.method == "auto" ? (p.log_branch() ? "numeric" : "closed") : o.method;
  std::optional<sw::AmplitudeEvaluator> closed;
  if (method == "closed") {
    if (o.method == "auto") {
      try {
        sw::closed_method_for(p);
      } catch (const sw::MethodMismatch&) {
        method = "numeric";
      }
    }
    if (method == "closed") closed.emplace(sw::WavePacket(p), sw::closed_method_for(p), q);
  }
  if (method == "series" && (p.alpha == 1.0 || p.alpha == 2.0)) {
    throw sw::MethodMismatch("series needs alpha in (0, 1) or (1, 2)");
  }
  Table t{{"z", "value"}, {}};
  int fallbacks = 0;
  for (double z : z_grid(o)) {
    double value = 0.0;
    if (closed) {
      value = sw::amplitude(*closed, z) / (closed->packet().a0() * sw::kPaperDensityFactor);
    } else if (method == "series") {
      const auto d = sw::density_series_with_fallback(p, z, q);
      fallbacks += d.used_fallback ? 1 : 0;
      value = d.value;
    } else {
      value = sw::density_numeric(p, z, q);
    }
    t.add({z, value});
  }
  if (fallbacks > 0) std::cerr << "density: " << fallbacks << " point(s) evaluated by numerical inversion\n";
  emit_table(os, o, t, "density", {"value"});
  return kOk;
}

int cmd_uncertainty(const Options& o, std::ostream& os) {
  require_json(o);
  const auto q = quadrature_of(o);
  const sw::WavePacket w(params_of(o));
  const auto r = sw::uncertainty_report(w, q, !o.formula_only);
  if (!o.formula_only && r.moment_kind == sw::MomentKind::Divergent) {
    std::cerr << "uncertainty: the frequency moment did not converge; numeric fields are null\n";
  }
  using sw::cli::json_number;
  Json j{{"params", params_json(r.params)},
         {"delta_x", json_number(r.delta_x)},
         {"delta_x_numeric", json_number(r.delta_x_numeric)},
         {"delta_z_formula", json_number(r.delta_z_formula)},
         {"delta_z_numeric", json_number(r.delta_z_numeric)},
         {"moment_kind", std::string(sw::to_string(r.moment_kind))},
         {"product_formula", json_number(r.product_formula)},
         {"product_numeric", json_number(r.product_numeric)}};
  sw::cli::write_json(os, j);
  return kOk;
}

int cmd_evolve(const Options& o, std::ostream& os) {
  if (o.frames < 1) throw UsageError("--frames must be >= 1");
  const sw::WavePacket w(params_of(o), o.v);
  const double width = std::exp(-std::log(2.0 * o.c) / o.alpha);
  const double t_end = o.t;
  const double far = std::abs(o.v * t_end);
  const auto xs = x_grid(o, 0.5 * o.v * t_end, width + 0.5 * far);
  Table t{{"t", "x", "re", "im", "prob"}, {}};
  for (int k = 0; k < o.frames; ++k) {
    const double tk = o.frames == 1 ? t_end : t_end * k / (o.frames - 1);
    for (double x : xs) {
      const auto z = sw::psi(w, x, tk);
      t.add({tk, x, z.real(), z.imag(), sw::prob_density(w, x, tk)});
    }
  }
  emit_table(os, o, t, "evolve", {"prob"}, "t");
  return kOk;
}

double branch_variance(const std::vector<sw::Complex>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  sw::Complex mean{};
  for (auto k : v) mean += k;
  mean /= static_cast<double>(v.size());
  double s = 0.0;
  for (auto k : v) s += std::norm(k - mean);
  return s / static_cast<double>(v.size());
}

int cmd_pde_check(const Options& o, std::ostream& os) {
  require_json(o);
  const auto p = params_of(o);
  const sw::WavePacket w(p, o.v);
  const double width = std::exp(-std::log(2.0 * o.c) / o.alpha);
  const auto xs = x_grid(o, o.v * o.t, 3.0 * width);
  sw::GridSpec g{xs.front(), xs.back(), o.n, o.t, o.fd_step,
                 o.exclusion_radius.value_or(sw::default_exclusion_radius(p))};
  g.validate();
  const auto wave = sw::wave_residual(w, g);
  const auto conv = sw::fd_convergence_order(w, g);
  const auto grad = sw::fd_gradient_check(w, g);

  std::vector<sw::Complex> ahead, behind;
  int skipped = 0;
  for (double x : xs) {
    const double y = x - o.v * o.t;
    try {
      (y > 0.0 ? ahead : behind).push_back(sw::heat_form_coefficient(w, x, o.t, g.exclusion_radius));
    } catch (const sw::SingularityError&) {
      ++skipped;
    } catch (const sw::DivisionByZero&) {
      ++skipped;
    }
  }
  using sw::cli::json_number;
  Json heat{{"variance_ahead", json_number(branch_variance(ahead))},
            {"variance_behind", json_number(branch_variance(behind))},
            {"n_skipped", skipped}};
  Json j{{"params", params_json(p)},
         {"v", o.v},
         {"t", o.t},
         {"grid",
          {{"x_min", g.x_min},
           {"x_max", g.x_max},
           {"n_points", g.n_points},
           {"fd_step", g.fd_step},
           {"exclusion_radius", g.exclusion_radius}}},
         {"wave_residual", {{"analytic", report_json(wave.analytic)}, {"finite_difference", report_json(wave.finite_difference)}}},
         {"fd_convergence",
          {{"coarse", report_json(conv.coarse)}, {"fine", report_json(conv.fine)}, {"order", json_number(conv.order)}}},
         {"gradient_check",
          {{"first", report_json(grad.first)}, {"second", report_json(grad.second)}, {"max_rel", json_number(grad.max_rel())}}}};
  if (p.alpha == 1.0) {
    const auto b = sw::cauchy_heat_branches(o.v, p.m, p.c);
    heat["branch_ahead"] = complex_json(b.ahead);
    heat["branch_behind"] = complex_json(b.behind);
    // v = h sigma / (2M) fixes the sigma that makes i h kappa(y > 0) the Schroedinger coefficient.
    const sw::DeBroglieContext ctx{o.h, o.mass};
    const double sigma = 2.0 * o.mass * o.v / o.h;
    j["schrodinger"] = Json{{"sigma", sigma},
                            {"coefficient", complex_json(sw::schrodinger_form(ctx, sigma, p.m, p.c))},
                            {"i_h_kappa_ahead", complex_json(sw::kI * o.h * b.ahead)}};
  }
  j["heat_form"] = heat;
  sw::cli::write_json(os, j);
  return kOk;
}

int cmd_selftest(std::ostream& os) {
  const auto results = sw::selftest::run_all();
  int passed = 0;
  for (const auto& r : results) {
    char line[96];
    std::snprintf(line, sizeof line, "%-4s  %-55s %7.2fs  ", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds);
    os << line << r.detail << '\n';
    passed += r.passed ? 1 : 0;
  }
  os << passed << "/" << results.size() << " checks passed\n";
  return passed == static_cast<int>(results.size()) ? kOk : kNumericFailure;
}

void add_params(CLI::App* cmd, Options& o, bool motion) {
  cmd->add_option("--alpha", o.alpha, "characteristic exponent in (0, 2]")->capture_default_str();
  cmd->add_option("--beta", o.beta, "skewness in [-1, 1]")->capture_default_str();
  cmd->add_option("--m", o.m, "location")->capture_default_str();
  cmd->add_option("--c", o.c, "exponent coefficient, > 0")->capture_default_str();
  if (motion) {
    cmd->add_option("--v", o.v, "propagation speed E/p")->capture_default_str();
    cmd->add_option("--t", o.t, "time")->capture_default_str();
  }
}

void add_output(CLI::App* cmd, Options& o, bool grid) {
  cmd->add_option("--format", o.format, grid ? "csv, json or svg (default csv)" : "json")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  cmd->add_option("--out", o.out, "output file (default standard output)");
}

void add_tolerances(CLI::App* cmd, Options& o) {
  cmd->add_option("--abs-tol", o.abs_tol, "quadrature absolute tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable wave packets: amplitudes, densities, uncertainty products and PDE checks"};
  app.set_help_flag("--help", "print this help and exit");  // -h is taken by the Planck constant
  app.require_subcommand(1);
  Options o;

  auto* packet = app.add_subcommand("packet", "psi(x, t) and |psi|^2 on an x grid");
  add_params(packet, o, true);
  packet->add_option("--x-min", o.x_min);
  packet->add_option("--x-max", o.x_max);
  packet->add_option("--n", o.n, "grid points")->check(CLI::Range(1, 10000000));
  add_output(packet, o, true);

  auto* amp = app.add_subcommand("amplitude", "amplitude function A(z) on a z grid");
  auto* dens = app.add_subcommand("density", "stable probability density on a z grid");
  for (auto* cmd : {amp, dens}) {
    add_params(cmd, o, false);
    cmd->add_option("--z-min", o.z_min);
    cmd->add_option("--z-max", o.z_max);
    cmd->add_option("--n", o.n, "grid points")->check(CLI::Range(1, 10000000));
    cmd->add_option("--method", o.method, "closed, series or numeric (default: closed form when one exists)")
        ->check(CLI::IsMember({"auto", "closed", "series", "numeric"}));
    add_output(cmd, o, true);
    add_tolerances(cmd, o);
  }

  auto* unc = app.add_subcommand("uncertainty", "position and frequency spreads and their product");
  add_params(unc, o, false);
  unc->add_flag("--formula-only", o.formula_only, "skip the numeric moments");
  add_output(unc, o, false);
  add_tolerances(unc, o);

  auto* evolve = app.add_subcommand("evolve", "packet frames from time 0 to --t");
  add_params(evolve, o, true);
  evolve->add_option("--x-min", o.x_min);
  evolve->add_option("--x-max", o.x_max);
  evolve->add_option("--n", o.n, "grid points")->check(CLI::Range(1, 10000000));
  evolve->add_option("--frames", o.frames, "number of frames")->capture_default_str();
  add_output(evolve, o, true);

  auto* pde = app.add_subcommand("pde-check", "wave equation residuals, derivative checks, heat-form coefficient");
  add_params(pde, o, true);
  pde->add_option("--x-min", o.x_min);
  pde->add_option("--x-max", o.x_max);
  pde->add_option("--n", o.n, "grid points")->check(CLI::Range(3, 10000000));
  pde->add_option("--fd-step", o.fd_step, "finite-difference step")->check(CLI::PositiveNumber)->capture_default_str();
  pde->add_option("--exclusion-radius", o.exclusion_radius, "half-width of the skipped band at x = vt")
      ->check(CLI::NonNegativeNumber);
  pde->add_option("--h", o.h, "Planck constant")->check(CLI::PositiveNumber)->capture_default_str();
  pde->add_option("--mass", o.mass, "particle mass")->check(CLI::PositiveNumber)->capture_default_str();
  add_output(pde, o, false);

  auto* self = app.add_subcommand("selftest", "run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  std::ostringstream buf;
  int code = kOk;
  try {
    if (packet->parsed()) code = cmd_packet(o, buf);
    else if (amp->parsed()) code = cmd_amplitude(o, buf);
    else if (dens->parsed()) code = cmd_density(o, buf);
    else if (unc->parsed()) code = cmd_uncertainty(o, buf);
    else if (evolve->parsed()) code = cmd_evolve(o, buf);
    else if (pde->parsed()) code = cmd_pde_check(o, buf);
    else if (self->parsed()) code = cmd_selftest(buf);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const sw::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const sw::MethodMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const sw::UnsupportedBranch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const sw::Error& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  }

  if (o.out.empty()) {
    std::cout << buf.str();
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!(file << buf.str())) {
      std::cerr << "error: cannot write " << o.out << '\n';
      return kNumericFailure;
    }
  }
  return code;
}

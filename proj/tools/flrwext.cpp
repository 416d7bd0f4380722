// flrwext: classify FLRW-type scale factors, build boundary charts through
// t = 0, analyze strongly spherically symmetric coordinates, and emit the
// distance-bound and geodesic-lift diagnostics. JSON goes to stdout; CSV
// sweeps are written next to --out PREFIX.
//
// Exit codes: 0 ok, 1 input error, 2 inconclusive/numerics failure,
// 3 hypothesis violation.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "flrw/extension.hpp"
#include "flrw/json_io.hpp"
#include "flrw/quadrature.hpp"
#include "flrw/rng.hpp"
#include "flrw/sss.hpp"

using nlohmann::json;
using namespace flrw;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitHypothesis = 3;

struct RunConfig {
  std::string scale_factor;
  std::string geometry = "hyperbolic";
  int dim = 3;
  std::string gauge = "s";
  double gauge_scale = 1.0;
  std::string chart = "milne";
  double radius = 1.0;
  double t_max = 100.0;
  double tol = 1e-6;
  std::string grid = "20x20";
  std::uint64_t seed = 12345;
  std::string out;

  // curvature sweep
  double t_min = 1e-4;
  int points = 200;
  double blowup_threshold = 1e6;

  // divergence
  double eps = 0.1;
  double tau0 = 0.0;
  double T_max = 1000.0;
  std::string curve_csv;

  LimitOptions limits() const { return LimitOptions{0.5, 12, tol}; }
  std::pair<int, int> grid_dims() const {
    int n = 0, m = 0;
    char x = 0;
    std::istringstream ss(grid);
    if (!(ss >> n >> x >> m) || x != 'x' || n < 2 || m < 2)
      throw std::invalid_argument("--grid expects NxM with N, M >= 2");
    return {n, m};
  }
};

void add_common_options(CLI::App* cmd, RunConfig& cfg, bool needs_scale_factor = true) {
  auto* a = cmd->add_option("-a,--scale-factor", cfg.scale_factor, "scale factor a(t)");
  if (needs_scale_factor) a->required();
  cmd->add_option("-g,--geometry", cfg.geometry, "euclidean | hyperbolic")
      ->check(CLI::IsMember({"euclidean", "hyperbolic"}));
  cmd->add_option("-d,--dim", cfg.dim, "spatial dimension d")->check(CLI::Range(1, 8));
  cmd->add_option("--tol", cfg.tol, "limit tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--tmax", cfg.t_max, "upper end of sampled t range");
  cmd->add_option("--grid", cfg.grid, "grid size NxM");
  cmd->add_option("--seed", cfg.seed, "seed for randomized sweeps");
  cmd->add_option("-o,--out", cfg.out, "output prefix for PREFIX.json and PREFIX.*.csv");
  cmd->add_option("--config", "flat key=value config file, keys as in --help")
      ->expected(1);  // consumed in main before parsing
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

// Expands "--config FILE" into "--key value" pairs placed right after the
// subcommand name, so explicit command-line flags still take precedence.
std::vector<std::string> expand_config_args(std::vector<std::string> args) {
  std::vector<std::string> cfg_args;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
    } else {
      continue;
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    std::string line;
    while (std::getline(in, line)) {
      line = trim(line);
      if (line.empty() || line[0] == '#' || line[0] == ';') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("config line is not key=value: " + line);
      std::string value = trim(line.substr(eq + 1));
      if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
          value.back() == value.front())
        value = value.substr(1, value.size() - 2);
      cfg_args.push_back("--" + trim(line.substr(0, eq)));
      cfg_args.push_back(value);
    }
    break;
  }
  if (!cfg_args.empty() && !args.empty())
    args.insert(args.begin() + 1, cfg_args.begin(), cfg_args.end());
  return args;
}

std::string format_csv_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Outputs are assembled in memory and written only after every computation
// has succeeded, so failures never leave partial files behind.
struct OutputSet {
  json report;
  std::vector<std::pair<std::string, std::string>> csv_files;  // suffix -> content

  void add_csv(const std::string& suffix, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::string body = header + "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) body += ',';
        body += format_csv_value(row[i]);
      }
      body += '\n';
    }
    csv_files.emplace_back(suffix, std::move(body));
  }

  void emit(const RunConfig& cfg) const {
    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (cfg.out.empty()) return;
    // stage everything to temp files first so a failure leaves no
    // partially written output set behind
    std::vector<std::pair<std::string, std::string>> staged;  // tmp -> final
    staged.emplace_back(cfg.out + ".json.tmp", cfg.out + ".json");
    write_file(staged.back().first, text);
    for (const auto& [suffix, content] : csv_files) {
      const std::string path = cfg.out + "." + suffix + ".csv";
      staged.emplace_back(path + ".tmp", path);
      write_file(staged.back().first, content);
    }
    for (const auto& [tmp, final_path] : staged)
      std::filesystem::rename(tmp, final_path);
  }

 private:
  static void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << content;
    if (!f.flush()) throw std::runtime_error("write failed for " + path);
  }
};

bool inconclusive(const LimitEstimate& e) { return e.verdict == LimitVerdict::inconclusive; }

std::string strip_ws(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1.0));
  v.back() = hi;
  return v;
}

// ---------------------------------------------------------------- classify

int cmd_classify(const RunConfig& cfg) {
  const ScaleFactor sf = ScaleFactor::parse(cfg.scale_factor);
  const Geometry geom = geometry_from_string(cfg.geometry);
  const FlrwReport flrw_rep = check_open_flrw(sf, geom, cfg.t_max, cfg.limits());

  OutputSet out;
  out.report["scale_factor"] = cfg.scale_factor;
  out.report["geometry"] = cfg.geometry;
  out.report["flrw"] = flrw_rep;

  bool any_inconclusive = inconclusive(flrw_rep.cond_a0_zero);
  if (geom == Geometry::hyperbolic && flrw_rep.overall) {
    const MilneReport milne = classify_milne_like(sf, cfg.limits());
    out.report["milne"] = milne;
    out.report["milne"]["applicable"] = true;
    any_inconclusive = any_inconclusive || milne.inconclusive;
  } else {
    out.report["milne"] = {{"applicable", false},
                           {"reason", geom == Geometry::hyperbolic
                                          ? "scale factor is not an open FLRW factor"
                                          : "Milne-like classification needs hyperbolic geometry"}};
  }
  out.emit(cfg);
  return any_inconclusive ? kExitInconclusive : kExitOk;
}

// --------------------------------------------------------------- curvature

int cmd_curvature(const RunConfig& cfg) {
  const ScaleFactor sf = ScaleFactor::parse(cfg.scale_factor);
  const Geometry geom = geometry_from_string(cfg.geometry);
  std::vector<std::vector<double>> rows;
  double max_abs = 0.0, max_rel_to_terms = 0.0;
  for (double t : log_spaced(cfg.t_min, cfg.t_max, cfg.points)) {
    const double R = scalar_curvature(sf, geom, cfg.dim, t);
    rows.push_back({t, R});
    max_abs = std::max(max_abs, std::abs(R));
    // flatness is relative to the size of the formula's terms (they cancel
    // to rounding for flat spacetimes, which still leaves ~ulp of the terms)
    const Jet2 a = sf.jet(t);
    const double h = a.d1 / a.v;
    const double term_scale = 1.0 + std::abs(2.0 * cfg.dim * a.d2 / a.v) +
                              cfg.dim * (cfg.dim - 1) * (h * h + 1.0 / (a.v * a.v));
    max_rel_to_terms = std::max(max_rel_to_terms, std::abs(R) / term_scale);
  }

  OutputSet out;
  out.report["scale_factor"] = cfg.scale_factor;
  out.report["geometry"] = cfg.geometry;
  out.report["d"] = cfg.dim;
  out.report["max_abs_scalar_curvature"] = max_abs;
  const bool flat = max_rel_to_terms < 1e-12;
  out.report["flat"] = flat;
  out.report["blow_up"] = std::abs(rows.front()[1]) > cfg.blowup_threshold;

  // power-law fit |R| ~ C t^p over the smallest decade, by least squares
  // in log-log coordinates; requires a sign-stable nonzero tail
  out.report["fit_exponent"] = nullptr;
  if (!flat) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    bool sign_stable = true;
    const double sign = rows.front()[1] >= 0 ? 1.0 : -1.0;
    for (const auto& row : rows) {
      if (row[0] > 10.0 * cfg.t_min) break;
      if (row[1] * sign <= 0.0) {
        sign_stable = false;
        break;
      }
      const double x = std::log(row[0]), y = std::log(std::abs(row[1]));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
    if (sign_stable && n >= 3)
      out.report["fit_exponent"] = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }

  out.add_csv("curvature", "t,R_scalar", rows);
  out.emit(cfg);
  return kExitOk;
}

// ------------------------------------------------------------------ extend

struct ClosedForm {
  const char* source;
  double gauge_scale;  // 0 means "computed below"
  double (*factor)(double q);  // q = T^2 - R^2
};

const ClosedForm kClosedForms[] = {
    {"t", 1.0, [](double) { return 1.0; }},
    {"tanh(t)", 0.0, [](double q) { return 1.0 / (1.0 + q); }},
    {"t+t^2", 0.5, [](double q) { return 1.0 / std::pow(1.0 - std::sqrt(q), 4); }},
};

int cmd_extend(const RunConfig& cfg) {
  const ScaleFactor sf = ScaleFactor::parse(cfg.scale_factor);
  const auto [nt, nx] = cfg.grid_dims();
  Rng rng(cfg.seed);

  OutputSet out;
  out.report["scale_factor"] = cfg.scale_factor;
  out.report["chart"] = cfg.chart;

  if (cfg.chart == "null2d") {
    const ExtensionChart chart = build_2d_null_extension(sf);

    double max_det_err = 0.0;
    std::vector<std::vector<double>> sweep;
    for (int i = 0; i < 1000; ++i) {
      const double tt = (i % 10 == 0) ? 0.0 : rng.uniform(-2.0, 2.0);
      const double xt = rng.uniform(-3.0, 3.0);
      const MetricValue g = chart.metric(tt, xt, 1);
      const double det = g.at(0, 0) * g.at(1, 1) - g.at(0, 1) * g.at(1, 0);
      max_det_err = std::max(max_det_err, std::abs(det + 1.0));
      sweep.push_back({tt, xt, g.at(1, 1), det});
    }
    out.report["det_max_abs_error"] = max_det_err;
    out.report["det_points"] = 1000;

    std::vector<std::array<double, 2>> grid;
    for (int i = 0; i < nt; ++i)
      for (int j = 0; j < nx; ++j)
        grid.push_back({0.05 + (2.0 - 0.05) * i / (nt - 1.0), -1.0 + 2.0 * j / (nx - 1.0)});
    out.report["isometry_max_residual"] = verify_isometry(chart, sf, grid, 1);

    json slices = json::array();
    for (int n : {10, 100, 1000}) slices.push_back(boundary_slice_length(chart, sf, n, 0.0, 1.0));
    out.report["boundary_slices"] = slices;

    out.add_csv("sweep", "t_tilde,x_tilde,g_xx,det", sweep);
  } else if (cfg.chart == "milne") {
    const ExtensionChart chart = build_milne_extension(sf, cfg.gauge_scale);

    std::vector<std::array<double, 2>> grid;
    for (int i = 0; i < nt; ++i)
      for (int j = 0; j < nx; ++j)
        grid.push_back({0.05 + (2.0 - 0.05) * i / (nt - 1.0), 2.0 * j / (nx - 1.0)});
    out.report["isometry_max_residual"] = verify_isometry(chart, sf, grid, cfg.dim);

    double max_roundtrip = 0.0;
    for (int i = 0; i < 500; ++i) {
      const double t = rng.uniform(0.01, 5.0);
      const double r = rng.uniform(0.0, 3.0);
      const auto [T, R] = chart.forward(t, r);
      const MilneInverse inv = invert_milne(chart, T, R);
      max_roundtrip = std::max({max_roundtrip, std::abs(inv.t - t) / std::max(1.0, t),
                                std::abs(inv.r - r)});
    }
    out.report["inverse_max_roundtrip_error"] = max_roundtrip;

    const double past = chart.conformal_factor(0.0, 1.0);
    double max_boundary_jump = 0.0;
    for (double b : {1e-6, 1e-7, 1e-8}) {
      const double T = std::sqrt(1.0 + b * b);
      max_boundary_jump =
          std::max(max_boundary_jump, std::abs(chart.conformal_factor(T, 1.0) - past));
    }
    out.report["boundary_factor_jump"] = max_boundary_jump;
    out.report["past_factor"] = past;

    const std::string key = strip_ws(cfg.scale_factor);
    out.report["closed_form"] = nullptr;
    for (const ClosedForm& cf : kClosedForms) {
      if (key != cf.source) continue;
      const double scale = key == "tanh(t)" ? std::sinh(1.0) : cf.gauge_scale;
      const ExtensionChart reference_chart = build_milne_extension(sf, scale);
      double max_err = 0.0;
      for (double t : log_spaced(0.1, 1.2, 50))
        for (int j = 0; j < 50; ++j) {
          const double r = 2.0 * j / 49.0;
          const auto [T, R] = reference_chart.forward(t, r);
          max_err = std::max(
              max_err, std::abs(reference_chart.conformal_factor(T, R) - cf.factor((T - R) * (T + R))));
        }
      out.report["closed_form"] = {
          {"matched", cf.source}, {"gauge_scale", scale}, {"max_residual", max_err}};
    }

    json slices = json::array();
    for (int n : {10, 100, 1000}) slices.push_back(boundary_slice_length(chart, sf, n, 0.0, 1.0));
    out.report["boundary_slices"] = slices;

    std::vector<std::vector<double>> sweep;
    for (int i = 0; i < nt; ++i)
      for (int j = 0; j < nx; ++j) {
        const double T = -1.5 + 4.5 * i / (nt - 1.0);
        const double R = 3.0 * j / (nx - 1.0);
        try {
          sweep.push_back({T, R, chart.conformal_factor(T, R)});
        } catch (const PreconditionError&) {
          // grid point beyond the image of the chart (b saturates for
          // factors whose 1/a is integrable at infinity)
        }
      }
    out.add_csv("sweep", "T,R,factor", sweep);
  } else {
    throw std::invalid_argument("--chart must be null2d or milne");
  }

  out.emit(cfg);
  return kExitOk;
}

// -------------------------------------------------------------------- sss

int cmd_sss(const RunConfig& cfg) {
  const ScaleFactor sf = ScaleFactor::parse(cfg.scale_factor);
  const Geometry geom = geometry_from_string(cfg.geometry);
  const GaugeFunction gauge = GaugeFunction::parse(cfg.gauge);
  const SssChart chart =
      geom == Geometry::euclidean ? sss_euclidean(sf, gauge) : sss_hyperbolic(sf, gauge);
  const double t_hi = cfg.t_max;
  const auto [nr, ntt] = cfg.grid_dims();

  OutputSet out;
  out.report["scale_factor"] = cfg.scale_factor;
  out.report["geometry"] = cfg.geometry;
  out.report["gauge"] = cfg.gauge;
  out.report["radius"] = cfg.radius;

  const LimitEstimate a_prime0 =
      limit_at_zero([&](double t) { return sf.jet(t).d1; }, cfg.limits());
  out.report["a_prime_limit"] = a_prime0;
  bool applicable;
  if (geom == Geometry::euclidean) {
    applicable = a_prime0.verdict == LimitVerdict::infinite ||
                 (a_prime0.verdict == LimitVerdict::finite && a_prime0.value > 0.0);
  } else {
    applicable = a_prime0.verdict == LimitVerdict::infinite ||
                 a_prime0.verdict == LimitVerdict::zero ||
                 (a_prime0.verdict == LimitVerdict::finite &&
                  std::abs(a_prime0.value - 1.0) > cfg.tol);
  }
  out.report["theorem_applicable"] = applicable;

  // identity residual on an off-degeneracy grid
  constexpr double kMargin = 1e-3;
  std::vector<double> ts = log_spaced(0.1, t_hi, ntt), rs;
  for (int j = 0; j < nr; ++j) {
    const double r = 0.05 + (3.0 - 0.05) * j / (nr - 1.0);
    bool ok = true;
    for (double t : ts)
      if (chart.degeneracy_margin(r, t) < 4.0 * kMargin) ok = false;
    if (ok) rs.push_back(r);
  }
  out.report["identity_max_residual"] = verify_sss_identities(chart, rs, ts, kMargin);
  out.report["identity_grid_points"] = rs.size() * ts.size();

  const LimitEstimate g_lim = g_limit_along_R(sf, geom, cfg.radius, cfg.limits());
  out.report["g_limit_along_R"] = g_lim;

  bool any_inconclusive = inconclusive(a_prime0) || inconclusive(g_lim);

  if (geom == Geometry::euclidean) {
    double max_j = 0.0;
    const auto curve = degeneracy_curve(sf, gauge, t_hi / 100.0, t_hi, 100, &max_j);
    out.report["degeneracy_max_abs_jacobian"] = max_j;
    std::vector<std::vector<double>> curve_rows;
    for (const auto& [t, r] : curve) curve_rows.push_back({t, r});
    out.add_csv("degeneracy", "t,r_star", curve_rows);

    const SssDivergenceReport div = s_and_T_divergence(sf, gauge, cfg.radius, cfg.limits());
    out.report["divergence"] = div;
    any_inconclusive =
        any_inconclusive || inconclusive(div.s_limit) || inconclusive(div.t_coord_limit);
  }

  std::vector<std::vector<double>> sweep;
  for (double t : ts)
    for (int j = 0; j < nr; ++j) {
      const double r = 0.05 + (3.0 - 0.05) * j / (nr - 1.0);
      const SssValue G = chart.metric_G(r, t);
      const SssValue F = chart.metric_F(r, t);
      sweep.push_back({r, t, chart.time_coord(r, t), chart.radius(r, t), F.value, G.value,
                       chart.jacobian(r, t)});
    }
  out.add_csv("sweep", "r,t,T,R,F,G,J", sweep);

  out.emit(cfg);
  return any_inconclusive ? kExitInconclusive : kExitOk;
}

// -------------------------------------------------------------- divergence

int cmd_divergence(const RunConfig& cfg) {
  if (!(cfg.eps > 0.0)) throw std::invalid_argument("--eps must be positive");

  OutputSet out;
  out.report["eps"] = cfg.eps;
  out.report["tau0"] = cfg.tau0;

  // bound table along the near-null family d_h = (T - tau0) - eps
  const double T_lo = cfg.tau0 + std::max(2.0 * cfg.eps, 1.0);
  if (!(cfg.T_max > T_lo)) throw std::invalid_argument("--T-max must exceed tau0 + 2 eps");
  std::vector<double> table_T(200);
  for (int i = 0; i < 200; ++i)  // linear when the range crosses zero
    table_T[i] = T_lo > 0.0 ? std::exp(std::log(T_lo) + (std::log(cfg.T_max) - std::log(T_lo)) * i / 199.0)
                            : T_lo + (cfg.T_max - T_lo) * i / 199.0;
  std::vector<std::vector<double>> rows;
  bool monotone = true;
  double prev = 0.0;
  std::optional<double> first_T_above_10;
  for (double T : table_T) {
    const DistanceBound b = distance_lower_bound(cfg.tau0, T, T - cfg.tau0 - cfg.eps);
    if (!rows.empty() && b.bound <= prev) monotone = false;
    if (!first_T_above_10 && b.bound > 10.0) first_T_above_10 = T;
    rows.push_back({T, b.bound});
    prev = b.bound;
  }
  out.report["monotone_in_T"] = monotone;
  out.report["first_T_with_bound_above_10"] =
      first_T_above_10 ? json(*first_T_above_10) : json(nullptr);
  out.add_csv("bounds", "T,bound", rows);

  // demonstration curve: from CSV when given, else a seeded random walk
  CurvePath curve;
  if (!cfg.curve_csv.empty()) {
    std::ifstream in(cfg.curve_csv);
    if (!in) throw std::invalid_argument("cannot open curve csv " + cfg.curve_csv);
    curve = curve_path_from_csv(in);
  } else {
    Rng rng(cfg.seed);
    double tau = cfg.tau0;
    std::vector<double> x = {0.0, 0.0, 0.0};
    curve.params.push_back(tau);
    curve.points.push_back({tau, x[0], x[1], x[2]});
    for (int i = 0; i < 64; ++i) {
      const double dtau = rng.uniform(0.05, 0.5);
      const double speed = rng.uniform(0.0, 0.95);
      double dir[3], norm2 = 0.0;
      for (double& u : dir) {
        u = rng.uniform(-1.0, 1.0);
        norm2 += u * u;
      }
      const double norm = std::sqrt(norm2) + 1e-12;
      tau += dtau;
      for (int k = 0; k < 3; ++k) x[k] += speed * dtau * dir[k] / norm;
      curve.params.push_back(tau);
      curve.points.push_back({tau, x[0], x[1], x[2]});
    }
  }
  const LiftCheckReport lift = geodesic_lift_check(Geometry::euclidean, curve);
  out.report["lift_check"] = lift;

  // lift lengths saturate sqrt((s - tau0)^2 - d_h^2)
  const ScaleFactor unit = ScaleFactor::parse("t");  // conformal lengths never see a(t)
  double max_mismatch = 0.0;
  const double tau_start = curve.points.front()[0];
  const std::size_t stride = std::max<std::size_t>(1, curve.params.size() / 4);
  for (std::size_t idx = stride; idx < curve.params.size(); idx += stride) {
    const auto& end = curve.points[idx];
    double d2 = 0.0;
    for (std::size_t k = 1; k < end.size(); ++k) {
      const double d = end[k] - curve.points.front()[k];
      d2 += d * d;
    }
    CurvePath seg;
    const int n = 64;
    for (int i = 0; i <= n; ++i) {
      const double w = static_cast<double>(i) / n;
      std::vector<double> pt(end.size());
      pt[0] = tau_start + w * (end[0] - tau_start);
      for (std::size_t k = 1; k < end.size(); ++k)
        pt[k] = curve.points.front()[k] + w * (end[k] - curve.points.front()[k]);
      seg.params.push_back(pt[0]);
      seg.points.push_back(pt);
    }
    const double len = lorentzian_length(unit, Geometry::euclidean, seg);
    const double bound = distance_lower_bound(tau_start, end[0], std::sqrt(d2)).bound;
    max_mismatch = std::max(max_mismatch, std::abs(len - bound));
  }
  out.report["lift_length_vs_bound_max_mismatch"] = max_mismatch;

  out.emit(cfg);
  return lift.all_timelike && lift.speed_bound_ok ? kExitOk : kExitInconclusive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "flrwext: numerical classification and boundary charts for FLRW-type scale factors"};
  app.require_subcommand(1);

  RunConfig cfg;
  int (*run)(const RunConfig&) = nullptr;

  auto* classify = app.add_subcommand("classify", "open-FLRW and Milne-like classification");
  add_common_options(classify, cfg);
  classify->callback([&] { run = cmd_classify; });

  auto* curvature = app.add_subcommand("curvature", "scalar curvature sweep (CSV t,R_scalar)");
  add_common_options(curvature, cfg);
  curvature->add_option("--tmin", cfg.t_min, "lower end of the t sweep")
      ->check(CLI::PositiveNumber);
  curvature->add_option("--points", cfg.points, "sweep resolution")->check(CLI::Range(10, 100000));
  curvature->add_option("--blowup-threshold", cfg.blowup_threshold,
                        "|R| at the smallest t flagging blow-up");
  curvature->callback([&, curvature] {
    if (curvature->count("--tmax") == 0) cfg.t_max = 10.0;  // sweep default
    run = cmd_curvature;
  });

  auto* extend = app.add_subcommand("extend", "build and verify a boundary chart");
  add_common_options(extend, cfg);
  extend->add_option("--chart", cfg.chart, "null2d | milne")
      ->check(CLI::IsMember({"null2d", "milne"}));
  extend->add_option("--gauge-scale", cfg.gauge_scale, "positive rescale of b (milne chart)");
  extend->callback([&] { run = cmd_extend; });

  auto* sss = app.add_subcommand("sss", "strongly spherically symmetric chart diagnostics");
  add_common_options(sss, cfg);
  sss->add_option("-R,--radius", cfg.radius, "fixed area-radius for the limit diagnostics")
      ->check(CLI::PositiveNumber);
  sss->add_option("--gauge", cfg.gauge, "gauge function f(s)");
  sss->callback([&, sss] {
    if (sss->count("--tmax") == 0) cfg.t_max = 2.0;  // grid default
    run = cmd_sss;
  });

  auto* divergence = app.add_subcommand("divergence", "distance-bound table and lift check");
  add_common_options(divergence, cfg, /*needs_scale_factor=*/false);
  divergence->add_option("--eps", cfg.eps, "null-approach offset");
  divergence->add_option("--tau0", cfg.tau0, "start of the conformal-time interval");
  divergence->add_option("--T-max", cfg.T_max, "largest T in the bound table");
  divergence->add_option("--curve", cfg.curve_csv, "timelike polyline CSV (param, tau, x...)");
  divergence->callback([&] { run = cmd_divergence; });

  try {
    std::vector<std::string> args = expand_config_args({argv + 1, argv + argc});
    std::reverse(args.begin(), args.end());  // CLI11 vector parse wants reversed args
    app.parse(std::move(args));
    return run(cfg);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const NumericsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "flrw/geometry.hpp"
#include "flrw/rng.hpp"
#include "ricci_oracle.hpp"

using namespace flrw;

TEST_CASE("FLRW metric components") {
  SUBCASE("Milne at the axis: angular part degenerates") {
    const MetricValue g = flrw_metric(ScaleFactor::parse("t"), Geometry::hyperbolic, 3, 1.0, 0.0);
    CHECK(g.dim == 4);
    CHECK(g.at(0, 0) == -1.0);
    CHECK(g.at(1, 1) == 1.0);
    CHECK(g.at(2, 2) == 0.0);
    CHECK(g.at(3, 3) == 0.0);
  }
  SUBCASE("Euclidean a = t + t^2 at (1, 2)") {
    const MetricValue g =
        flrw_metric(ScaleFactor::parse("t + t^2"), Geometry::euclidean, 3, 1.0, 2.0);
    CHECK(g.at(0, 0) == -1.0);
    CHECK(g.at(1, 1) == 4.0);
    CHECK(g.at(2, 2) == 16.0);
    CHECK(g.at(3, 3) == 16.0);  // equatorial angles
  }
  SUBCASE("hyperbolic a = tanh at (1, 1)") {
    const MetricValue g =
        flrw_metric(ScaleFactor::parse("tanh(t)"), Geometry::hyperbolic, 3, 1.0, 1.0);
    const double a2 = std::tanh(1.0) * std::tanh(1.0);
    CHECK(g.at(1, 1) == doctest::Approx(a2));
    CHECK(g.at(2, 2) == doctest::Approx(a2 * std::sinh(1.0) * std::sinh(1.0)));
  }
  SUBCASE("signature is Lorentzian off the axis") {
    const MetricValue g =
        flrw_metric(ScaleFactor::parse("sqrt(t)"), Geometry::euclidean, 3, 0.5, 1.5);
    CHECK(g.lorentzian_signature());
  }
  SUBCASE("domain guards") {
    const ScaleFactor sf = ScaleFactor::parse("t");
    CHECK_THROWS_AS(flrw_metric(sf, Geometry::euclidean, 3, -1.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(flrw_metric(sf, Geometry::euclidean, 3, 1.0, -0.5), PreconditionError);
    CHECK_THROWS_AS(flrw_metric(sf, Geometry::euclidean, 0, 1.0, 1.0), PreconditionError);
  }
}

TEST_CASE("scalar curvature closed forms") {
  SUBCASE("2D a = sqrt(t): R = -1/(2 t^2)") {
    const ScaleFactor sf = ScaleFactor::parse("sqrt(t)");
    CHECK(scalar_curvature(sf, Geometry::euclidean, 1, 0.1) == doctest::Approx(-50.0));
    for (double t : {0.01, 0.1, 1.0, 3.0}) {
      const double expected = -1.0 / (2.0 * t * t);
      CHECK(scalar_curvature(sf, Geometry::hyperbolic, 1, t) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
  SUBCASE("Milne is flat in every dimension") {
    const ScaleFactor sf = ScaleFactor::parse("t");
    for (int d : {2, 3, 4})
      for (double t : {0.1, 1.0, 10.0})
        CHECK(std::abs(scalar_curvature(sf, Geometry::hyperbolic, d, t)) < 1e-9);
  }
  SUBCASE("a = t + t^2 hyperbolic blows up like 4 d^2 / a") {
    // 2d a''/a and d(d-1)[(a'/a)^2 - 1/a^2] both contribute 1/a terms:
    // R = 4 d^2 / (t + t^2) exactly for this factor.
    const ScaleFactor sf = ScaleFactor::parse("t + t^2");
    for (int d : {2, 3})
      for (double t : {1e-4, 0.1, 1.0}) {
        const double expected = 4.0 * d * d / (t + t * t);
        CHECK(scalar_curvature(sf, Geometry::hyperbolic, d, t) ==
              doctest::Approx(expected).epsilon(1e-10));
      }
  }
}

TEST_CASE("curvature formulas agree with the finite-difference Ricci oracle") {
  Rng rng(4242);
  int samples = 0;
  for (const char* src : {"sqrt(t)", "t + t^2", "tanh(t)"}) {
    CAPTURE(src);
    const ScaleFactor sf = ScaleFactor::parse(src);
    for (Geometry g : {Geometry::euclidean, Geometry::hyperbolic}) {
      for (int d : {1, 2, 3}) {
        const double t = rng.uniform(0.1, 2.0);
        const double r = rng.uniform(0.5, 1.5);
        const double formula = scalar_curvature(sf, g, d, t);
        const double fd = oracle::flrw_ricci_scalar(sf, g, d, t, r);
        const double rel =
            std::abs(formula - fd) / std::max({std::abs(formula), std::abs(fd), 1.0});
        CAPTURE(d);
        CAPTURE(t);
        CHECK(rel < 1e-4);
        ++samples;
      }
    }
  }
  CHECK(samples == 18);
}

TEST_CASE("conformal time") {
  SUBCASE("a = t: tau = log t") {
    const ScaleFactor sf = ScaleFactor::parse("t");
    CHECK(tau_of_t(sf, std::exp(1.0), 1.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(tau_of_t(sf, 1.0, 1.0) == 0.0);
  }
  SUBCASE("constant a: tau = t - c") {
    const ScaleFactor sf = ScaleFactor::parse("1 + 0*t");
    CHECK(tau_of_t(sf, 3.0, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("a = tanh: tau matches log(sinh t) and diverges at 0+") {
    const ScaleFactor sf = ScaleFactor::parse("tanh(t)");
    for (double t : {0.05, 0.5, 2.0})
      CHECK(tau_of_t(sf, t, 1.0) ==
            doctest::Approx(std::log(std::sinh(t)) - std::log(std::sinh(1.0))).epsilon(1e-9));
    const LimitEstimate lim = limit_at_zero([&](double t) { return tau_of_t(sf, t, 1.0); });
    CHECK(lim.verdict == LimitVerdict::infinite);
    CHECK(lim.value == -std::numeric_limits<double>::infinity());
  }
}

TEST_CASE("t_of_tau inverts tau_of_t") {
  const ScaleFactor sf = ScaleFactor::parse("t");
  CHECK(t_of_tau(sf, 1.0, 1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-10));
  CHECK(t_of_tau(sf, 0.0, 1.0) == doctest::Approx(1.0));

  // tau ranges differ: a = t + t^2 saturates at ln 2 for large t.
  Rng rng(11);
  const std::pair<const char*, double> cases[] = {
      {"t", 4.0}, {"t + t^2", 0.6}, {"tanh(t)", 4.0}};
  for (const auto& [src, tau_hi] : cases) {
    CAPTURE(src);
    const ScaleFactor f = ScaleFactor::parse(src);
    for (int i = 0; i < 100; ++i) {
      const double tau = rng.uniform(-4.0, tau_hi);
      CHECK(tau_of_t(f, t_of_tau(f, tau), 1.0) == doctest::Approx(tau).epsilon(1e-10));
    }
  }

  // out-of-range taus: sqrt(t) is bounded below by -2, t + t^2 above by ln 2
  CHECK_THROWS_AS(t_of_tau(ScaleFactor::parse("sqrt(t)"), -3.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(t_of_tau(ScaleFactor::parse("t + t^2"), 1.0, 1.0), PreconditionError);
}

TEST_CASE("Lorentzian curve length") {
  SUBCASE("static observer in constant a: proper time equals coordinate time") {
    CurvePath c;
    c.chart = "flrw";
    for (int i = 0; i <= 50; ++i) {
      const double t = 1.0 + 2.0 * i / 50.0;
      c.params.push_back(t);
      c.points.push_back({t, 0.7});
    }
    CHECK(lorentzian_length(ScaleFactor::parse("1 + 0*t"), Geometry::euclidean, c) ==
          doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("Milne radial timelike curve is shorter than the time interval") {
    CurvePath c;
    c.chart = "flrw";
    const int n = 400;
    for (int i = 0; i <= n; ++i) {
      const double t = 1.0 + i / static_cast<double>(n);
      c.params.push_back(t);
      c.points.push_back({t, 0.5 * (t - 1.0) / t});  // |a r'| < 1
    }
    const double len = lorentzian_length(ScaleFactor::parse("t"), Geometry::hyperbolic, c);
    CHECK(len < 1.0);
    CHECK(len > 0.8);
  }
  SUBCASE("conformal chart with constant spatial speed 0.6 over 5: length 4") {
    CurvePath c;
    for (int i = 0; i <= 10; ++i) {
      const double tau = 0.5 * i;
      c.params.push_back(tau);
      c.points.push_back({tau, 0.6 * tau, 0.0});
    }
    CHECK(lorentzian_length(ScaleFactor::parse("t"), Geometry::euclidean, c) ==
          doctest::Approx(4.0).epsilon(1e-12));
  }
  SUBCASE("a non-timelike sample is reported with its parameter value") {
    CurvePath c;
    c.params = {0.0, 1.0, 2.0};
    c.points = {{0.0, 0.0}, {1.0, 2.0}, {2.0, 4.0}};  // spatial speed 2
    CHECK_THROWS_WITH_AS(lorentzian_length(ScaleFactor::parse("t"), Geometry::euclidean, c),
                         doctest::Contains("not timelike at parameter"), PreconditionError);
  }
}

TEST_CASE("curve CSV ingestion") {
  std::istringstream in("param,coord_0,coord_1\n0,0,0\n1,1,0.5\n2,2,0.9\n");
  const CurvePath c = curve_path_from_csv(in);
  CHECK(c.params.size() == 3);
  CHECK(c.points[2][1] == 0.9);

  std::istringstream bad("0,0,0\n0,1,1\n");  // non-increasing parameter
  CHECK_THROWS_AS(curve_path_from_csv(bad), PreconditionError);
}

TEST_CASE("distance lower bound") {
  CHECK(distance_lower_bound(0.0, 5.0, 0.0).bound == doctest::Approx(5.0));
  CHECK(distance_lower_bound(0.0, 5.0, 3.0).bound == doctest::Approx(4.0));
  CHECK_THROWS_AS(distance_lower_bound(0.0, 5.0, 5.0), PreconditionError);
  CHECK_THROWS_AS(distance_lower_bound(0.0, 5.0, 7.0), PreconditionError);
  CHECK_THROWS_AS(distance_lower_bound(5.0, 5.0, 0.0), PreconditionError);

  SUBCASE("near-null form sqrt(2 eps (T - tau0) - eps^2)") {
    const double eps = 0.1;
    for (double T : {1.0, 10.0, 100.0, 1000.0}) {
      const double expected = std::sqrt(2.0 * eps * T - eps * eps);
      CHECK(distance_lower_bound(0.0, T, T - eps).bound ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
  SUBCASE("monotone in T for fixed tau0 and d_h") {
    double prev = 0.0;
    for (double T = 4.0; T < 4000.0; T *= 1.7) {
      const double b = distance_lower_bound(1.0, T, 2.5).bound;
      CHECK(b > prev);
      prev = b;
    }
  }
}

namespace {

CurvePath random_timelike_polyline(Rng& rng, int segments, int spatial_dims) {
  CurvePath c;
  double tau = 0.0;
  std::vector<double> x(spatial_dims, 0.0);
  std::vector<double> pt(spatial_dims + 1, 0.0);
  c.params.push_back(tau);
  c.points.push_back(pt);
  for (int i = 0; i < segments; ++i) {
    const double dtau = rng.uniform(0.05, 0.5);
    const double speed = rng.uniform(0.0, 0.999);
    // random direction
    std::vector<double> dir(spatial_dims);
    double norm2 = 0.0;
    for (double& u : dir) {
      u = rng.uniform(-1.0, 1.0);
      norm2 += u * u;
    }
    const double norm = std::sqrt(norm2) + 1e-12;
    tau += dtau;
    for (int k = 0; k < spatial_dims; ++k) x[k] += speed * dtau * dir[k] / norm;
    pt[0] = tau;
    for (int k = 0; k < spatial_dims; ++k) pt[k + 1] = x[k];
    c.params.push_back(tau);
    c.points.push_back(pt);
  }
  return c;
}

}  // namespace

TEST_CASE("geodesic lift check") {
  SUBCASE("a straight timelike curve lifts onto itself") {
    CurvePath c;
    for (int i = 0; i <= 8; ++i) {
      const double tau = 0.25 * i;
      c.params.push_back(tau);
      c.points.push_back({tau, 0.4 * tau, 0.3 * tau});
    }
    const LiftCheckReport rep = geodesic_lift_check(Geometry::euclidean, c);
    CHECK(rep.all_timelike);
    CHECK(rep.speed_bound_ok);
    CHECK(rep.max_lift_speed == doctest::Approx(0.5));
    CHECK(rep.max_curve_speed == doctest::Approx(0.5));
  }
  SUBCASE("zig-zag at speed 0.9: chords never exceed the arc bound") {
    CurvePath c;
    double x = 0.0;
    for (int i = 0; i <= 40; ++i) {
      c.params.push_back(0.1 * i);
      c.points.push_back({0.1 * i, x});
      x += (i % 2 == 0 ? 0.09 : -0.09);
    }
    const LiftCheckReport rep = geodesic_lift_check(Geometry::euclidean, c);
    CHECK(rep.all_timelike);
    CHECK(rep.speed_bound_ok);
    CHECK(rep.max_lift_speed <= 0.9 + 1e-12);
  }
  SUBCASE("1000 random timelike polylines: 100% timelike lifts") {
    Rng rng(20250);
    for (int i = 0; i < 1000; ++i) {
      const CurvePath c = random_timelike_polyline(rng, 3 + rng.uniform_int(0, 30), 3);
      const LiftCheckReport rep = geodesic_lift_check(Geometry::euclidean, c);
      CHECK(rep.all_timelike);
      CHECK(rep.speed_bound_ok);
      CHECK(rep.max_lift_speed < 1.0);
    }
  }
  SUBCASE("non-timelike input is rejected") {
    CurvePath c;
    c.params = {0.0, 1.0};
    c.points = {{0.0, 0.0}, {1.0, 1.5}};
    CHECK_THROWS_AS(geodesic_lift_check(Geometry::euclidean, c), PreconditionError);
    CHECK_THROWS_AS(geodesic_lift_check(Geometry::hyperbolic, c), PreconditionError);
  }
}

TEST_CASE("lift lengths saturate the distance bound") {
  // The straight-segment lift has constant speed, so its length is exactly
  // sqrt((s - tau0)^2 - d_h^2).
  Rng rng(31);
  const ScaleFactor sf = ScaleFactor::parse("t");
  for (int trial = 0; trial < 25; ++trial) {
    const CurvePath curve = random_timelike_polyline(rng, 12, 2);
    const double tau0 = curve.params.front();
    for (std::size_t s_idx : {4ul, 8ul, curve.params.size() - 1}) {
      const auto& end = curve.points[s_idx];
      const double s = end[0];
      double d2 = 0.0;
      for (std::size_t k = 1; k < end.size(); ++k) {
        const double d = end[k] - curve.points.front()[k];
        d2 += d * d;
      }
      const double d_h = std::sqrt(d2);

      CurvePath lift;
      const int n = 64;
      for (int i = 0; i <= n; ++i) {
        const double tau = tau0 + (s - tau0) * i / n;
        const double w = (tau - tau0) / (s - tau0);
        std::vector<double> pt(end.size());
        pt[0] = tau;
        for (std::size_t k = 1; k < end.size(); ++k)
          pt[k] = curve.points.front()[k] + w * (end[k] - curve.points.front()[k]);
        lift.params.push_back(tau);
        lift.points.push_back(pt);
      }
      const double len = lorentzian_length(sf, Geometry::euclidean, lift);
      const double bound = distance_lower_bound(tau0, s, d_h).bound;
      CHECK(len == doctest::Approx(bound).epsilon(1e-9));
    }
  }
}

#pragma once

// Test-only Ricci scalar oracle: builds R = g^{uv} R_{uv} from the metric
// components alone, with Christoffel symbols and their derivatives taken
// by second-order central differences. Deliberately independent of
// scalar_curvature so the closed-form curvature expressions are gated by
// the metric itself.

#include <cmath>
#include <functional>
#include <vector>

#include "flrw/geometry.hpp"

namespace oracle {

using MetricFn = std::function<flrw::MetricValue(std::span<const double>)>;

inline std::vector<double> invert(const std::vector<double>& m, int n) {
  std::vector<double> a(m);
  std::vector<double> inv(n * n, 0.0);
  for (int i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int row = col + 1; row < n; ++row)
      if (std::abs(a[row * n + col]) > std::abs(a[pivot * n + col])) pivot = row;
    for (int k = 0; k < n; ++k) {
      std::swap(a[pivot * n + k], a[col * n + k]);
      std::swap(inv[pivot * n + k], inv[col * n + k]);
    }
    const double d = a[col * n + col];
    for (int k = 0; k < n; ++k) {
      a[col * n + k] /= d;
      inv[col * n + k] /= d;
    }
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      const double f = a[row * n + col];
      for (int k = 0; k < n; ++k) {
        a[row * n + k] -= f * a[col * n + k];
        inv[row * n + k] -= f * inv[col * n + k];
      }
    }
  }
  return inv;
}

// Gamma^l_{ij} at x, with dg by central differences of the metric.
inline std::vector<double> christoffel(const MetricFn& g, std::vector<double> x, double h) {
  const int n = static_cast<int>(x.size());
  const auto g0 = g(x);
  const auto ginv = invert(g0.components, n);

  std::vector<double> dg(n * n * n);  // dg[k][i][j] = d_k g_{ij}
  for (int k = 0; k < n; ++k) {
    x[k] += h;
    const auto gp = g(x);
    x[k] -= 2.0 * h;
    const auto gm = g(x);
    x[k] += h;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        dg[(k * n + i) * n + j] = (gp.at(i, j) - gm.at(i, j)) / (2.0 * h);
  }

  std::vector<double> gamma(n * n * n, 0.0);  // gamma[l][i][j]
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int m = 0; m < n; ++m)
          s += ginv[l * n + m] *
               (dg[(i * n + m) * n + j] + dg[(j * n + m) * n + i] - dg[(m * n + i) * n + j]);
        gamma[(l * n + i) * n + j] = 0.5 * s;
      }
  return gamma;
}

inline double ricci_scalar(const MetricFn& g, const std::vector<double>& x0, double h = 1e-4) {
  const int n = static_cast<int>(x0.size());
  const auto g0 = g(x0);
  const auto ginv = invert(g0.components, n);
  const auto gam = christoffel(g, x0, h);

  // dgamma[k][l][i][j] = d_k Gamma^l_{ij}
  std::vector<double> dgam(n * n * n * n);
  for (int k = 0; k < n; ++k) {
    auto xp = x0, xm = x0;
    xp[k] += h;
    xm[k] -= h;
    const auto gp = christoffel(g, xp, h);
    const auto gm = christoffel(g, xm, h);
    for (int idx = 0; idx < n * n * n; ++idx)
      dgam[k * n * n * n + idx] = (gp[idx] - gm[idx]) / (2.0 * h);
  }

  auto G = [&](int l, int i, int j) { return gam[(l * n + i) * n + j]; };
  auto dG = [&](int k, int l, int i, int j) { return dgam[((k * n + l) * n + i) * n + j]; };

  double R = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double ric = 0.0;  // R_{ij}
      for (int l = 0; l < n; ++l) {
        ric += dG(l, l, i, j) - dG(j, l, i, l);
        for (int m = 0; m < n; ++m) ric += G(l, l, m) * G(m, i, j) - G(l, j, m) * G(m, i, l);
      }
      R += ginv[i * n + j] * ric;
    }
  return R;
}

inline double flrw_ricci_scalar(const flrw::ScaleFactor& sf, flrw::Geometry geometry, int d,
                                double t, double r = 0.8, double h = 1e-4) {
  MetricFn metric = [&](std::span<const double> x) {
    return flrw::flrw_metric_at(sf, geometry, d, x);
  };
  std::vector<double> x(d + 1, std::acos(0.0));  // angles at the equator
  x[0] = t;
  x[1] = r;
  return ricci_scalar(metric, x, h);
}

}  // namespace oracle

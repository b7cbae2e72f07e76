#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace fbspde {

/// Standard normal cdf.
inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// C-infinity cutoff: 1 for |s| <= r0, 0 for |s| >= r1, smooth bridge between.
inline double smooth_cutoff(double s, double r0, double r1) {
  const double a = std::abs(s);
  if (a <= r0) return 1.0;
  if (a >= r1) return 0.0;
  auto g = [](double r) { return r > 0.0 ? std::exp(-1.0 / r) : 0.0; };
  const double up = g((r1 - a) / (r1 - r0));
  const double dn = g((a - r0) / (r1 - r0));
  return up / (up + dn);
}

/// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  return denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
}

/// Slope of log|y| vs log|x| over positive samples.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  return fit_slope(lx, ly);
}

inline double sqr(double v) { return v * v; }

/// Mean and (population) standard deviation.
inline std::pair<double, double> mean_std(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  double m = 0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s2 = 0;
  for (double x : v) s2 += (x - m) * (x - m);
  s2 /= static_cast<double>(v.size());
  return {m, std::sqrt(s2)};
}

}  // namespace fbspde

#pragma once

// Reference values computed independently of the library (std::tgamma,
// hand-evaluated integrals).

#include <cmath>
#include <numbers>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

inline double sphere_area(int n) { return 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n); }

/// int_{S^{d-1}} |e - w|^{mu} dw = |S^{d-2}| 2^{mu/2} int (1-t^2)^{(d-3)/2} (1-t)^{mu/2} dt.
inline double sphere_distance_moment(int d, double mu) {
  const double a = 0.5 * (d - 3);
  // int_{-1}^{1} (1-t)^{a + mu/2} (1+t)^a dt = 2^{2a + mu/2 + 1} B(a + mu/2 + 1, a + 1)
  const double x = a + 0.5 * mu + 1.0, y = a + 1.0;
  const double beta = std::tgamma(x) * std::tgamma(y) / std::tgamma(x + y);
  return sphere_area(d - 1) * std::pow(2.0, 0.5 * mu) * std::pow(2.0, 2 * a + 0.5 * mu + 1) * beta;
}

/// H_lambda(1, 1) on S^{d-1}.
inline double riesz_energy_of_one(int d, double lambda) {
  return sphere_area(d) * sphere_distance_moment(d, -lambda);
}

/// int_0^inf r^{m} e^{-k r} dr.
inline double gamma_moment(double m, double k) { return std::tgamma(m + 1) / std::pow(k, m + 1); }

}  // namespace oracle

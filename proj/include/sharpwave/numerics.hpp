#pragma once

// Special functions, Gauss-Jacobi rules, double-exponential quadrature on
// [0, inf) and sphere sampling. Everything else in the library sits on top
// of these primitives.

#include <cmath>
#include <complex>
#include <cstdint>
#include <type_traits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "sharpwave/errors.hpp"

namespace sharpwave {

using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;

// Compensated (Neumaier) accumulator. Outer quadrature loops use it so the
// result does not depend on summation order beyond round-off.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  NeumaierSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// NeumaierSum for double or std::complex<double>.
template <class T>
class CompensatedSum {
 public:
  CompensatedSum& operator+=(const T& x) {
    if constexpr (std::is_same_v<T, double>) {
      re_ += x;
    } else {
      re_ += x.real();
      im_ += x.imag();
    }
    return *this;
  }
  T value() const {
    if constexpr (std::is_same_v<T, double>)
      return re_.value();
    else
      return T(re_.value(), im_.value());
  }

 private:
  NeumaierSum re_, im_;
};

// ---------------------------------------------------------------------------
// Special functions

/// ln Gamma(x) for x > 0 (Lanczos, g = 607/128, 15 terms).
double log_gamma(double x);

/// ln B(x, y) = ln Gamma(x) + ln Gamma(y) - ln Gamma(x + y).
double log_beta(double x, double y);

/// B(x, y) evaluated through log_gamma.
double beta_fn(double x, double y);

/// ln |S^{n-1}|, the log surface measure of the unit sphere in R^n.
/// n = 1 gives ln 2 (the two-point sphere S^0).
double log_sphere_area(int n);

/// |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

// ---------------------------------------------------------------------------
// One-dimensional rules

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
};

struct Quadrature1D {
  Vec nodes;
  Vec weights;
  Interval domain;
  /// Polynomials of degree <= exactness are integrated exactly (against the
  /// rule's weight function).
  int exactness = 0;

  template <class F>
  double integrate(F&& f) const {
    NeumaierSum s;
    for (Eigen::Index i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s.value();
  }
  Eigen::Index size() const { return nodes.size(); }
};

/// Gauss-Jacobi rule for int_{-1}^{1} (1-t)^alpha (1+t)^beta F(t) dt.
/// Nodes from the Golub-Welsch eigenproblem, polished by Newton steps on the
/// three-term recurrence; weights from the Christoffel formula in log space.
Quadrature1D gauss_jacobi(int n, double alpha, double beta);

/// Gauss-Legendre rule mapped to [lo, hi].
Quadrature1D gauss_legendre(int n, double lo, double hi);

/// Jacobi polynomial P_n^{(alpha,beta)}(t) and its derivative.
std::pair<double, double> jacobi_poly(int n, double alpha, double beta, double t);

// ---------------------------------------------------------------------------
// Semi-infinite line

struct SemilineOptions {
  double rel_tol = 1e-11;
  int max_level = 8;
};

namespace detail {
struct ExpSinhNode {
  double r;
  double jac;  // dr/dt
};
inline ExpSinhNode exp_sinh_node(double t, double scale) {
  const double e = 0.5 * kPi * std::sinh(t);
  const double r = scale * std::exp(e);
  return {r, r * 0.5 * kPi * std::cosh(t)};
}
[[noreturn]] void throw_semiline(const std::string& why);
}  // namespace detail

/// int_0^inf F(r) dr for F(r) ~ r^{-sing_order} at 0 (sing_order < 1) and
/// exponential decay at rate ~decay_hint. Exp-sinh substitution
/// r = exp(pi/2 sinh t) / decay_hint with trapezoid halving. Throws
/// AccuracyError when the tails do not die out or the levels do not settle.
template <class F>
auto integrate_semiline(F&& f, double sing_order, double decay_hint, const SemilineOptions& opt = {}) {
  using T = std::decay_t<decltype(f(1.0))>;
  if (!(sing_order < 1.0))
    throw DomainError("integrate_semiline: singularity order must be < 1 (non-integrable at 0)");
  if (!(decay_hint > 0.0)) throw DomainError("integrate_semiline: decay_hint must be positive");
  const double scale = 1.0 / decay_hint;
  constexpr double kTailEps = 1e-18;
  constexpr double kMinReach = 2.0;
  constexpr double kMaxReach = 6.2;

  auto term = [&](double t) -> T {
    const auto nd = detail::exp_sinh_node(t, scale);
    if (nd.r == 0.0 || !std::isfinite(nd.r)) return T(0.0);
    const T v = f(nd.r) * nd.jac;
    if (!std::isfinite(std::abs(v))) detail::throw_semiline("non-finite integrand value");
    return v;
  };

  // Level 0 fixes the truncation window by walking outward until the terms
  // are negligible relative to the running sum.
  double h = 0.5;
  CompensatedSum<T> s0;
  s0 += term(0.0);
  double t_hi = 0.0, t_lo = 0.0;
  for (int side = -1; side <= 1; side += 2) {
    int quiet = 0;
    double t = 0.0;
    while (true) {
      t += side * h;
      if (std::abs(t) > kMaxReach) {
        detail::throw_semiline(side < 0 ? "integrand not negligible near r = 0"
                                        : "integrand not negligible at large r (decay too slow)");
      }
      const T v = term(t);
      s0 += v;
      if (std::abs(t) >= kMinReach && std::abs(v) <= kTailEps * std::abs(s0.value()))
        ++quiet;
      else
        quiet = 0;
      if (quiet >= 2) break;
    }
    (side < 0 ? t_lo : t_hi) = t;
  }
  T prev = h * s0.value();
  CompensatedSum<T> total = s0;
  for (int level = 1; level <= opt.max_level; ++level) {
    h *= 0.5;
    for (double t = t_lo + h; t < t_hi; t += 2.0 * h) total += term(t);
    const T cur = h * total.value();
    if (level >= 2 && std::abs(cur - prev) <= opt.rel_tol * std::abs(cur) + 1e-300) return cur;
    prev = cur;
  }
  detail::throw_semiline("refinement did not converge");
}

// ---------------------------------------------------------------------------
// Sphere

/// Quadrature on S^{d-1}: unit-vector nodes (columns) with positive weights
/// summing to |S^{d-1}|.
struct SphereRule {
  int dim = 0;
  Eigen::MatrixXd nodes;
  Vec weights;
};

/// Tensor-product rule on S^{d-1}: Gauss-Jacobi in each polar angle and a
/// trapezoid rule with 2n points in the azimuth.
SphereRule sphere_product_rule(int d, int n);

/// int_{S^{d-1}} F(w . e1) dw = |S^{d-2}| int (1-t^2)^{(d-3)/2} F(t) dt.
template <class F>
double sphere_integrate_zonal(int d, F&& f, int n) {
  if (d < 2) throw DomainError("sphere_integrate_zonal: d must be >= 2");
  const double a = 0.5 * (d - 3);
  return sphere_area(d - 1) * gauss_jacobi(n, a, a).integrate(f);
}

/// n i.i.d. uniform samples on S^{d-1} (columns), reproducible from seed.
Eigen::MatrixXd mc_sphere(int d, int n, std::uint64_t seed);

/// Value with a Monte-Carlo standard error (zero for deterministic rules).
struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

}  // namespace sharpwave

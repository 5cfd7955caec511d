#pragma once

// Minkowski-space machinery: Lorentz boosts, integration against the delta
// measure of the prolate ellipsoid |x| + |xi - x| = tau, and a direct
// quadrature of the cone-constrained integral I_beta(y1, y2).

#include <cstdint>
#include <functional>
#include <optional>

#include "sharpwave/model.hpp"

namespace sharpwave {

/// Boost with velocity v (|v| < 1).
struct LorentzBoost {
  Vec v;
  double gamma = 1.0;

  LorentzBoost() = default;
  explicit LorentzBoost(Vec velocity);

  int dim() const { return static_cast<int>(v.size()); }
  LorentzBoost inverse() const { return LorentzBoost(-v); }
};

/// Boost taking ((tau^2 - |xi|^2)^{1/2}, 0) to (tau, xi): v = -xi/tau.
LorentzBoost boost_for(double tau, const Vec& xi);

/// L(t, x) = (gamma (t - v.x), x + ((gamma-1)/|v|^2 v.x - gamma t) v).
MinkowskiVector boost_apply(const LorentzBoost& L, const MinkowskiVector& w);

/// (d+1)x(d+1) matrix of the boost, assembled column by column from the
/// images of the basis vectors.
Eigen::MatrixXd boost_matrix(const LorentzBoost& L);

/// Chart for the ellipsoid integral. Directions x/|x| are parametrised by
/// t = cos(angle to axis) and, inside the orthogonal complement, by the
/// cosine v to `plane`. The integrand must be invariant under rotations that
/// fix span(axis, plane). When the integrand behaves like (1 - t)^{exponent}
/// near the axis, passing that exponent moves it into the Jacobi weight.
struct EllipsoidChart {
  std::optional<Vec> axis;
  std::optional<Vec> plane;
  double axis_exponent = 0.0;
};

/// int F(x) delta(|x| + |xi - x| - tau) dx with n-point Gauss-Jacobi rules
/// in both chart angles.
double integrate_delta_ellipsoid(const std::function<double(const Vec&)>& F, double tau,
                                 const Vec& xi, int n, const EllipsoidChart& chart = {});

/// Same integral by nested adaptive quadrature (polar angle outside with a
/// breakpoint at the direction of xi, azimuth inside). Used where the
/// ellipsoid is so eccentric that fixed Jacobi rules stall.
double integrate_delta_ellipsoid_adaptive(const std::function<double(const Vec&)>& F, double tau,
                                          const Vec& xi, const EllipsoidChart& chart = {},
                                          double rel_tol = 1e-11);

struct IBetaResult {
  double value = 0.0;
  int nodes_used = 0;     // Jacobi nodes per angle; 0 when the adaptive path was taken
  bool adaptive = false;
};

/// Direct quadrature of
///   I_beta(y) = int int (|y1||x2| - y1.x2)^{2b} / (|x1||x2|)
///               delta(|x1|+|x2|-|y1|-|y2|) delta(x1+x2-y1-y2) dx1 dx2.
/// Starts at n nodes per angle and doubles until two successive values agree
/// to rel_tol; past 512 nodes it switches to the adaptive integrator.
/// Throws DegenerateError for (near-)parallel y1, y2.
IBetaResult I_beta_numeric_detail(const Vec& y1, const Vec& y2, double beta, int d, int n,
                                  double rel_tol = 1e-10);
double I_beta_numeric(const Vec& y1, const Vec& y2, double beta, int d, int n);

struct Lemma32Record {
  double lhs = 0.0;        // Minkowski pairing via the boost
  double predicted = 0.0;  // ((|y1||y2| - y1.y2)/2)(1 + x'.omega*)
  Vec omega_star;
  double z_norm_gap = 0.0;  // | |z| - (|y1||y2| - y1.y2) |
  Vec x;                    // x after rescaling onto the required sphere
};

/// Evaluates both sides of the pairing identity for the boost determined by
/// (y1, y2), with x rescaled to 2|x| = (tau^2 - |xi|^2)^{1/2}.
Lemma32Record lemma32_check(const Vec& y1, const Vec& y2, const Vec& x);

/// Max relative mismatch of |x1||x2| f^(x1) g^(x2) against |y1||y2| f^(y1) g^(y2)
/// over random points of {x1 + x2 = y1 + y2, |x1| + |x2| = |y1| + |y2|}.
double equality_condition_residual(const FourierData& f, const FourierData& g, int n_samples,
                                   std::uint64_t seed);

/// Standard-normal pair (y1, y2) with angle at least min_angle.
std::pair<Vec, Vec> random_pair(int d, std::uint64_t seed, double min_angle = 1e-3);

}  // namespace sharpwave

#pragma once

// Right-hand-side functionals (T_beta, H_lambda, I_beta, L^p norms on the
// sphere) and the weighted space-time norms of the bilinear wave products.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "sharpwave/model.hpp"

namespace sharpwave {

/// u v-bar (product measure outside the cone) or u v (inside).
enum class SignMode { PlusMinus, PlusPlus };

std::string to_string(SignMode m);
/// "pm" / "pp" (also "PlusMinus" / "PlusPlus").
SignMode parse_sign_mode(const std::string& s);

/// Nonnegative function on S^{d-1}. Zonal functions carry their axis and a
/// profile in t = w . axis, which lets sphere integrals collapse to one or
/// three Jacobi-weighted angles.
class SphericalFunction {
 public:
  using Eval = std::function<double(const Vec&)>;
  using Profile = std::function<double(double)>;

  static SphericalFunction constant(int d, double c);
  static SphericalFunction zonal(int d, Vec axis, Profile g);
  static SphericalFunction general(int d, Eval g);

  int dim() const { return d_; }
  const std::optional<Vec>& zonal_axis() const { return axis_; }
  std::optional<double> constant_value() const { return const_; }
  bool is_zonal() const { return axis_.has_value(); }

  double operator()(const Vec& w) const;
  /// Profile value at t = w . axis (zonal functions only).
  double at(double t) const;

  /// Same function seen as zonal about -axis.
  SphericalFunction flipped() const;

 private:
  int d_ = 0;
  std::optional<Vec> axis_;
  std::optional<double> const_;
  Profile profile_;
  Eval eval_;
};

/// Node counts and seeds shared by the functionals.
struct FunctionalOptions {
  int n_angle = 64;          // Jacobi nodes per sphere angle
  int n_lhs = 48;            // Jacobi nodes for the finite LHS variable
  int mc_samples = 200000;   // pairs for Monte-Carlo sphere integrals
  std::uint64_t seed = 20240611;
  double rel_tol = 1e-11;    // semi-infinite radial integrals
};

/// T_beta f(w) = (2 pi)^{-d} int_0^inf |f^(r w)|^2 r^{(3d-3)/2 + 2 beta} dr.
/// Extremiser data use the closed form C (1 + zeta.w)^{-q}, q = (3d-5)/2 + 2b;
/// radial data give a constant; other data are integrated along each ray.
SphericalFunction T_beta(const FourierData& data, const Setting& setting,
                         const FunctionalOptions& opt = {});
/// Always the ray-by-ray quadrature, even when a closed form exists.
SphericalFunction T_beta_numeric(const FourierData& data, const Setting& setting,
                                 const FunctionalOptions& opt = {});

/// H_lambda(g1, g2) = int int g1(w1) g2(w2) |w1 - w2|^{-lambda} dw1 dw2.
/// Nested zonal quadrature (three Jacobi angles, the kernel carried by the
/// weight) when both inputs are zonal about a common axis; Monte Carlo with a
/// standard error otherwise.
Estimate H_lambda(const SphericalFunction& g1, const SphericalFunction& g2, double lambda,
                  const FunctionalOptions& opt = {});
/// Monte-Carlo estimate regardless of symmetry.
Estimate H_lambda_mc(const SphericalFunction& g1, const SphericalFunction& g2, double lambda,
                     int samples, std::uint64_t seed);

/// int int F(w1.e) G(w2.e) K(w1.w2) dw1 dw2 for K(t) = (1 - t)^kappa via the
/// Funk-Hecke expansion in normalised Gegenbauer polynomials. Only F and G
/// at n one-dimensional nodes are needed.
double zonal_pair_funk_hecke(int d, const std::function<double(double)>& F,
                             const std::function<double(double)>& G, double kappa, int n);

/// (int |g|^p)^{1/p}; zonal quadrature or Monte Carlo.
Estimate lp_sphere_norm(const SphericalFunction& g, double p, const FunctionalOptions& opt = {});

enum class IBetaRoute {
  Auto,           // RadialProduct for radial data, HlsTrick otherwise
  RadialProduct,  // two radial integrals times one Jacobi angular integral
  FunkHecke,      // numeric T_beta, Funk-Hecke series of the angular kernel
  HlsTrick        // (2 pi)^{2d} 2^{-kappa} H_lambda(T f, T g)
};

/// I_beta(f, g) = int int |f^(y1)|^2 |g^(y2)|^2 (|y1||y2|)^{(d-1)/2 + 2b}
///               (1 - y1'.y2')^{(d-3)/2 + 2b} dy1 dy2.
Estimate I_beta(const FourierData& f, const FourierData& g, const Setting& setting,
                IBetaRoute route = IBetaRoute::Auto, const FunctionalOptions& opt = {});

/// Bipolar coordinates (r, s) = (|eta|, |eta - xi|), rho = |xi|:
/// d eta = |S^{d-2}| (r s / rho) h^{d-3} dr ds with h the distance of eta
/// from the xi axis. Zero outside the triangle |r - s| <= rho <= r + s.
double bipolar_jacobian(double r, double s, double rho, int d);
/// int_{R^d} F(|eta|, |eta - xi|) d eta in bipolar coordinates; F must
/// decay exponentially in r + s at rate ~decay.
double bipolar_integral(const std::function<double(double, double)>& F, double rho, int d,
                        double decay, int n);

/// || |box|^beta (u v-bar) ||^2 (or u v for PlusPlus) over R^{1+d} for
/// radial data, u = e^{itD} f, v = e^{itD} g, with the (2 pi)^{1-3d}
/// Plancherel factor of the convention f^(xi) = int e^{-i x.xi} f.
double lhs_norm_sq(const FourierData& f, const FourierData& g, const Setting& setting, SignMode mode,
                   const FunctionalOptions& opt = {});

}  // namespace sharpwave

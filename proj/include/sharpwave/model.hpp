#pragma once

#include <algorithm>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "sharpwave/numerics.hpp"

namespace sharpwave {

using Complex = std::complex<double>;

/// Dimension d and weight exponent beta, with the admissibility thresholds.
struct Setting {
  int d = 3;
  double beta = 0.0;

  Setting() = default;
  Setting(int dim, double b);

  /// beta > (1-d)/4: the bilinear (+-) inequality holds.
  bool admissible_inequality() const { return beta > (1.0 - d) / 4.0; }
  /// max{(1-d)/4, (2-d)/2}; zero in dimension two.
  double beta_d() const { return std::max((1.0 - d) / 4.0, (2.0 - d) / 2.0); }
  /// beta > beta_d: the (+-) constant is sharp.
  bool admissible_sharp() const { return beta > beta_d(); }
  /// beta > (2-d)/2: the (++) constant is sharp.
  bool admissible_sharp_pp() const { return beta > (2.0 - d) / 2.0; }

  /// Exponent s = (d-1)/4 + beta of the Sobolev norms on the right-hand side.
  double sobolev_exponent() const { return 0.25 * (d - 1) + beta; }
  /// lambda = 3 - d - 4 beta, the Riesz exponent of the sphere pairing.
  double riesz_lambda() const { return 3.0 - d - 4.0 * beta; }
  /// (3d-5)/2 + 2 beta: decay exponent of T_beta on the extremiser family.
  double tbeta_exponent() const { return 0.5 * (3 * d - 5) + 2.0 * beta; }
};

/// Parameters of f^(xi) = lambda * exp(a|xi| + b.xi + c) / |xi| with
/// Re a < 0 and |Re b| < -Re a.
struct ExtremiserParams {
  Complex a{-1.0, 0.0};
  CVec b;
  Complex c{0.0, 0.0};
  Complex lambda{1.0, 0.0};

  ExtremiserParams() = default;
  ExtremiserParams(Complex a_, CVec b_, Complex c_, Complex lambda_ = 1.0);

  int dim() const { return static_cast<int>(b.size()); }
  /// Exponential decay rate of |f^| along the slowest ray: -Re a - |Re b|.
  double min_decay() const { return -a.real() - b.real().norm(); }
  /// zeta = Re b / Re a, |zeta| < 1.
  Vec zeta() const { return b.real() / a.real(); }
};

/// Frequency-side data f^ on R^d.
///
/// Radial data carry a profile phi(r) with declared behaviour phi ~ r^{-sing}
/// at 0 and exp(-decay r) at infinity. Generic data are pointwise evaluable;
/// when they depend only on |xi| and xi.axis the axis is recorded so that
/// sphere integrals reduce to one angle.
class FourierData {
 public:
  enum class Kind { Radial, Extremiser, Generic };
  using Profile = std::function<Complex(double)>;
  using Field = std::function<Complex(const Vec&)>;

  static FourierData radial(int d, Profile phi, double sing_order, double decay_rate,
                            std::string label = "radial");
  /// Radial data whose weighted norm int |phi|^2 r^{(3d-3)/2+2beta} dr is
  /// checked finite for the given setting.
  static FourierData radial_checked(const Setting& s, Profile phi, double sing_order,
                                    double decay_rate, std::string label = "radial");
  static FourierData extremiser(ExtremiserParams p, std::string label = "extremiser");
  static FourierData generic(int d, Field f, double sing_order, double decay_rate,
                             std::optional<Vec> axis, std::string label = "generic");

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const std::string& label() const { return label_; }
  double sing_order() const { return sing_; }
  double decay_rate() const { return decay_; }

  /// True when f^ depends on |xi| only (radial profiles and b = 0 extremisers).
  bool is_radial() const;
  /// Axis of symmetry of |f^| when it depends only on |xi| and xi.axis.
  std::optional<Vec> zonal_axis() const;
  const ExtremiserParams& params() const;

  /// Radial profile phi(r); throws UnsupportedData for non-radial data.
  Complex profile(double r) const;
  /// f^(xi).
  Complex operator()(const Vec& xi) const;

  /// Pointwise rescaling f^ -> mu f^.
  FourierData scaled(Complex mu) const;
  /// Dilation f^(xi) -> f^(xi / mu).
  FourierData dilated(double mu) const;

 private:
  Kind kind_ = Kind::Radial;
  int dim_ = 0;
  std::string label_;
  double sing_ = 0.0;
  double decay_ = 1.0;
  Profile phi_;
  Field field_;
  std::optional<ExtremiserParams> params_;
  std::optional<Vec> axis_;
};

/// Time t and space x of a point in R^{1+d}.
struct MinkowskiVector {
  double t = 0.0;
  Vec x;
  /// t^2 - |x|^2.
  double quadratic_form() const { return t * t - x.squaredNorm(); }
};

/// e^{a|xi| + b.xi + c} / |xi| (times the lambda scale).
Complex extremiser_eval(const ExtremiserParams& p, const Vec& xi);

/// ||f||^2 in H^s-dot = (2 pi)^{-d} int |f^|^2 |xi|^{2s} d xi.
/// Radial data: one radial quadrature. Axially symmetric data: radial
/// quadrature along each ray of a zonal Gauss-Jacobi rule with n_angle nodes.
double sobolev_norm_sq(const FourierData& data, double s, const Setting& setting, int n_angle = 96);

/// f^_{+-} = (u0^ -+ i u1^ / |xi|) / 2.
std::pair<FourierData, FourierData> wave_split(const FourierData& u0_hat, const FourierData& u1_hat);

// ---------------------------------------------------------------------------
// Presets

/// b = 0 extremiser with a = -1, c = 0: f^ = e^{-|xi|}/|xi|.
FourierData foschi_data(int d);
/// f^ = e^{-|xi|^2}.
FourierData gaussian_data(int d);
/// f^ = e^{-|xi|^2} (1 + 0.5 xi_1/|xi|): non-radial, zonal about e_1.
FourierData tilted_gaussian_data(int d);
/// Extremiser with a, b = b1 e_1, c real.
FourierData extremiser_data(int d, double a, double b1, double c);
/// a = -1, b = (1 - delta) e_1, c = 0.
FourierData prop13_data(int d, double delta);

/// Parses "foschi", "gaussian", "tilted_gaussian", "extremiser(a,b1,c)" or
/// "prop13(delta)". Throws std::invalid_argument for unknown presets.
FourierData preset_data(const std::string& spec, int d);

}  // namespace sharpwave

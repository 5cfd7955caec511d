#include "sharpwave/functionals.hpp"

#include <random>
#include <sstream>
#include <vector>

namespace sharpwave {

std::string to_string(SignMode m) { return m == SignMode::PlusMinus ? "pm" : "pp"; }

SignMode parse_sign_mode(const std::string& s) {
  if (s == "pm" || s == "PlusMinus" || s == "+-") return SignMode::PlusMinus;
  if (s == "pp" || s == "PlusPlus" || s == "++") return SignMode::PlusPlus;
  throw std::invalid_argument("unknown sign mode '" + s + "' (expected pm or pp)");
}

// ---------------------------------------------------------------------------

SphericalFunction SphericalFunction::constant(int d, double c) {
  SphericalFunction out = zonal(d, Vec::Unit(d, 0), [c](double) { return c; });
  out.const_ = c;
  return out;
}

SphericalFunction SphericalFunction::zonal(int d, Vec axis, Profile g) {
  if (d < 2) throw DomainError("SphericalFunction: d must be >= 2");
  if (axis.size() != d || !(axis.norm() > 0.0)) throw DomainError("SphericalFunction: bad axis");
  SphericalFunction out;
  out.d_ = d;
  out.axis_ = axis.normalized();
  out.profile_ = std::move(g);
  return out;
}

SphericalFunction SphericalFunction::general(int d, Eval g) {
  if (d < 2) throw DomainError("SphericalFunction: d must be >= 2");
  SphericalFunction out;
  out.d_ = d;
  out.eval_ = std::move(g);
  return out;
}

double SphericalFunction::operator()(const Vec& w) const {
  if (const_) return *const_;
  if (axis_) return profile_(std::clamp(w.dot(*axis_), -1.0, 1.0));
  return eval_(w);
}

double SphericalFunction::at(double t) const {
  if (!axis_) throw UnsupportedData("SphericalFunction::at: function is not zonal");
  return profile_(t);
}

SphericalFunction SphericalFunction::flipped() const {
  if (!axis_) throw UnsupportedData("SphericalFunction::flipped: function is not zonal");
  SphericalFunction out = *this;
  out.axis_ = -*axis_;
  out.profile_ = [p = profile_](double t) { return p(-t); };
  return out;
}

// ---------------------------------------------------------------------------

namespace {

const double kTwoPi = 2.0 * kPi;

Vec ray_direction(const Vec& e, double t) {
  const int d = static_cast<int>(e.size());
  Vec perp = Vec::Unit(d, 0);
  if (std::abs(e[0]) > 0.9) perp = Vec::Unit(d, 1);
  perp -= perp.dot(e) * e;
  perp.normalize();
  return t * e + std::sqrt(std::max(0.0, (1.0 - t) * (1.0 + t))) * perp;
}

double tbeta_radial_exponent(const Setting& s) { return 0.5 * (3 * s.d - 3) + 2.0 * s.beta; }

void require_tbeta_finite(const FourierData& data, const Setting& s) {
  const double m = tbeta_radial_exponent(s);
  if (!(2.0 * data.sing_order() - m < 1.0)) {
    std::ostringstream os;
    os << "T_beta: r-integral diverges at r = 0 for '" << data.label() << "' (beta=" << s.beta
       << ", d=" << s.d << ")";
    if (data.kind() == FourierData::Kind::Extremiser) os << "; extremiser data need beta > (5-3d)/4";
    throw DomainError(os.str());
  }
}

double ray_integral(const FourierData& data, const Vec& w, const Setting& s, double rel_tol) {
  const double m = tbeta_radial_exponent(s);
  SemilineOptions so;
  so.rel_tol = rel_tol;
  return std::pow(kTwoPi, -s.d) *
         integrate_semiline([&](double r) { return std::norm(data(Vec(r * w))) * std::pow(r, m); },
                            2.0 * data.sing_order() - m, 2.0 * data.decay_rate(), so);
}

// Both zonal about +-the same axis (constants adapt to the other's axis).
// Returns g2 re-expressed about g1's axis, or nothing.
std::optional<SphericalFunction> align(const SphericalFunction& g1, const SphericalFunction& g2) {
  if (!g1.is_zonal() || !g2.is_zonal()) return std::nullopt;
  if (g2.constant_value()) return SphericalFunction::zonal(g1.dim(), *g1.zonal_axis(),
                                                           [c = *g2.constant_value()](double) { return c; });
  const double c = g1.zonal_axis()->dot(*g2.zonal_axis());
  if (c > 1.0 - 1e-12) return g2;
  if (c < -1.0 + 1e-12) return g2.flipped();
  return std::nullopt;
}

// int int F(w1.e) G(w2.e) 2^{-lambda/2} (1 - w1.w2)^{-lambda/2}: outer angle
// t1 = w1.e, then u = w1.w2 (kernel in the Jacobi weight), then the cosine v
// inside the (d-2)-sphere orthogonal to w1.
double nested_zonal(int d, const SphericalFunction& F, const SphericalFunction& G, double lambda, int n) {
  const double a = 0.5 * (d - 3);
  const Quadrature1D qt = gauss_jacobi(n, a, a);
  const Quadrature1D qu = gauss_jacobi(n, a - 0.5 * lambda, a);
  Quadrature1D qv;
  double v_mass = 1.0;
  if (d == 2) {
    qv.nodes = (Vec(2) << -1.0, 1.0).finished();
    qv.weights = Vec::Ones(2);
  } else {
    qv = gauss_jacobi(n, 0.5 * (d - 4), 0.5 * (d - 4));
    v_mass = sphere_area(d - 2);
  }
  NeumaierSum outer;
  for (Eigen::Index i = 0; i < qt.size(); ++i) {
    const double t1 = qt.nodes[i];
    const double s1 = std::sqrt((1.0 - t1) * (1.0 + t1));
    NeumaierSum mid;
    for (Eigen::Index j = 0; j < qu.size(); ++j) {
      const double u = qu.nodes[j];
      const double su = std::sqrt((1.0 - u) * (1.0 + u));
      double inner = 0.0;
      for (Eigen::Index k = 0; k < qv.size(); ++k) {
        const double t2 = std::clamp(u * t1 + su * s1 * qv.nodes[k], -1.0, 1.0);
        inner += qv.weights[k] * G.at(t2);
      }
      mid += qu.weights[j] * inner;
    }
    outer += qt.weights[i] * F.at(t1) * mid.value();
  }
  return sphere_area(d - 1) * v_mass * std::pow(2.0, -0.5 * lambda) * outer.value();
}

// Normalised Gegenbauer values P_k(t)/P_k(1), k = 0..kmax, for weight
// (1 - t^2)^a, via the Jacobi recurrence with alpha = beta = a.
Eigen::MatrixXd gegenbauer_table(int kmax, double a, const Vec& t) {
  const Eigen::Index n = t.size();
  Eigen::MatrixXd P(n, kmax + 1);
  auto fill = [&](double x, double* out) {
    out[0] = 1.0;
    if (kmax == 0) return;
    out[1] = (a + 1.0) * x;
    for (int k = 2; k <= kmax; ++k) {
      const double c = 2.0 * k + 2.0 * a;
      const double a1 = 2.0 * k * (k + 2.0 * a) * (c - 2.0);
      const double a3 = (c - 2.0) * (c - 1.0) * c;
      const double a4 = 2.0 * (k + a - 1.0) * (k + a - 1.0) * c;
      out[k] = (a3 * x * out[k - 1] - a4 * out[k - 2]) / a1;
    }
  };
  std::vector<double> at_one(kmax + 1), row(kmax + 1);
  fill(1.0, at_one.data());
  for (Eigen::Index i = 0; i < n; ++i) {
    fill(t[i], row.data());
    for (int k = 0; k <= kmax; ++k) P(i, k) = row[k] / at_one[k];
  }
  return P;
}

}  // namespace

SphericalFunction T_beta_numeric(const FourierData& data, const Setting& s, const FunctionalOptions& opt) {
  if (data.dim() != s.d) throw DomainError("T_beta: data dimension differs from setting");
  require_tbeta_finite(data, s);
  if (data.is_radial()) {
    const double m = tbeta_radial_exponent(s);
    SemilineOptions so;
    so.rel_tol = opt.rel_tol;
    const double c = std::pow(kTwoPi, -s.d) *
                     integrate_semiline([&](double r) { return std::norm(data.profile(r)) * std::pow(r, m); },
                                        2.0 * data.sing_order() - m, 2.0 * data.decay_rate(), so);
    return SphericalFunction::constant(s.d, c);
  }
  const double tol = opt.rel_tol;
  if (const auto axis = data.zonal_axis()) {
    return SphericalFunction::zonal(s.d, *axis, [data, s, e = *axis, tol](double t) {
      return ray_integral(data, ray_direction(e, t), s, tol);
    });
  }
  return SphericalFunction::general(s.d, [data, s, tol](const Vec& w) { return ray_integral(data, w, s, tol); });
}

SphericalFunction T_beta(const FourierData& data, const Setting& s, const FunctionalOptions& opt) {
  if (data.dim() != s.d) throw DomainError("T_beta: data dimension differs from setting");
  if (data.kind() != FourierData::Kind::Extremiser) return T_beta_numeric(data, s, opt);
  require_tbeta_finite(data, s);
  const auto& p = data.params();
  const double q = s.tbeta_exponent();
  const double ra = p.a.real();
  const double log_c = -s.d * std::log(kTwoPi) + 2.0 * std::log(std::abs(p.lambda)) + 2.0 * p.c.real() +
                       log_gamma(q) - q * std::log(-2.0 * ra);
  const double C = std::exp(log_c);
  const double kappa = p.b.real().norm() / (-ra);  // |zeta|
  if (kappa == 0.0) return SphericalFunction::constant(s.d, C);
  // zeta = Re b / Re a points against the axis Re b: 1 + zeta.w = 1 - kappa t
  return SphericalFunction::zonal(s.d, *data.zonal_axis(),
                                  [C, kappa, q](double t) { return C * std::pow(1.0 - kappa * t, -q); });
}

// ---------------------------------------------------------------------------

Estimate H_lambda_mc(const SphericalFunction& g1, const SphericalFunction& g2, double lambda, int samples,
                     std::uint64_t seed) {
  const int d = g1.dim();
  if (g2.dim() != d) throw DomainError("H_lambda: dimension mismatch");
  if (!(lambda < d - 1.0)) throw DomainError("H_lambda: requires lambda < d-1 (kernel not integrable)");
  if (samples < 2) throw DomainError("H_lambda_mc: need at least two samples");
  std::mt19937_64 gen(seed);
  const Eigen::MatrixXd w1 = mc_sphere(d, samples, gen());
  const Eigen::MatrixXd w2 = mc_sphere(d, samples, gen());
  NeumaierSum s1, s2;
  for (int i = 0; i < samples; ++i) {
    const double dist = (w1.col(i) - w2.col(i)).norm();
    const double v = g1(w1.col(i)) * g2(w2.col(i)) * std::pow(dist, -lambda);
    s1 += v;
    s2 += v * v;
  }
  const double mean = s1.value() / samples;
  const double var = std::max(0.0, s2.value() / samples - mean * mean) * samples / (samples - 1.0);
  const double area2 = std::pow(sphere_area(d), 2);
  return {area2 * mean, area2 * std::sqrt(var / samples)};
}

Estimate H_lambda(const SphericalFunction& g1, const SphericalFunction& g2, double lambda,
                  const FunctionalOptions& opt) {
  const int d = g1.dim();
  if (g2.dim() != d) throw DomainError("H_lambda: dimension mismatch");
  if (!(lambda < d - 1.0)) throw DomainError("H_lambda: requires lambda < d-1 (kernel not integrable)");
  if (g1.constant_value() && g2.is_zonal()) {
    if (auto a = align(g2, g1)) return {nested_zonal(d, *a, g2, lambda, opt.n_angle), 0.0};
  }
  if (auto a = align(g1, g2)) return {nested_zonal(d, g1, *a, lambda, opt.n_angle), 0.0};
  return H_lambda_mc(g1, g2, lambda, opt.mc_samples, opt.seed);
}

double zonal_pair_funk_hecke(int d, const std::function<double(double)>& F,
                             const std::function<double(double)>& G, double kappa, int n) {
  if (d < 2) throw DomainError("zonal_pair_funk_hecke: d must be >= 2");
  const double a = 0.5 * (d - 3);
  if (!(a + kappa > -1.0)) throw DomainError("zonal_pair_funk_hecke: kernel (1-t)^kappa not integrable");
  const int kmax = std::max(1, n / 2);
  const Quadrature1D q = gauss_jacobi(n, a, a);
  const Quadrature1D qk = gauss_jacobi(n, a + kappa, a);
  const Eigen::MatrixXd P = gegenbauer_table(kmax, a, q.nodes);
  const Eigen::MatrixXd Pk = gegenbauer_table(kmax, a, qk.nodes);
  Vec fv(q.size()), gv(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    fv[i] = F(q.nodes[i]);
    gv[i] = G(q.nodes[i]);
  }
  const double area = sphere_area(d - 1);
  NeumaierSum total;
  for (int k = 0; k <= kmax; ++k) {
    const double fk = (q.weights.array() * fv.array() * P.col(k).array()).sum();
    const double gk = (q.weights.array() * gv.array() * P.col(k).array()).sum();
    const double nk = (q.weights.array() * P.col(k).array().square()).sum();
    const double mu = area * (qk.weights.array() * Pk.col(k).array()).sum();
    total += mu * area * fk * gk / nk;
  }
  return total.value();
}

Estimate lp_sphere_norm(const SphericalFunction& g, double p, const FunctionalOptions& opt) {
  if (!(p > 0.0)) throw DomainError("lp_sphere_norm: p must be positive");
  const int d = g.dim();
  if (auto c = g.constant_value()) return {std::abs(*c) * std::pow(sphere_area(d), 1.0 / p), 0.0};
  if (g.is_zonal()) {
    const double I = sphere_integrate_zonal(d, [&](double t) { return std::pow(std::abs(g.at(t)), p); },
                                            opt.n_angle);
    return {std::pow(I, 1.0 / p), 0.0};
  }
  const Eigen::MatrixXd w = mc_sphere(d, opt.mc_samples, opt.seed);
  NeumaierSum s1, s2;
  for (Eigen::Index i = 0; i < w.cols(); ++i) {
    const double v = std::pow(std::abs(g(w.col(i))), p);
    s1 += v;
    s2 += v * v;
  }
  const double N = static_cast<double>(w.cols());
  const double mean = s1.value() / N;
  const double se = std::sqrt(std::max(0.0, s2.value() / N - mean * mean) / (N - 1.0));
  const double area = sphere_area(d);
  const double I = area * mean;
  const double val = std::pow(I, 1.0 / p);
  return {val, val / (p * I) * area * se};  // delta method
}

// ---------------------------------------------------------------------------

Estimate I_beta(const FourierData& f, const FourierData& g, const Setting& s, IBetaRoute route,
                const FunctionalOptions& opt) {
  const int d = s.d;
  if (f.dim() != d || g.dim() != d) throw DomainError("I_beta: data dimension differs from setting");
  if (!(s.beta > (2.0 - d) / 2.0))
    throw DomainError("I_beta: angular factor (1 - y1'.y2')^{(d-3)/2+2beta} is not integrable; need beta > (2-d)/2");
  const double a = 0.5 * (d - 3);
  const double kappa = a + 2.0 * s.beta;
  if (route == IBetaRoute::Auto)
    route = (f.is_radial() && g.is_radial()) ? IBetaRoute::RadialProduct : IBetaRoute::HlsTrick;

  switch (route) {
    case IBetaRoute::RadialProduct: {
      if (!f.is_radial() || !g.is_radial())
        throw UnsupportedData("I_beta: the radial-product route needs radial data");
      const double m = tbeta_radial_exponent(s);
      SemilineOptions so;
      so.rel_tol = opt.rel_tol;
      auto radial = [&](const FourierData& h) {
        if (!(2.0 * h.sing_order() - m < 1.0))
          throw DomainError("I_beta: radial factor of '" + h.label() + "' diverges at r = 0");
        return integrate_semiline([&](double r) { return std::norm(h.profile(r)) * std::pow(r, m); },
                                  2.0 * h.sing_order() - m, 2.0 * h.decay_rate(), so);
      };
      const double ang = sphere_area(d) * sphere_area(d - 1) *
                         gauss_jacobi(opt.n_angle, a + kappa, a).weights.sum();
      return {radial(f) * radial(g) * ang, 0.0};
    }
    case IBetaRoute::FunkHecke: {
      const SphericalFunction tf = T_beta_numeric(f, s, opt);
      const SphericalFunction tg = T_beta_numeric(g, s, opt);
      const auto tg_al = align(tf, tg);
      if (!tg_al) throw UnsupportedData("I_beta: Funk-Hecke route needs data zonal about a common axis");
      const double v = zonal_pair_funk_hecke(
          d, [&](double t) { return tf.at(t); }, [&](double t) { return tg_al->at(t); }, kappa,
          2 * opt.n_angle);
      return {std::pow(kTwoPi, 2 * d) * v, 0.0};
    }
    case IBetaRoute::HlsTrick:
    case IBetaRoute::Auto: {
      const SphericalFunction tf = T_beta(f, s, opt);
      const SphericalFunction tg = T_beta(g, s, opt);
      const Estimate h = H_lambda(tf, tg, s.riesz_lambda(), opt);
      const double c = std::pow(kTwoPi, 2 * d) * std::pow(2.0, -kappa);
      return {c * h.value, c * h.stderr_};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------

double bipolar_jacobian(double r, double s, double rho, int d) {
  if (d < 2) throw DomainError("bipolar_jacobian: d must be >= 2");
  if (!(rho > 0.0)) throw DomainError("bipolar_jacobian: rho must be positive");
  const double h2 = (r + s + rho) * (s + rho - r) * (r - s + rho) * (r + s - rho) / (4.0 * rho * rho);
  if (!(h2 > 0.0)) return 0.0;
  return sphere_area(d - 1) * r * s / rho * std::pow(h2, 0.5 * (d - 3));
}

double bipolar_integral(const std::function<double(double, double)>& F, double rho, int d, double decay,
                        int n) {
  if (d < 2) throw DomainError("bipolar_integral: d must be >= 2");
  if (!(rho > 0.0)) throw DomainError("bipolar_integral: rho must be positive");
  // a = r + s = rho + x, b = r - s = rho v; dr ds = da db / 2
  const double e = 0.5 * (d - 3);
  const Quadrature1D qv = gauss_jacobi(n, e, e);
  const double pref = 0.5 * sphere_area(d - 1) * std::pow(2.0 * rho, -2.0 * e) * std::pow(rho, 2.0 * e + 1.0);
  const double val = integrate_semiline(
      [&](double x) {
        const double A = rho + x;
        NeumaierSum s;
        for (Eigen::Index j = 0; j < qv.size(); ++j) {
          const double b = rho * qv.nodes[j];
          const double r = 0.5 * (A + b), ss = 0.5 * (A - b);
          s += qv.weights[j] * F(r, ss) * r * ss / rho;
        }
        return s.value() * std::pow(x * (2.0 * rho + x), e);
      },
      std::max(0.0, -e), decay);
  return pref * val;
}

double lhs_norm_sq(const FourierData& f, const FourierData& g, const Setting& s, SignMode mode,
                   const FunctionalOptions& opt) {
  const int d = s.d;
  const double beta = s.beta;
  if (f.dim() != d || g.dim() != d) throw DomainError("lhs_norm_sq: data dimension differs from setting");
  if (!f.is_radial() || !g.is_radial())
    throw UnsupportedData("lhs_norm_sq: only radial data are supported ('" + f.label() + "', '" +
                          g.label() + "')");
  if (mode == SignMode::PlusMinus && !(beta > s.beta_d()))
    throw DomainError("lhs_norm_sq(pm): requires beta > beta_d = max{(1-d)/4, (2-d)/2}");
  if (mode == SignMode::PlusPlus && !(beta > (2.0 - d) / 2.0))
    throw DomainError("lhs_norm_sq(pp): requires beta > (2-d)/2");

  const double e = 0.5 * (d - 3);
  const double S2 = sphere_area(d - 1);
  const double pref = std::pow(kTwoPi, 1.0 - 3.0 * d) * sphere_area(d);
  const double df = f.decay_rate(), dg = g.decay_rate();
  SemilineOptions inner_opt;
  inner_opt.rel_tol = opt.rel_tol;
  SemilineOptions outer_opt;
  outer_opt.rel_tol = 10.0 * opt.rel_tol;
  const double ew = 2.0 * beta + d - 3.0;  // exponent of (tau^2 - rho^2) after the angular factors

  if (mode == SignMode::PlusMinus) {
    // tau = rho u, u in (-1, 1); w = r + s = rho + x.
    const Quadrature1D qu = gauss_jacobi(opt.n_lhs, ew, ew);
    auto G = [&](double rho) {
      NeumaierSum acc;
      for (Eigen::Index j = 0; j < qu.size(); ++j) {
        const double u = qu.nodes[j];
        const double cp = rho * (1.0 + u), cm = rho * (1.0 - u);
        const Complex K = integrate_semiline(
            [&](double x) {
              const double r = 0.5 * (cp + x), sv = 0.5 * (cm + x);
              return f.profile(r) * std::conj(g.profile(sv)) * (r * sv / (2.0 * rho) * std::pow(x * (2.0 * rho + x), e));
            },
            std::max(0.0, -e), 0.5 * (df + dg), inner_opt);
        acc += qu.weights[j] * std::norm(K);
      }
      return std::pow(rho, d + 4.0 * beta) * S2 * S2 * std::pow(4.0, -2.0 * e) * acc.value();
    };
    return pref * integrate_semiline(G, std::max(0.0, -(d - 2.0 + 4.0 * beta)), df + dg, outer_opt);
  }

  // PlusPlus: tau = rho + x, w = r - s = rho v.
  const Quadrature1D qv = gauss_jacobi(opt.n_lhs, e, e);
  auto G = [&](double rho) {
    const double inner = integrate_semiline(
        [&](double x) {
          const double tau = rho + x;
          CompensatedSum<Complex> K;
          for (Eigen::Index j = 0; j < qv.size(); ++j) {
            const double w = rho * qv.nodes[j];
            const double r = 0.5 * (tau + w), sv = 0.5 * (tau - w);
            K += qv.weights[j] * f.profile(r) * g.profile(sv) * (r * sv / (2.0 * rho));
          }
          // (tau^2 - rho^2)^{ew} |rho^{d-2} K|^2 (4 rho^2)^{3-d}
          return std::pow(x * (2.0 * rho + x), ew) * std::norm(K.value()) * std::pow(rho, 2.0 * (d - 2)) *
                 std::pow(4.0 * rho * rho, 3.0 - d);
        },
        std::max(0.0, -ew), df + dg, inner_opt);
    return std::pow(rho, d - 1.0) * S2 * S2 * inner;
  };
  return pref * integrate_semiline(G, 0.0, df + dg, outer_opt);
}

}  // namespace sharpwave

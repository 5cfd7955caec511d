#include "sharpwave/geometry.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <memory>
#include <random>
#include <sstream>

namespace sharpwave {

LorentzBoost::LorentzBoost(Vec velocity) : v(std::move(velocity)) {
  const double v2 = v.squaredNorm();
  if (!(v2 < 1.0)) throw DomainError("LorentzBoost: |v| must be < 1");
  gamma = 1.0 / std::sqrt(1.0 - v2);
}

LorentzBoost boost_for(double tau, const Vec& xi) {
  if (!(xi.norm() < tau)) throw DomainError("boost_for: need |xi| < tau (timelike (tau, xi))");
  LorentzBoost L(-xi / tau);
  // tau / sqrt(tau^2 - |xi|^2) without the cancellation in 1 - |v|^2
  L.gamma = tau / std::sqrt((tau - xi.norm()) * (tau + xi.norm()));
  return L;
}

MinkowskiVector boost_apply(const LorentzBoost& L, const MinkowskiVector& w) {
  if (w.x.size() != L.v.size()) throw DomainError("boost_apply: dimension mismatch");
  const double g = L.gamma;
  const double vx = L.v.dot(w.x);
  // (gamma - 1)/|v|^2 = gamma^2/(gamma + 1), finite at v = 0
  const double k = g * g / (g + 1.0);
  MinkowskiVector out;
  out.t = g * (w.t - vx);
  out.x = w.x + (k * vx - g * w.t) * L.v;
  return out;
}

Eigen::MatrixXd boost_matrix(const LorentzBoost& L) {
  const int d = L.dim();
  Eigen::MatrixXd M(d + 1, d + 1);
  for (int j = 0; j <= d; ++j) {
    MinkowskiVector e{j == 0 ? 1.0 : 0.0, Vec::Zero(d)};
    if (j > 0) e.x[j - 1] = 1.0;
    const MinkowskiVector img = boost_apply(L, e);
    M(0, j) = img.t;
    M.col(j).tail(d) = img.x;
  }
  return M;
}

namespace {

// Orthonormal frame (axis, plane, rest...) for the ellipsoid chart.
struct Frame {
  Vec e;
  Vec p;
  Vec q;  // third direction (d >= 3)
};

Vec any_orthogonal(const Vec& e) {
  const int d = static_cast<int>(e.size());
  Eigen::Index imin = 0;
  e.cwiseAbs().minCoeff(&imin);
  Vec u = Vec::Unit(d, imin);
  u -= u.dot(e) * e;
  return u.normalized();
}

Frame make_frame(const Vec& xi, const EllipsoidChart& chart) {
  const int d = static_cast<int>(xi.size());
  Frame f;
  if (chart.axis)
    f.e = chart.axis->normalized();
  else if (xi.norm() > 0.0)
    f.e = xi.normalized();
  else
    f.e = Vec::Unit(d, 0);
  Vec p = chart.plane ? *chart.plane : Vec(xi);
  p -= p.dot(f.e) * f.e;
  f.p = (p.norm() > 1e-12 * std::max(1.0, xi.norm())) ? p.normalized() : any_orthogonal(f.e);
  if (d >= 3) {
    Vec q = Vec::Unit(d, 0);
    double best = -1.0;
    for (int i = 0; i < d; ++i) {
      Vec c = Vec::Unit(d, i);
      c -= c.dot(f.e) * f.e + c.dot(f.p) * f.p;
      if (c.norm() > best) {
        best = c.norm();
        q = c;
      }
    }
    f.q = q.normalized();
  }
  return f;
}

}  // namespace

double integrate_delta_ellipsoid(const std::function<double(const Vec&)>& F, double tau,
                                 const Vec& xi, int n, const EllipsoidChart& chart) {
  const int d = static_cast<int>(xi.size());
  if (d < 2) throw DomainError("integrate_delta_ellipsoid: d must be >= 2");
  const double rho = xi.norm();
  if (!(rho < tau)) throw DomainError("integrate_delta_ellipsoid: need |xi| < tau");
  if (n < 1) throw DomainError("integrate_delta_ellipsoid: n must be >= 1");
  const Frame fr = make_frame(xi, chart);
  const double a = 0.5 * (d - 3);
  const double alpha = chart.axis_exponent;
  const Quadrature1D qt = gauss_jacobi(n, a + alpha, a);
  const double gap = (tau - rho) * (tau + rho);

  Quadrature1D qv;
  double v_mass = 1.0;
  if (d == 2) {
    qv.nodes = (Vec(2) << -1.0, 1.0).finished();
    qv.weights = Vec::Ones(2);
  } else {
    qv = gauss_jacobi(n, 0.5 * (d - 4), 0.5 * (d - 4));
    v_mass = sphere_area(d - 2);
  }

  NeumaierSum total;
  Vec omega(d), x(d);
  for (Eigen::Index i = 0; i < qt.size(); ++i) {
    const double t = qt.nodes[i];
    const double st = std::sqrt((1.0 - t) * (1.0 + t));
    const double sing = alpha == 0.0 ? 1.0 : std::pow(1.0 - t, -alpha);
    NeumaierSum inner;
    for (Eigen::Index j = 0; j < qv.size(); ++j) {
      const double v = qv.nodes[j];
      omega = t * fr.e + st * v * fr.p;
      if (d >= 3) omega += st * std::sqrt((1.0 - v) * (1.0 + v)) * fr.q;
      const double denom = tau - xi.dot(omega);
      const double r = gap / (2.0 * denom);
      const double s = tau - r;
      x = r * omega;
      // co-area factor 1/|d/dr (|x| + |xi - x|)| = s / (tau - xi.omega)
      const double jac = std::pow(r, d - 1) * s / denom;
      inner += qv.weights[j] * F(x) * sing * jac;
    }
    total += qt.weights[i] * inner.value();
  }
  return v_mass * total.value();
}

namespace {

struct GslWorkspace {
  explicit GslWorkspace(std::size_t n) : w(gsl_integration_workspace_alloc(n)) {}
  ~GslWorkspace() { gsl_integration_workspace_free(w); }
  GslWorkspace(const GslWorkspace&) = delete;
  GslWorkspace& operator=(const GslWorkspace&) = delete;
  gsl_integration_workspace* w;
};

template <class G>
double gsl_call(double x, void* p) {
  return (*static_cast<G*>(p))(x);
}

template <class G>
double adaptive_1d(G& g, std::vector<double> pts, double rel_tol, GslWorkspace& ws, const char* what) {
  gsl_function fn{&gsl_call<G>, &g};
  double result = 0.0, err = 0.0;
  const int status = gsl_integration_qagp(&fn, pts.data(), pts.size(), 0.0, rel_tol, 2000, ws.w, &result, &err);
  // Roundoff-limited exits are accepted when the error estimate is still small.
  if (status != GSL_SUCCESS && !(err <= std::max(1e3 * rel_tol, 1e-9) * std::abs(result)))
    throw AccuracyError(std::string("integrate_delta_ellipsoid_adaptive: ") + what + " integral did not converge (" +
                        gsl_strerror(status) + ", rel. error estimate " + std::to_string(err / std::abs(result)) + ")");
  return result;
}

}  // namespace

double integrate_delta_ellipsoid_adaptive(const std::function<double(const Vec&)>& F, double tau, const Vec& xi,
                                          const EllipsoidChart& chart, double rel_tol) {
  const int d = static_cast<int>(xi.size());
  if (d < 2) throw DomainError("integrate_delta_ellipsoid_adaptive: d must be >= 2");
  const double rho = xi.norm();
  if (!(rho < tau)) throw DomainError("integrate_delta_ellipsoid_adaptive: need |xi| < tau");
  gsl_set_error_handler_off();
  const Frame fr = make_frame(xi, chart);
  const double gap = (tau - rho) * (tau + rho);
  auto point = [&](const Vec& omega) {
    const double denom = tau - xi.dot(omega);
    const double r = gap / (2.0 * denom);
    return F(r * omega) * std::pow(r, d - 1) * (tau - r) / denom;
  };
  // polar angle of xi in the chart (xi lies in span(e, p))
  const double theta_xi = rho > 0.0 ? std::atan2(xi.dot(fr.p), xi.dot(fr.e)) : 0.0;
  std::vector<double> outer_pts{0.0};
  if (theta_xi > 1e-12 && theta_xi < kPi - 1e-12) outer_pts.push_back(theta_xi);
  outer_pts.push_back(kPi);

  GslWorkspace ws_out(2000), ws_in(2000);
  Vec omega(d);
  auto outer = [&](double theta) {
    const double ct = std::cos(theta), st = std::sin(theta);
    double ang;
    if (d == 2) {
      ang = point(ct * fr.e + st * fr.p) + point(ct * fr.e - st * fr.p);
    } else {
      auto inner = [&](double phi) {
        omega = ct * fr.e + st * (std::cos(phi) * fr.p + std::sin(phi) * fr.q);
        return point(omega) * std::pow(std::sin(phi), d - 3);
      };
      ang = sphere_area(d - 2) * adaptive_1d(inner, {0.0, kPi}, rel_tol, ws_in, "azimuthal");
    }
    return ang * std::pow(st, d - 2);
  };
  return adaptive_1d(outer, outer_pts, rel_tol, ws_out, "polar");
}

IBetaResult I_beta_numeric_detail(const Vec& y1, const Vec& y2, double beta, int d, int n,
                                  double rel_tol) {
  if (y1.size() != d || y2.size() != d) throw DomainError("I_beta_numeric: vector dimension mismatch");
  if (!(beta > (1.0 - d) / 4.0)) throw DomainError("I_beta_numeric: requires beta > (1-d)/4");
  const double n1 = y1.norm(), n2 = y2.norm();
  if (n1 == 0.0 || n2 == 0.0) throw DomainError("I_beta_numeric: y1, y2 must be nonzero");
  const double cosang = std::clamp(y1.dot(y2) / (n1 * n2), -1.0, 1.0);
  if (std::acos(cosang) < 1e-6)
    throw DegenerateError("I_beta_numeric: y1 and y2 are (nearly) parallel");

  const double tau = n1 + n2;
  const Vec xi = y1 + y2;
  const Vec e = y1 / n1;
  EllipsoidChart chart{e, y2, 2.0 * beta};
  // Integration variable is x2; x1 = xi - x2. The pairing
  // |y1||x2| - y1.x2 = |y1||x2|(1 - t) vanishes on the chart axis and is
  // carried by the Jacobi weight.
  auto F = [&](const Vec& x2) {
    const double r2 = x2.norm();
    const double r1 = (xi - x2).norm();
    const double pair = n1 * r2 - y1.dot(x2);
    return std::pow(std::max(pair, 0.0), 2.0 * beta) / (r1 * r2);
  };
  int m = std::max(n, 4);
  double prev = integrate_delta_ellipsoid(F, tau, xi, m, chart);
  constexpr int kMaxNodes = 512;
  while (m < kMaxNodes) {
    m *= 2;
    const double cur = integrate_delta_ellipsoid(F, tau, xi, m, chart);
    if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) return {cur, m, false};
    prev = cur;
  }
  return {integrate_delta_ellipsoid_adaptive(F, tau, xi, chart, rel_tol), 0, true};
}

double I_beta_numeric(const Vec& y1, const Vec& y2, double beta, int d, int n) {
  return I_beta_numeric_detail(y1, y2, beta, d, n).value;
}

Lemma32Record lemma32_check(const Vec& y1, const Vec& y2, const Vec& x) {
  const int d = static_cast<int>(y1.size());
  if (y2.size() != d || x.size() != d) throw DomainError("lemma32_check: dimension mismatch");
  const double n1 = y1.norm(), n2 = y2.norm();
  const double pairing_gap = n1 * n2 - y1.dot(y2);
  if (!(pairing_gap > 1e-12 * n1 * n2))
    throw DegenerateError("lemma32_check: parallel y1, y2 force x = 0");
  if (x.norm() == 0.0) throw DomainError("lemma32_check: x must be nonzero");
  const double tau = n1 + n2;
  const Vec xi = y1 + y2;
  const double radius = 0.5 * std::sqrt(2.0 * pairing_gap);  // tau^2 - |xi|^2 = 2 gap
  Lemma32Record rec;
  rec.x = radius * x.normalized();
  const double xr = rec.x.norm();

  const LorentzBoost L = boost_for(tau, xi);
  const MinkowskiVector img = boost_apply(L, MinkowskiVector{xr, rec.x});
  rec.lhs = n1 * img.t - y1.dot(img.x);

  const Vec z = 2.0 * xr * (y2 * (xr + n1) - y1 * (xr + n2)) / (n1 + n2 + 2.0 * xr);
  rec.omega_star = z.normalized();
  rec.predicted = 0.5 * pairing_gap * (1.0 + rec.x.normalized().dot(rec.omega_star));
  rec.z_norm_gap = std::abs(z.norm() - pairing_gap);
  return rec;
}

std::pair<Vec, Vec> random_pair(int d, std::uint64_t seed, double min_angle) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Vec y1(d), y2(d);
  while (true) {
    for (int i = 0; i < d; ++i) y1[i] = normal(gen);
    for (int i = 0; i < d; ++i) y2[i] = normal(gen);
    const double n1 = y1.norm(), n2 = y2.norm();
    if (n1 < 1e-8 || n2 < 1e-8) continue;
    const double c = std::clamp(y1.dot(y2) / (n1 * n2), -1.0, 1.0);
    if (std::acos(c) >= min_angle) return {y1, y2};
  }
}

double equality_condition_residual(const FourierData& f, const FourierData& g, int n_samples,
                                   std::uint64_t seed) {
  const int d = f.dim();
  if (g.dim() != d) throw DomainError("equality_condition_residual: dimension mismatch");
  if (n_samples < 1) throw DomainError("equality_condition_residual: need at least one sample");
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<std::uint64_t> seeds;
  double worst = 0.0;
  for (int k = 0; k < n_samples; ++k) {
    const auto [y1, y2] = random_pair(d, seeds(gen));
    const double tau = y1.norm() + y2.norm();
    const Vec xi = y1 + y2;
    const Vec omega = mc_sphere(d, 1, seeds(gen)).col(0);
    const double r = (tau - xi.norm()) * (tau + xi.norm()) / (2.0 * (tau - xi.dot(omega)));
    const Vec x1 = r * omega;
    const Vec x2 = xi - x1;
    const Complex lhs = x1.norm() * x2.norm() * f(x1) * g(x2);
    const Complex rhs = y1.norm() * y2.norm() * f(y1) * g(y2);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

}  // namespace sharpwave

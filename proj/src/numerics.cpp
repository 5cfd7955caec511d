#include "sharpwave/numerics.hpp"

#include <algorithm>
#include <array>
#include <random>

#include <Eigen/Eigenvalues>

namespace sharpwave {

namespace {

// Godfrey's coefficients for g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5};

double lanczos_log_gamma(double x) {
  // x >= 0.5 here
  const double z = x - 1.0;
  double sum = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) sum += kLanczos[k] / (z + double(k));
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("log_gamma: argument must be positive");
  // Exact zeros keep the Gamma-ratio identities clean at integers 1 and 2.
  if (x == 1.0 || x == 2.0) return 0.0;
  if (x < 0.5) return lanczos_log_gamma(x + 1.0) - std::log(x);
  return lanczos_log_gamma(x);
}

double log_beta(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("beta_fn: arguments must be positive");
  return log_gamma(x) + log_gamma(y) - log_gamma(x + y);
}

double beta_fn(double x, double y) { return std::exp(log_beta(x, y)); }

double log_sphere_area(int n) {
  if (n < 1) throw DomainError("sphere_area: ambient dimension must be >= 1");
  return std::log(2.0) + 0.5 * n * std::log(kPi) - log_gamma(0.5 * n);
}

double sphere_area(int n) { return std::exp(log_sphere_area(n)); }

std::pair<double, double> jacobi_poly(int n, double a, double b, double t) {
  if (n == 0) return {1.0, 0.0};
  double p0 = 1.0;
  double p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * t;
  for (int k = 2; k <= n; ++k) {
    const double c = 2.0 * k + a + b;
    const double a1 = 2.0 * k * (k + a + b) * (c - 2.0);
    const double a2 = (c - 1.0) * (a * a - b * b);
    const double a3 = (c - 2.0) * (c - 1.0) * c;
    const double a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
    const double p2 = ((a2 + a3 * t) * p1 - a4 * p0) / a1;
    p0 = p1;
    p1 = p2;
  }
  // (2n+a+b)(1-t^2) P_n' = n[(a-b) - (2n+a+b) t] P_n + 2(n+a)(n+b) P_{n-1}
  const double c = 2.0 * n + a + b;
  const double dp = (n * ((a - b) - c * t) * p1 + 2.0 * (n + a) * (n + b) * p0) / (c * (1.0 - t * t));
  return {p1, dp};
}

Quadrature1D gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_jacobi: need at least one node");
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");

  // Symmetric tridiagonal Jacobi matrix.
  Vec diag(n), off(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) {
    const double c = 2.0 * k + a + b;
    diag[k] = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (c * (c + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double c = 2.0 * k + a + b;
    double v;
    if (k == 1)
      v = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    else
      v = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (c * c * (c + 1.0) * (c - 1.0));
    off[k - 1] = std::sqrt(v);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  Vec x = es.eigenvalues();

  const double log_c = (a + b + 1.0) * std::log(2.0) + log_gamma(n + a + 1.0) +
                       log_gamma(n + b + 1.0) - log_gamma(n + a + b + 1.0) - log_gamma(n + 1.0);
  Quadrature1D q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = x[i];
    double dp = 0.0;
    for (int it = 0; it < 4; ++it) {
      auto [p, d] = jacobi_poly(n, a, b, t);
      dp = d;
      const double step = p / d;
      const double tn = t - step;
      if (!(tn > -1.0 && tn < 1.0)) break;
      t = tn;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(t))) break;
    }
    dp = jacobi_poly(n, a, b, t).second;
    q.nodes[i] = t;
    q.weights[i] = std::exp(log_c - std::log1p(-t) - std::log1p(t) - 2.0 * std::log(std::abs(dp)));
  }
  q.domain = {-1.0, 1.0};
  q.exactness = 2 * n - 1;
  return q;
}

Quadrature1D gauss_legendre(int n, double lo, double hi) {
  Quadrature1D q = gauss_jacobi(n, 0.0, 0.0);
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  q.nodes = (q.nodes.array() * half + mid).matrix();
  q.weights *= half;
  q.domain = {lo, hi};
  return q;
}

namespace detail {
void throw_semiline(const std::string& why) {
  throw AccuracyError("integrate_semiline: " + why);
}
}  // namespace detail

SphereRule sphere_product_rule(int d, int n) {
  if (d < 2) throw DomainError("sphere_product_rule: d must be >= 2");
  if (n < 1) throw DomainError("sphere_product_rule: n must be >= 1");
  SphereRule rule;
  rule.dim = d;
  if (d == 2) {
    const int m = 2 * n;
    rule.nodes.resize(2, m);
    rule.weights = Vec::Constant(m, 2.0 * kPi / m);
    for (int j = 0; j < m; ++j) {
      const double phi = 2.0 * kPi * j / m;
      rule.nodes(0, j) = std::cos(phi);
      rule.nodes(1, j) = std::sin(phi);
    }
    return rule;
  }
  const SphereRule sub = sphere_product_rule(d - 1, n);
  const double a = 0.5 * (d - 3);
  const Quadrature1D gj = gauss_jacobi(n, a, a);
  const Eigen::Index m = sub.weights.size();
  rule.nodes.resize(d, n * m);
  rule.weights.resize(n * m);
  for (int i = 0; i < n; ++i) {
    const double t = gj.nodes[i], st = std::sqrt(1.0 - t * t);
    for (Eigen::Index j = 0; j < m; ++j) {
      const Eigen::Index c = i * m + j;
      rule.nodes(0, c) = t;
      rule.nodes.col(c).tail(d - 1) = st * sub.nodes.col(j);
      rule.weights[c] = gj.weights[i] * sub.weights[j];
    }
  }
  return rule;
}

Eigen::MatrixXd mc_sphere(int d, int n, std::uint64_t seed) {
  if (d < 1) throw DomainError("mc_sphere: d must be >= 1");
  if (n < 1) throw DomainError("mc_sphere: n must be >= 1");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd out(d, n);
  for (int j = 0; j < n; ++j) {
    double nrm = 0.0;
    do {
      for (int i = 0; i < d; ++i) out(i, j) = normal(gen);
      nrm = out.col(j).norm();
    } while (nrm < 1e-150);
    out.col(j) /= nrm;
  }
  return out;
}

}  // namespace sharpwave

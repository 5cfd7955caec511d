#include "sharpwave/constants.hpp"

#include <sstream>

namespace sharpwave {

namespace {

const double kLn2 = std::log(2.0);
const double kLnPi = std::log(kPi);

void require_dim(int d) {
  if (d < 2) throw DomainError("constants: dimension must be >= 2");
}

[[noreturn]] void inadmissible(const char* name, const char* condition, double beta, int d) {
  std::ostringstream os;
  os << name << "(beta=" << beta << ", d=" << d << "): requires " << condition;
  throw DomainError(os.str());
}

}  // namespace

double log_W(double beta, int d) {
  require_dim(d);
  if (!(beta > (1.0 - d) / 4.0)) inadmissible("W", "beta > (1-d)/4", beta, d);
  return 0.5 * (1 - 5 * d + 4 * beta) * kLn2 + 0.5 * (1 - 5 * d) * kLnPi +
         log_gamma(0.5 * (d - 1) + 2 * beta) - log_gamma(d - 1 + 2 * beta);
}
double W(double beta, int d) { return std::exp(log_W(beta, d)); }

double W0_duplication(int d) {
  require_dim(d);
  return std::exp(0.5 * (5 - 7 * d) * kLn2 + 0.5 * (2 - 5 * d) * kLnPi - log_gamma(0.5 * d));
}

double log_W_pp(double beta, int d) {
  require_dim(d);
  return 0.5 * (5 - 7 * d + 4 * beta) * kLn2 + 0.5 * (2 - 5 * d) * kLnPi - log_gamma(0.5 * d);
}
double W_pp(double beta, int d) { return std::exp(log_W_pp(beta, d)); }

double log_C_radial(double beta, int d) {
  require_dim(d);
  const double beta_d = std::max((1.0 - d) / 4.0, (2.0 - d) / 2.0);
  if (!(beta > beta_d)) inadmissible("C", "beta > beta_d = max{(1-d)/4, (2-d)/2}", beta, d);
  return (d - 3 + 4 * beta) * kLn2 + log_gamma(0.5 * d) + log_gamma(0.5 * (d - 1) + 2 * beta) -
         0.5 * d * kLnPi - std::log(d - 2 + 2 * beta) - log_gamma(0.5 * (3 * d - 5) + 2 * beta);
}
double C_radial(double beta, int d) { return std::exp(log_C_radial(beta, d)); }

double log_C_radial_pp(double beta, int d) {
  require_dim(d);
  if (!(beta > (2.0 - d) / 2.0)) inadmissible("C'", "beta > (2-d)/2", beta, d);
  return (4 * beta - 1) * kLn2 + 0.5 * (1 - d) * kLnPi + log_gamma(d - 2 + 2 * beta) -
         log_gamma(0.5 * (3 * d - 5) + 2 * beta);
}
double C_radial_pp(double beta, int d) { return std::exp(log_C_radial_pp(beta, d)); }

double log_radial_factor(double beta, int d) {
  require_dim(d);
  if (!(beta > (2.0 - d) / 2.0)) inadmissible("radial_factor", "beta > (2-d)/2", beta, d);
  return (3.5 * (d - 1) + 2 * beta) * kLn2 + 0.5 * (4 * d - 1) * kLnPi + log_gamma(0.5 * d) +
         log_gamma(d - 2 + 2 * beta) - log_gamma(0.5 * (3 * d - 5) + 2 * beta);
}
double radial_factor(double beta, int d) { return std::exp(log_radial_factor(beta, d)); }

double lemma31_closed_form(const Vec& y1, const Vec& y2, double beta, int d) {
  require_dim(d);
  if (y1.size() != d || y2.size() != d) throw DomainError("lemma31_closed_form: vector dimension mismatch");
  if (!(beta > (1.0 - d) / 4.0)) inadmissible("lemma31_closed_form", "beta > (1-d)/4", beta, d);
  const double n1 = y1.norm(), n2 = y2.norm();
  if (n1 == 0.0 || n2 == 0.0) throw DomainError("lemma31_closed_form: y1, y2 must be nonzero");
  const double expo = 0.5 * (d - 3) + 2 * beta;
  const double gap = n1 * n2 - y1.dot(y2);
  const double log_pref = 0.5 * (d - 1) * std::log(2.0 * kPi) + log_gamma(0.5 * (d - 1) + 2 * beta) -
                          log_gamma(d - 1 + 2 * beta);
  if (gap <= 1e-15 * n1 * n2) {
    if (expo > 0.0) return 0.0;
    if (expo == 0.0)
      throw DegenerateError("lemma31_closed_form: parallel y1, y2 with zero exponent (indeterminate)");
    throw DegenerateError("lemma31_closed_form: parallel y1, y2 with negative exponent (infinite)");
  }
  return std::exp(log_pref + expo * std::log(gap));
}

double log_hls_constant(double lambda, int d) {
  require_dim(d);
  if (!(lambda > 0.0 && lambda < d - 1.0)) {
    std::ostringstream os;
    os << "hls_constant(lambda=" << lambda << ", d=" << d << "): requires 0 < lambda < d-1";
    throw DomainError(os.str());
  }
  const double n = d - 1.0;
  return 0.5 * lambda * kLnPi + log_gamma(0.5 * (n - lambda)) - log_gamma(n - 0.5 * lambda) +
         (1.0 - lambda / n) * (log_gamma(n) - log_gamma(0.5 * n));
}
double hls_constant(double lambda, int d) { return std::exp(log_hls_constant(lambda, d)); }

double log_lemma21_constant(double beta, int d) {
  require_dim(d);
  const double lambda = 3.0 - d - 4.0 * beta;
  if (!(lambda >= -2.0 && lambda < 0.0))
    inadmissible("lemma21_constant", "lambda = 3-d-4beta in [-2, 0)", beta, d);
  return (2 * d - 5 + 4 * beta) * kLn2 - 0.5 * kLnPi + log_gamma(d - 2 + 2 * beta) +
         log_gamma(0.5 * d) - log_gamma(0.5 * (3 * d - 5) + 2 * beta);
}
double lemma21_constant(double beta, int d) { return std::exp(log_lemma21_constant(beta, d)); }

std::vector<ConstantEntry> constant_table(double beta, int d) {
  std::vector<ConstantEntry> out;
  auto push = [&](const char* name, auto log_fn) {
    try {
      const double lv = log_fn();
      out.push_back({name, std::exp(lv), lv, beta, d});
    } catch (const DomainError&) {
    }
  };
  push("W", [&] { return log_W(beta, d); });
  push("W_pp", [&] { return log_W_pp(beta, d); });
  push("C", [&] { return log_C_radial(beta, d); });
  push("C_pp", [&] { return log_C_radial_pp(beta, d); });
  push("radial_factor", [&] { return log_radial_factor(beta, d); });
  push("lemma21", [&] { return log_lemma21_constant(beta, d); });
  push("hls", [&] { return log_hls_constant(3.0 - d - 4.0 * beta, d); });
  return out;
}

}  // namespace sharpwave

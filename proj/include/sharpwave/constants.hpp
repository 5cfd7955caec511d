#pragma once

// Closed-form sharp constants. Each constant has a log-space form (the one
// that is actually computed) and a value form.

#include <string>
#include <vector>

#include "sharpwave/numerics.hpp"

namespace sharpwave {

/// Sharp constant of the (+-) bilinear estimate, beta > (1-d)/4.
double log_W(double beta, int d);
double W(double beta, int d);

/// Same constant at beta = 0 in its duplication-formula form
/// 2^{(5-7d)/2} pi^{(2-5d)/2} / Gamma(d/2).
double W0_duplication(int d);

/// Sharp constant of the (++) bilinear estimate; finite for every beta.
double log_W_pp(double beta, int d);
double W_pp(double beta, int d);

/// Radial (+-) constant, beta > beta_d.
double log_C_radial(double beta, int d);
double C_radial(double beta, int d);

/// Radial (++) constant, beta > (2-d)/2.
double log_C_radial_pp(double beta, int d);
double C_radial_pp(double beta, int d);

/// Factor K with I_beta(f, g) = K ||f||^2 ||g||^2 (norms at (d-1)/4 + beta)
/// for radial data, beta > (2-d)/2.
double log_radial_factor(double beta, int d);
double radial_factor(double beta, int d);

/// Closed form of the delta-constrained integral I_beta(y1, y2):
/// (2 pi)^{(d-1)/2} Gamma((d-1)/2 + 2b)/Gamma(d-1+2b) (|y1||y2| - y1.y2)^{(d-3)/2 + 2b}.
/// Returns 0 for parallel y1, y2 when the exponent is positive; throws
/// DegenerateError when it is not.
double lemma31_closed_form(const Vec& y1, const Vec& y2, double beta, int d);

/// Sharp HLS constant on S^{d-1}, 0 < lambda < d-1.
double log_hls_constant(double lambda, int d);
double hls_constant(double lambda, int d);

/// Constant of the bound H_lambda(g, g) <= K |int g|^2 for lambda = 3-d-4 beta in [-2, 0).
double log_lemma21_constant(double beta, int d);
double lemma21_constant(double beta, int d);

/// Named row of a constants table.
struct ConstantEntry {
  std::string name;
  double value;
  double log_value;
  double beta;
  int d;
};

/// Every constant defined at (beta, d); inadmissible ones are skipped.
std::vector<ConstantEntry> constant_table(double beta, int d);

}  // namespace sharpwave

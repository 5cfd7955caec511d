#pragma once

// Verification suites built on the functionals: theorem ratios, the radial
// and sphere corollaries, the blow-up scan and the extremiser search.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sharpwave/functionals.hpp"

namespace sharpwave {

/// How a computed value is compared with its reference.
enum class Relation {
  Equal,   // |c - r| / |r| <= tol
  AtMost,  // c <= r (1 + tol)
  AtLeast  // c >= r (1 - tol)
};

std::string to_string(Relation r);
Relation parse_relation(const std::string& s);

struct Reference {
  double value = 0.0;
  std::string provenance;  // "closed-form", "derived", "bound", ...
  bool operator==(const Reference&) const = default;
};

struct VerificationReport {
  std::string name;
  std::string status = "pass";  // pass | fail | inconclusive
  bool passed = true;
  std::int64_t runtime_ms = 0;
  std::map<std::string, std::string> inputs;
  std::map<std::string, double> computed;
  std::map<std::string, Reference> reference;
  std::map<std::string, double> rel_errors;
  std::map<std::string, double> tolerances;
  std::map<std::string, double> stderrs;
  std::map<std::string, std::string> relations;
  std::vector<std::string> notes;

  /// Records a value with no check attached.
  void record(const std::string& key, double value) { computed[key] = value; }
  /// Adds a check; passed/status follow. stderr_ widens the tolerance to
  /// 3 standard errors (relative to the reference).
  void check(const std::string& key, double value, const Reference& ref, Relation rel, double tol,
             double stderr_ = 0.0);
  void mark_inconclusive(const std::string& why);

  bool operator==(const VerificationReport&) const = default;
};

struct ScanResult {
  std::string name;
  std::vector<double> params;  // delta values
  std::vector<double> values;
  double slope = 0.0;
  double slope_stderr = 0.0;
  double theory_slope = 0.0;
  int fit_points = 0;
};

struct ExperimentOptions {
  FunctionalOptions fopt;
  double tol = 1e-3;
};

/// True when f and g are in the extremiser family with f = lambda g
/// (same a and b; c and the scale may differ).
bool same_extremiser_family(const FourierData& f, const FourierData& g);

/// ratio = lhs / (W_mode I_beta); equality enforced on the extremiser family;
/// rescaling f, g by 3 must leave the ratio unchanged.
VerificationReport verify_theorem(const Setting& setting, const FourierData& f, const FourierData& g,
                                  SignMode mode, const ExperimentOptions& opt = {});

/// lhs <= C_mode ||f||^2 ||g||^2 (norms at (d-1)/4 + beta), radial data.
VerificationReport verify_radial_corollary(const Setting& setting, const FourierData& f,
                                           const FourierData& g, SignMode mode,
                                           const ExperimentOptions& opt = {});

/// H_lambda(g, g) <= K (int g)^2 for each trial, lambda = 3-d-4 beta in [-2, 0).
/// g = 1 is always added as the equality witness; non-constant trials must be
/// strictly below the bound when lambda > -2.
VerificationReport verify_lemma21(const Setting& setting, const std::vector<SphericalFunction>& trials,
                                  std::uint64_t seed, const ExperimentOptions& opt = {});

/// H_lambda(T f, T g) <= hls ||T f||_p ||T g||_p for beta in (beta_d, (3-d)/4).
VerificationReport verify_hls(const Setting& setting, const FourierData& f, const FourierData& g,
                              const ExperimentOptions& opt = {});

/// Both branches of the sphere corollary, beta in (beta_d, (5-d)/4].
VerificationReport verify_corollary14(const Setting& setting, const FourierData& f, const FourierData& g,
                                      const ExperimentOptions& opt = {});

/// The two model integrals of the blow-up argument, with p = 2(d-1)/(3d-5+4 beta):
///   I1 = (int (1-t^2)^{(d-3)/2} (1-(1-delta)t)^{-(d-1)} dt)^{1/p},
///   I2 =  int (1-t^2)^{(d-3)/2} (1-(1-delta)t)^{-(d-1)/p} dt.
double scan_I1(const Setting& setting, double delta);
double scan_I2(const Setting& setting, double delta);
/// int_0^1 (1-t^2)^{(d-3)/2} (1-(1-delta)t)^{-sigma} dt.
double scan_model_integral(int d, double sigma, double delta);

struct CounterexampleOutcome {
  ScanResult i1, i2, aux;
  VerificationReport report;
};

/// Fits log-log slopes of I1, I2 (OLS on the 5 smallest deltas) and checks
/// the monotone blow-up of I1/I2, plus the sigma = d-1 auxiliary slope.
CounterexampleOutcome counterexample_scan(const Setting& setting, const std::vector<double>& deltas,
                                          const ExperimentOptions& opt = {});

/// Least-squares slope of log(values) against log(params) over the n_fit
/// smallest params.
ScanResult fit_loglog(std::string name, std::vector<double> params, std::vector<double> values,
                      double theory, int n_fit = 5);

/// I_beta_numeric against the closed form on n_pairs random pairs; at d = 3,
/// beta = 0 every value must also equal 2 pi.
VerificationReport lemma31_suite(const Setting& setting, int n_pairs, int nodes, std::uint64_t seed,
                                 double tol = 1e-6);

/// Minkowski-form preservation, unit determinant and base-point mapping on
/// n random boosts, plus the pairing identity and |z| gap.
VerificationReport lorentz_suite(int d, int n, std::uint64_t seed);

/// C = W radial_factor, C' = W' radial_factor and the duplication form of
/// W(0, d) over d in [d_lo, d_hi] and a grid of admissible beta.
VerificationReport constant_identities_suite(int d_lo = 2, int d_hi = 8);

/// Radial search family r^{-1} e^{-e^{theta_0} r} (1 + sum_k theta_k (r/(1+r))^k).
FourierData search_family(int d, const std::vector<double>& theta);

struct SearchOptions {
  ExperimentOptions exp;
  double init_spread = 0.3;   // start: theta_k uniform in +-init_spread
  double step = 0.2;          // initial simplex size
  double size_tol = 1e-4;     // simplex convergence
  std::vector<double> start;  // explicit start point (overrides the seeded one)
};

/// Maximises lhs / (W_mode I_beta) over the search family by Nelder-Mead.
VerificationReport extremiser_search(const Setting& setting, SignMode mode, int n_params,
                                     std::uint64_t seed, int budget, const SearchOptions& opt = {});

}  // namespace sharpwave

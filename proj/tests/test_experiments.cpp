#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sharpwave/constants.hpp"
#include "sharpwave/experiments.hpp"

using namespace sharpwave;

TEST(Report, CheckRelations) {
  VerificationReport r;
  r.check("a", 1.0005, {1.0, "x"}, Relation::Equal, 1e-3);
  r.check("b", 0.5, {1.0, "x"}, Relation::AtMost, 0.0);
  r.check("c", 2.0, {1.0, "x"}, Relation::AtLeast, 0.0);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.status, "pass");
  EXPECT_EQ(r.rel_errors.at("b"), 0.0);
  r.check("d", 1.01, {1.0, "x"}, Relation::AtMost, 1e-3);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.status, "fail");
}

TEST(Report, StandardErrorWidensTolerance) {
  VerificationReport r;
  r.check("mc", 1.02, {1.0, "x"}, Relation::Equal, 1e-3, 0.01);  // 2 sigma
  EXPECT_TRUE(r.passed);
  r.check("mc2", 1.05, {1.0, "x"}, Relation::Equal, 1e-3, 0.01);  // 5 sigma
  EXPECT_FALSE(r.passed);
}

TEST(Report, NonFiniteFails) {
  VerificationReport r;
  r.check("nan", std::nan(""), {1.0, "x"}, Relation::AtMost, 1.0);
  EXPECT_FALSE(r.passed);
}

TEST(FitLogLog, ExactPowerLaw) {
  std::vector<double> p, v;
  for (int k = 1; k <= 8; ++k) {
    p.push_back(std::ldexp(1.0, -k));
    v.push_back(3.0 * std::pow(p.back(), -0.75));
  }
  const auto s = fit_loglog("x", p, v, -0.75);
  EXPECT_NEAR(s.slope, -0.75, 1e-12);
  EXPECT_NEAR(s.slope_stderr, 0.0, 1e-10);
  EXPECT_EQ(s.fit_points, 5);
  EXPECT_THROW(fit_loglog("x", {1, 2}, {1, 2}, 0.0), DomainError);
}

TEST(ScanIntegrals, ModelIntegralD3ClosedForm) {
  // d = 3: int_0^1 (1 - c t)^{-sigma} dt = (1 - (1-c)^{1-sigma}) / (c (1 - sigma)), c = 1 - delta
  for (double sigma : {0.5, 1.5, 2.0, 2.5})
    for (double delta : {1e-2, 1e-3, 1e-4}) {
      const double c = 1 - delta;
      const double exact = (1 - std::pow(1 - c, 1 - sigma)) / (c * (1 - sigma));
      EXPECT_NEAR(scan_model_integral(3, sigma, delta) / exact, 1.0, 1e-10) << sigma << " " << delta;
    }
}

TEST(ScanIntegrals, ModelIntegralD4AgainstSubstitution) {
  // d = 4: weight (1 - t^2)^{1/2}; compare with a fine midpoint rule in t = sin(theta)
  const double sigma = 1.7, delta = 5e-3;
  const int n = 400000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double th = (i + 0.5) * (0.5 * oracle::pi) / n;
    const double t = std::sin(th);
    s += std::cos(th) * std::cos(th) * std::pow(1 - (1 - delta) * t, -sigma);
  }
  s *= 0.5 * oracle::pi / n;
  EXPECT_NEAR(scan_model_integral(4, sigma, delta) / s, 1.0, 1e-6);
}

TEST(VerifyTheorem, FoschiEquality) {
  const auto r = verify_theorem(Setting(3, 0.0), foschi_data(3), foschi_data(3), SignMode::PlusMinus);
  EXPECT_EQ(r.status, "pass");
  EXPECT_NEAR(r.computed.at("ratio_equality"), 1.0, 1e-6);
}

TEST(VerifyTheorem, GaussianStrict) {
  const auto r = verify_theorem(Setting(3, 0.0), gaussian_data(3), gaussian_data(3), SignMode::PlusMinus);
  EXPECT_EQ(r.status, "pass");
  EXPECT_LE(r.computed.at("ratio_bound"), 0.999);
}

TEST(VerifyTheorem, InadmissibleBeta) {
  EXPECT_THROW(verify_theorem(Setting(3, -0.5), foschi_data(3), foschi_data(3), SignMode::PlusMinus), DomainError);
}

TEST(VerifyLemma21, ConstantEqualityAndStrictTrial) {
  const int d = 3;
  const auto g = SphericalFunction::zonal(d, Vec::Unit(d, 0), [](double t) { return 1.0 + 0.5 * t; });
  const auto r = verify_lemma21(Setting(d, 0.15), {g}, 3);
  EXPECT_EQ(r.status, "pass");
  EXPECT_TRUE(r.computed.count("trial1.strict"));
  EXPECT_THROW(verify_lemma21(Setting(3, 0.9), {g}, 3), DomainError);
}

TEST(VerifyLemma21, BoundaryLambdaReportsOnly) {
  const int d = 3;
  const auto g = SphericalFunction::zonal(d, Vec::Unit(d, 0), [](double t) { return 1.0 + 0.5 * t; });
  const auto r = verify_lemma21(Setting(d, 0.5), {g}, 3);
  EXPECT_EQ(r.status, "pass");
  EXPECT_FALSE(r.computed.count("trial1.strict"));
  EXPECT_FALSE(r.notes.empty());
}

TEST(Suites, LorentzAndConstants) {
  EXPECT_EQ(lorentz_suite(3, 100, 1).status, "pass");
  EXPECT_EQ(constant_identities_suite(2, 8).status, "pass");
}

TEST(Suites, Lemma31Small) {
  const auto r = lemma31_suite(Setting(3, 0.0), 10, 16, 7);
  EXPECT_EQ(r.status, "pass");
  EXPECT_TRUE(r.computed.count("max_rel_error_vs_2pi"));
}

TEST(Search, FamilyStartsAtFoschiShape) {
  // theta = (0) gives e^{-r}/r exactly
  const auto f = search_family(3, {0.0});
  for (double r : {0.1, 1.0, 3.0}) EXPECT_NEAR(std::abs(f.profile(r)), std::exp(-r) / r, 1e-14);
}

TEST(SameFamily, IgnoresScaleAndC) {
  EXPECT_TRUE(same_extremiser_family(extremiser_data(3, -1, 0.2, 0.0), extremiser_data(3, -1, 0.2, 0.7)));
  EXPECT_FALSE(same_extremiser_family(extremiser_data(3, -1, 0.2, 0.0), extremiser_data(3, -1, 0.3, 0.0)));
  EXPECT_FALSE(same_extremiser_family(gaussian_data(3), gaussian_data(3)));
}

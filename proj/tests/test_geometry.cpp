#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sharpwave/constants.hpp"
#include "sharpwave/geometry.hpp"

using namespace sharpwave;

namespace {

double minkowski(const MinkowskiVector& a, const MinkowskiVector& b) { return a.t * b.t - a.x.dot(b.x); }

Vec gaussian_vec(int d, std::mt19937_64& gen) {
  std::normal_distribution<double> n;
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = n(gen);
  return v;
}

}  // namespace

TEST(Boost, PreservesMinkowskiForm) {
  std::mt19937_64 gen(1);
  for (int d = 2; d <= 5; ++d)
    for (int k = 0; k < 200; ++k) {
      Vec v = gaussian_vec(d, gen);
      v *= 0.95 / (1.0 + v.norm());
      const LorentzBoost L(v);
      const MinkowskiVector a{gaussian_vec(1, gen)[0], gaussian_vec(d, gen)};
      const MinkowskiVector b{gaussian_vec(1, gen)[0], gaussian_vec(d, gen)};
      const double before = minkowski(a, b), after = minkowski(boost_apply(L, a), boost_apply(L, b));
      EXPECT_NEAR(after, before, 1e-12 * (1.0 + std::abs(a.t * b.t) + a.x.norm() * b.x.norm()) * L.gamma * L.gamma);
      EXPECT_NEAR(boost_matrix(L).determinant(), 1.0, 1e-10);
    }
}

TEST(Boost, InverseUndoes) {
  Vec v(3);
  v << 0.3, -0.5, 0.6;
  const LorentzBoost L(v);
  const MinkowskiVector w{1.7, Vec::Constant(3, 0.4)};
  const auto back = boost_apply(L.inverse(), boost_apply(L, w));
  EXPECT_NEAR(back.t, w.t, 1e-13);
  EXPECT_NEAR((back.x - w.x).norm(), 0.0, 1e-13);
}

TEST(Boost, MapsRestPointToTarget) {
  Vec xi(4);
  xi << 0.5, -1.0, 0.25, 2.0;
  const double tau = 3.1;
  const auto img = boost_apply(boost_for(tau, xi), MinkowskiVector{std::sqrt(tau * tau - xi.squaredNorm()), Vec::Zero(4)});
  EXPECT_NEAR(img.t, tau, 1e-12 * tau);
  EXPECT_NEAR((img.x - xi).norm(), 0.0, 1e-12 * tau);
  EXPECT_THROW(boost_for(1.0, xi), DomainError);
}

TEST(DeltaEllipsoid, ConcentricCase) {
  // xi = 0: the ellipsoid is the sphere |x| = tau/2 and the delta has Jacobian 1/2
  for (int d = 2; d <= 5; ++d) {
    const double tau = 2.4;
    const double v = integrate_delta_ellipsoid([](const Vec&) { return 1.0; }, tau, Vec::Zero(d), 16);
    EXPECT_NEAR(v, 0.5 * oracle::sphere_area(d) * std::pow(tau / 2, d - 1), 1e-12) << d;
  }
}

TEST(DeltaEllipsoid, AdaptiveAgreesWithJacobi) {
  Vec xi(3);
  xi << 0.4, 0.1, -0.3;
  // the chart needs F invariant under rotations about xi
  auto F = [&](const Vec& x) { return std::exp(-x.squaredNorm()) * (1.0 + x.dot(xi)); };
  const double a = integrate_delta_ellipsoid(F, 1.5, xi, 64);
  const double b = integrate_delta_ellipsoid_adaptive(F, 1.5, xi);
  EXPECT_NEAR(a / b, 1.0, 1e-10);
}

TEST(DeltaEllipsoid, DoublingNodesStable) {
  Vec xi(4);
  xi << 0.4, 0.1, -0.3, 0.2;
  auto F = [](const Vec& x) { return 1.0 / (1.0 + x.squaredNorm()); };
  const double a = integrate_delta_ellipsoid(F, 1.5, xi, 48);
  const double b = integrate_delta_ellipsoid(F, 1.5, xi, 96);
  EXPECT_NEAR(a / b, 1.0, 1e-9);
}

TEST(IBetaNumeric, TwoPiInDimensionThree) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto [y1, y2] = random_pair(3, seed);
    EXPECT_NEAR(I_beta_numeric(y1, y2, 0.0, 3, 16) / (2 * oracle::pi), 1.0, 1e-8);
  }
}

TEST(IBetaNumeric, MatchesClosedForm) {
  for (int d = 2; d <= 5; ++d)
    for (double b : {0.0, 0.25, 0.5, (3.0 - d) / 4.0}) {
      const auto [y1, y2] = random_pair(d, 40 + d);
      const double closed = lemma31_closed_form(y1, y2, b, d);
      EXPECT_NEAR(I_beta_numeric(y1, y2, b, d, 16) / closed, 1.0, 1e-8) << d << " " << b;
    }
}

TEST(IBetaNumeric, NearParallelPairTakesAdaptivePath) {
  Vec y1(2), y2(2);
  y1 << 1.0, 0.0;
  y2 << 0.8 * std::cos(0.0015), 0.8 * std::sin(0.0015);
  const auto r = I_beta_numeric_detail(y1, y2, 0.25, 2, 16);
  EXPECT_NEAR(r.value / lemma31_closed_form(y1, y2, 0.25, 2), 1.0, 1e-6);
}

TEST(IBetaNumeric, BoostFrameInvariance) {
  // null vectors (|y|, y) boosted stay null; the integral depends only on their pairing
  for (int d = 2; d <= 5; ++d) {
    const auto [y1, y2] = random_pair(d, 90 + d);
    Vec v = Vec::Zero(d);
    v[0] = 0.4;
    v[d - 1] = -0.3;
    const LorentzBoost L(v);
    const Vec z1 = boost_apply(L, {y1.norm(), y1}).x, z2 = boost_apply(L, {y2.norm(), y2}).x;
    for (double b : {0.0, 0.5}) {
      const double a = I_beta_numeric(y1, y2, b, d, 16), c = I_beta_numeric(z1, z2, b, d, 16);
      EXPECT_NEAR(a / c, 1.0, 1e-8) << d << " " << b;
    }
  }
}

TEST(IBetaNumeric, ParallelPairsRejected) {
  Vec y(3);
  y << 1, 2, 3;
  EXPECT_THROW(I_beta_numeric(y, 2.0 * y, 0.0, 3, 16), DegenerateError);
}

TEST(Lemma32, AntipodalCase) {
  Vec e1 = Vec::Unit(3, 0);
  Vec x(3);
  x << 0.2, 0.7, -0.1;
  const auto rec = lemma32_check(e1, -e1, x);
  EXPECT_NEAR(rec.z_norm_gap, 0.0, 1e-14);
  EXPECT_NEAR((rec.omega_star + e1).norm(), 0.0, 1e-12);
  EXPECT_NEAR(rec.lhs, rec.predicted, 1e-12);
}

TEST(Lemma32, RandomIdentity) {
  std::mt19937_64 gen(5);
  for (int d = 2; d <= 5; ++d)
    for (int k = 0; k < 250; ++k) {
      const auto [y1, y2] = random_pair(d, gen());
      const auto rec = lemma32_check(y1, y2, gaussian_vec(d, gen));
      const double scale = y1.norm() * y2.norm();
      EXPECT_NEAR(rec.lhs, rec.predicted, 1e-10 * scale);
      EXPECT_NEAR(rec.z_norm_gap, 0.0, 1e-10 * scale);
    }
}

TEST(Lemma32, OmegaStarMaximisesPairing) {
  const auto [y1, y2] = random_pair(3, 77);
  const auto best = lemma32_check(y1, y2, lemma32_check(y1, y2, Vec::Unit(3, 0)).omega_star);
  std::mt19937_64 gen(3);
  for (int k = 0; k < 100; ++k) EXPECT_LE(lemma32_check(y1, y2, gaussian_vec(3, gen)).lhs, best.lhs + 1e-12);
}

TEST(RandomPair, AngleBoundAndDeterminism) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto [y1, y2] = random_pair(2, s);
    EXPECT_GE(std::acos(std::clamp(y1.dot(y2) / (y1.norm() * y2.norm()), -1.0, 1.0)), 1e-3);
  }
  EXPECT_TRUE(random_pair(4, 9).first == random_pair(4, 9).first);
}

TEST(EqualityResidual, ExtremiserGaussianAndScaling) {
  EXPECT_LE(equality_condition_residual(extremiser_data(3, -1.0, 0.3, 0.2), extremiser_data(3, -1.0, 0.3, 0.2), 500, 1),
            1e-10);
  EXPECT_GT(equality_condition_residual(gaussian_data(3), gaussian_data(3), 500, 1), 0.1);
  const auto f = foschi_data(3);
  const double a = equality_condition_residual(f, f, 200, 4);
  const double b = equality_condition_residual(f.scaled(7.5), f.scaled(7.5), 200, 4);
  EXPECT_NEAR(a, b, 1e-15);
}

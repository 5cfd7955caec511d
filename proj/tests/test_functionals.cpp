#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sharpwave/functionals.hpp"

using namespace sharpwave;

namespace {

Vec unit(int d, std::initializer_list<double> v) {
  Vec w(d);
  int i = 0;
  for (double x : v) w[i++] = x;
  return w.normalized();
}

Eigen::MatrixXd rotation(int d, double angle) {
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(d, d);
  R(0, 0) = R(1, 1) = std::cos(angle);
  R(0, 1) = -std::sin(angle);
  R(1, 0) = std::sin(angle);
  return R;
}

}  // namespace

TEST(TBeta, FoschiD3Beta0) {
  const auto t = T_beta(foschi_data(3), Setting(3, 0.0));
  const double expected = std::pow(2 * oracle::pi, -3) / 4.0;
  EXPECT_NEAR(t(unit(3, {0.3, 0.1, 0.9})), expected, 1e-14);
  const auto tn = T_beta_numeric(foschi_data(3), Setting(3, 0.0));
  EXPECT_NEAR(tn(unit(3, {0.3, 0.1, 0.9})) / expected, 1.0, 1e-10);
}

TEST(TBeta, TiltedExtremiserAgainstGammaIntegral) {
  // |f^|^2 = e^{-2 r (1 - b t)} / r^2, m = (3d-3)/2 + 2 beta
  for (auto [d, beta] : {std::pair{3, 0.0}, {4, -0.3}, {3, -0.1}, {5, 0.25}}) {
    const double b1 = 0.35, m = 0.5 * (3 * d - 3) + 2 * beta;
    const auto f = extremiser_data(d, -1.0, b1, 0.0);
    const auto closed = T_beta(f, Setting(d, beta));
    const auto numeric = T_beta_numeric(f, Setting(d, beta));
    for (double t : {-0.9, -0.2, 0.4, 0.95}) {
      Vec w = Vec::Zero(d);
      w[0] = t;
      w[1] = std::sqrt(1 - t * t);
      const double expected = std::pow(2 * oracle::pi, -d) * oracle::gamma_moment(m - 2, 2 * (1 - b1 * t));
      EXPECT_NEAR(closed(w) / expected, 1.0, 1e-12) << d << " " << beta << " " << t;
      EXPECT_NEAR(numeric(w) / expected, 1.0, 1e-9) << d << " " << beta << " " << t;
    }
  }
}

TEST(TBeta, DivergentRayIntegralIsRejected) {
  // extremisers need 2 - m < 1
  EXPECT_THROW(T_beta(extremiser_data(2, -1.0, 0.2, 0.0), Setting(2, -0.3)), DomainError);
}

TEST(HLambda, ConstantsMatchRieszEnergy) {
  for (int d = 2; d <= 5; ++d)
    for (double lam : {-2.0, -1.0, -0.3, 0.4}) {
      if (!(lam < d - 1.0)) continue;
      const auto one = SphericalFunction::constant(d, 1.0);
      const Estimate h = H_lambda(one, one, lam);
      EXPECT_EQ(h.stderr_, 0.0);
      EXPECT_NEAR(h.value / oracle::riesz_energy_of_one(d, lam), 1.0, 1e-9) << d << " " << lam;
    }
}

TEST(HLambda, MonteCarloAgreesWithinThreeSigma) {
  const int d = 3;
  const auto g = SphericalFunction::zonal(d, Vec::Unit(d, 0), [](double t) { return 1.0 + 0.5 * t; });
  const auto one = SphericalFunction::constant(d, 1.0);
  for (double lam : {-1.0, 0.5}) {
    const Estimate q = H_lambda(g, one, lam);
    const Estimate mc = H_lambda_mc(g, one, lam, 200000, 3);
    EXPECT_GT(mc.stderr_, 0.0);
    EXPECT_LE(std::abs(q.value - mc.value), 3.0 * mc.stderr_) << lam;
  }
}

TEST(HLambda, RotationInvariance) {
  const int d = 4;
  const Vec axis = unit(d, {1.0, 0.0, 0.0, 0.0});
  auto profile = [](double t) { return std::exp(t) + 0.2 * t * t; };
  const auto g = SphericalFunction::zonal(d, axis, profile);
  const Eigen::MatrixXd R = rotation(d, 0.7);
  const auto gr = SphericalFunction::zonal(d, R * axis, profile);
  const double a = H_lambda(g, g, -1.0).value, b = H_lambda(gr, gr, -1.0).value;
  EXPECT_NEAR(a / b, 1.0, 1e-12);
}

TEST(HLambda, Symmetric) {
  const int d = 3;
  const auto g1 = SphericalFunction::zonal(d, Vec::Unit(d, 0), [](double t) { return 1.0 + t; });
  const auto g2 = SphericalFunction::zonal(d, Vec::Unit(d, 0), [](double t) { return std::exp(-t); });
  EXPECT_NEAR(H_lambda(g1, g2, 0.7).value / H_lambda(g2, g1, 0.7).value, 1.0, 1e-12);
}

TEST(FunkHecke, ConstantKernelMoment) {
  for (int d = 2; d <= 5; ++d)
    for (double kappa : {0.0, 0.5, 1.25}) {
      const double v = zonal_pair_funk_hecke(d, [](double) { return 1.0; }, [](double) { return 1.0; }, kappa, 40);
      const double expected = oracle::riesz_energy_of_one(d, -2 * kappa) / std::pow(2.0, kappa);
      EXPECT_NEAR(v / expected, 1.0, 1e-10) << d << " " << kappa;
    }
}

TEST(LpNorm, Constants) {
  for (int d = 2; d <= 5; ++d) {
    const Estimate n = lp_sphere_norm(SphericalFunction::constant(d, 2.0), 1.5);
    EXPECT_NEAR(n.value, 2.0 * std::pow(oracle::sphere_area(d), 1 / 1.5), 1e-12);
  }
}

TEST(LpNorm, ZonalAgainstMonteCarlo) {
  const int d = 3;
  auto prof = [](double t) { return std::exp(t); };
  const auto z = SphericalFunction::zonal(d, Vec::Unit(d, 0), prof);
  const auto g = SphericalFunction::general(d, [prof](const Vec& w) { return prof(w[0]); });
  // int_{S^2} e^{2t} = 2 pi (e^2 - e^{-2}) / 2
  const double exact = std::sqrt(oracle::pi * (std::exp(2.0) - std::exp(-2.0)));
  EXPECT_NEAR(lp_sphere_norm(z, 2.0).value / exact, 1.0, 1e-12);
  FunctionalOptions opt;
  opt.mc_samples = 100000;
  const Estimate mc = lp_sphere_norm(g, 2.0, opt);
  EXPECT_LE(std::abs(mc.value - exact), 3.0 * mc.stderr_);
}

TEST(IBeta, FoschiD3Beta0IsPiSquared) {
  // (4 pi int e^{-2r} r dr)^2
  const auto f = foschi_data(3);
  const Setting s(3, 0.0);
  EXPECT_NEAR(I_beta(f, f, s).value / (oracle::pi * oracle::pi), 1.0, 1e-11);
  EXPECT_NEAR(I_beta(f, f, s, IBetaRoute::FunkHecke).value / (oracle::pi * oracle::pi), 1.0, 1e-9);
}

TEST(IBeta, RoutesAgree) {
  for (auto [d, beta] : {std::pair{3, 0.0}, {4, -0.3}, {3, 0.3}, {2, 0.25}}) {
    const Setting s(d, beta);
    const auto f = extremiser_data(d, -1.0, 0.3, 0.0);
    const auto g = extremiser_data(d, -1.2, 0.3, 0.1);
    const double a = I_beta(f, g, s, IBetaRoute::FunkHecke).value;
    const double b = I_beta(f, g, s, IBetaRoute::HlsTrick).value;
    EXPECT_NEAR(a / b, 1.0, 1e-8) << d << " " << beta;
  }
}

TEST(IBeta, SymmetricInArguments) {
  const Setting s(3, 0.1);
  const auto f = extremiser_data(3, -1.0, 0.3, 0.0);
  const auto g = gaussian_data(3);
  EXPECT_NEAR(I_beta(f, g, s).value / I_beta(g, f, s).value, 1.0, 1e-10);
}

TEST(IBeta, RadialDataFactorise) {
  // radial data: I = (int |phi|^2 r^m dr)^2 * int int (1 - w1.w2)^k dw1 dw2
  const int d = 4;
  const double b = 0.2;
  const auto f = gaussian_data(d);
  const double m = 0.5 * (d - 1) + 2 * b + d - 1;
  const double radial = 0.5 * std::tgamma(0.5 * (m + 1)) / std::pow(2.0, 0.5 * (m + 1));  // int e^{-2r^2} r^m
  // angular: int int (1 - w1.w2)^{(d-3)/2 + 2b} = |S^{d-1}| |S^{d-2}| int (1-t^2)^{(d-3)/2} (1-t)^{k} dt
  const double k = 0.5 * (d - 3) + 2 * b;
  const double angular = oracle::sphere_distance_moment(d, 2 * k) / std::pow(2.0, k) * oracle::sphere_area(d);
  EXPECT_NEAR(I_beta(f, f, Setting(d, b)).value / (radial * radial * angular), 1.0, 1e-10);
}

TEST(IBeta, BelowThresholdThrows) { EXPECT_THROW(I_beta(foschi_data(3), foschi_data(3), Setting(3, -0.5)), DomainError); }

TEST(Bipolar, GaussianMass) {
  for (int d = 2; d <= 5; ++d) {
    const double v = bipolar_integral([](double r, double) { return std::exp(-r * r); }, 0.7, d, 1.0, 64);
    EXPECT_NEAR(v / std::pow(oracle::pi, 0.5 * d), 1.0, 1e-9) << d;
  }
}

TEST(Bipolar, JacobianVanishesOutsideTriangle) {
  EXPECT_EQ(bipolar_jacobian(1.0, 3.0, 1.0, 3), 0.0);
  EXPECT_GT(bipolar_jacobian(1.0, 1.5, 1.0, 3), 0.0);
}

TEST(Lhs, FoschiD3Beta0) {
  const auto f = foschi_data(3);
  const double expected = std::pow(2.0, -7) * std::pow(oracle::pi, -5);
  EXPECT_NEAR(lhs_norm_sq(f, f, Setting(3, 0.0), SignMode::PlusMinus) / expected, 1.0, 1e-6);
  EXPECT_NEAR(lhs_norm_sq(f, f, Setting(3, 0.0), SignMode::PlusPlus) / expected, 1.0, 1e-6);
}

TEST(Lhs, ScalesQuadratically) {
  const auto f = gaussian_data(3);
  const auto g = foschi_data(3);
  const Setting s(3, 0.25);
  const double a = lhs_norm_sq(f, g, s, SignMode::PlusMinus);
  const double b = lhs_norm_sq(f.scaled(2.0), g.scaled(Complex(0, 3)), s, SignMode::PlusMinus);
  EXPECT_NEAR(b / a, 36.0, 36e-9);
}

TEST(Lhs, RejectsNonRadialAndInadmissible) {
  const auto f = foschi_data(3);
  EXPECT_THROW(lhs_norm_sq(tilted_gaussian_data(3), f, Setting(3, 0.0), SignMode::PlusMinus), UnsupportedData);
  EXPECT_THROW(lhs_norm_sq(f, f, Setting(3, -0.5), SignMode::PlusMinus), DomainError);
  EXPECT_THROW(lhs_norm_sq(f, f, Setting(3, -0.5), SignMode::PlusPlus), DomainError);
}

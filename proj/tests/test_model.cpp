#include <gtest/gtest.h>

#include <cmath>

#include "sharpwave/model.hpp"

using namespace sharpwave;

TEST(Setting, Thresholds) {
  EXPECT_DOUBLE_EQ(Setting(2, 0.1).beta_d(), 0.0);
  EXPECT_DOUBLE_EQ(Setting(3, 0.0).beta_d(), -0.5);
  EXPECT_DOUBLE_EQ(Setting(5, 0.0).beta_d(), -1.0);
  EXPECT_TRUE(Setting(3, -0.4).admissible_sharp());
  EXPECT_FALSE(Setting(3, -0.5).admissible_sharp());
  EXPECT_FALSE(Setting(4, -0.75).admissible_inequality());
  EXPECT_DOUBLE_EQ(Setting(3, 0.25).riesz_lambda(), -1.0);
  EXPECT_THROW(Setting(1, 0.0), DomainError);
}

TEST(Extremiser, PointValue) {
  CVec b(3);
  b << Complex(0.2, 0.1), Complex(-0.1, 0.0), Complex(0.0, 0.3);
  ExtremiserParams p(Complex(-1.5, 0.4), b, Complex(0.3, -0.2), Complex(2.0, 0.0));
  Vec xi(3);
  xi << 0.3, -1.1, 0.7;
  const double r = xi.norm();
  Complex bx = b(0) * xi(0) + b(1) * xi(1) + b(2) * xi(2);
  const Complex expected = 2.0 * std::exp(Complex(-1.5, 0.4) * r + bx + Complex(0.3, -0.2)) / r;
  EXPECT_NEAR(std::abs(extremiser_eval(p, xi) - expected), 0.0, 1e-14 * std::abs(expected));
}

TEST(Extremiser, AdmissibilityEnforced) {
  CVec b = CVec::Zero(3);
  b(0) = 1.2;
  EXPECT_THROW(ExtremiserParams(Complex(-1.0, 0.0), b, 0.0), DomainError);
  EXPECT_THROW(ExtremiserParams(Complex(0.5, 0.0), CVec::Zero(3), 0.0), DomainError);
}

TEST(Sobolev, FoschiHalfNormD3) {
  // (2 pi)^{-3} int e^{-2r} r^{-2} r 4 pi r^2 dr = 4 pi / (4 (2 pi)^3)
  const double v = sobolev_norm_sq(foschi_data(3), 0.5, Setting(3, 0.0));
  EXPECT_NEAR(v, 1.0 / (8 * kPi * kPi), 1e-12);
}

TEST(Sobolev, GaussianD2) {
  // (2 pi)^{-2} int e^{-2r^2} r^{2s} 2 pi r dr = (2 pi)^{-1} Gamma(s+1) 2^{-s-2}... computed by hand for s = 1:
  // int e^{-2r^2} r^3 dr = 1/8, so (2 pi)^{-2} 2 pi / 8
  EXPECT_NEAR(sobolev_norm_sq(gaussian_data(2), 1.0, Setting(2, 0.0)), 1.0 / (16 * kPi), 1e-12);
}

TEST(Sobolev, AxialExtremiserMatchesDirectSum) {
  // b along e1: |f^|^2 = e^{2(-r + b r t)} / r^2; zonal integral in closed form
  // (2 pi)^{-d} |S^{d-2}| int (1-t^2)^{(d-3)/2} int r^{2s+d-3} e^{-2r(1 - b t)} dr dt
  const int d = 3;
  const double b1 = 0.4, s = 0.5;
  const double exact_d3 = std::pow(2 * kPi, -3) * 2 * kPi *
                          // int_{-1}^{1} Gamma(2s+d-2)/(2(1-b t))^{2s+d-2} dt with 2s+d-2 = 2
                          (1.0 / 4.0) * (1.0 / b1) * (1.0 / (1.0 - b1) - 1.0 / (1.0 + b1));
  EXPECT_NEAR(sobolev_norm_sq(extremiser_data(d, -1.0, b1, 0.0), s, Setting(d, 0.0)), exact_d3, 1e-10 * exact_d3);
}

TEST(WaveSplit, ZeroVelocityHalves) {
  const auto u0 = gaussian_data(3);
  const auto u1 = FourierData::radial(3, [](double) { return Complex(0.0); }, 0.0, 1.0, "zero");
  const auto [fp, fm] = wave_split(u0, u1);
  Vec xi = Vec::Constant(3, 0.4);
  EXPECT_NEAR(std::abs(fp(xi) - 0.5 * u0(xi)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(fm(xi) - 0.5 * u0(xi)), 0.0, 1e-15);
}

TEST(WaveSplit, RecoversData) {
  const auto u0 = gaussian_data(2);
  const auto u1 = foschi_data(2);
  const auto [fp, fm] = wave_split(u0, u1);
  Vec xi(2);
  xi << 0.3, -0.8;
  const double r = xi.norm();
  EXPECT_NEAR(std::abs(fp(xi) + fm(xi) - u0(xi)), 0.0, 1e-14);
  // f+ - f- = -i u1 / |xi|
  EXPECT_NEAR(std::abs(fp(xi) - fm(xi) + Complex(0, 1) * u1(xi) / r), 0.0, 1e-14);
}

TEST(Presets, ParseAndReject) {
  EXPECT_EQ(preset_data("foschi", 3).kind(), FourierData::Kind::Extremiser);
  EXPECT_TRUE(preset_data("gaussian", 4).is_radial());
  EXPECT_FALSE(preset_data("tilted_gaussian", 3).is_radial());
  EXPECT_FALSE(preset_data("extremiser(-1,0.3,0)", 3).is_radial());
  EXPECT_FALSE(preset_data("prop13(0.1)", 3).is_radial());
  EXPECT_THROW(preset_data("lorentzian", 3), std::invalid_argument);
  EXPECT_THROW(preset_data("extremiser(-1,0.3)", 3), std::invalid_argument);
  EXPECT_THROW(preset_data("extremiser(-1,1.3,0)", 3), DomainError);
}

TEST(FourierData, ScalingAndDilation) {
  const auto f = foschi_data(3);
  Vec xi = Vec::Constant(3, 0.5);
  EXPECT_NEAR(std::abs(f.scaled(Complex(0, 2))(xi) - Complex(0, 2) * f(xi)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f.dilated(2.0)(xi) - f(xi / 2.0)), 0.0, 1e-15);
}

TEST(FourierData, RadialCheckedRejectsDivergentNorm) {
  // |phi|^2 r^{(3d-3)/2 + 2 beta} ~ r^{-2 sing + 3 + 2 beta} at d = 3; sing = 2.5, beta = 0 diverges
  EXPECT_THROW(FourierData::radial_checked(Setting(3, 0.0), [](double r) { return Complex(std::pow(r, -2.5)) * std::exp(-r); },
                                           2.5, 1.0),
               DomainError);
}

TEST(Sobolev, LogDivergenceAtOriginThrows) {
  // bounded profile, radial weight r^{2s+d-1} = r^{-1}
  const auto f = FourierData::radial(3, [](double r) { return Complex(std::exp(-r)); }, 0.0, 1.0, "bump");
  EXPECT_THROW(sobolev_norm_sq(f, -1.5, Setting(3, 0.0)), AccuracyError);
}

TEST(Sobolev, DilationScaling) {
  // phi(r / mu) multiplies the norm^2 by mu^{2s+d}
  const auto g = gaussian_data(3);
  const double s = 0.75, mu = 2.0;
  const double base = sobolev_norm_sq(g, s, Setting(3, 0.0));
  const double dil = sobolev_norm_sq(g.dilated(mu), s, Setting(3, 0.0));
  EXPECT_NEAR(dil / base, std::pow(mu, 2 * s + 3), 1e-9 * std::pow(mu, 2 * s + 3));
}

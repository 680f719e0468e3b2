#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qlat/bands.hpp"
#include "qlat/coupling.hpp"
#include "qlat/errors.hpp"
#include "qlat/polarizability.hpp"

using namespace qlat;

namespace {

const AtomSpec kCs = AtomSpec::cesium_d2();

OscillatorState ho(HalfInt m, std::vector<Vec3> axes, std::vector<int> quanta, double width, Vec3 center = Vec3::Zero()) {
  return OscillatorState{m, center, axes, quanta, std::vector<double>(axes.size(), width)};
}

}  // namespace

TEST(Beta24, ClosedFormMatchesClebschGordanSum) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> logd(2.5, 6.0);
  for (int k = 0; k < 50; ++k) {
    const double delta = (k % 2 ? 1.0 : -1.0) * std::pow(10.0, logd(rng));
    EXPECT_NEAR(beta_24(kCs, delta), oracle::beta24(delta), 1e-10 * std::abs(oracle::beta24(delta)) + 1e-16);
  }
  EXPECT_NEAR(beta_24(kCs, -2000.0), oracle::beta24(-2000.0), 1e-12);
}

TEST(Beta24, AsymptoteAndBracketCancellation) {
  EXPECT_NEAR(std::abs(beta_24(kCs, -1e6)) * 1e6, std::sqrt(7.0) / 6.0 * 10.0, 0.01 * 4.41);
  EXPECT_NEAR(std::abs(beta_24(kCs, -1e6, true)) * 1e6, std::sqrt(7.0) / 6.0 * 10.0, 1e-9);
  // 16 - 21 D/(D + 5d) + 5 D/(D + 9d) -> 600/D: the leading terms cancel.
  const double delta = -5e7;
  EXPECT_NEAR(beta_24(kCs, delta) * 360.0 / std::sqrt(7.0) * delta, 600.0, 1e-3);
}

TEST(Beta24, PolesAndDomain) {
  EXPECT_THROW(beta_24(kCs, -50.0), PoleError);
  EXPECT_THROW(beta_24(kCs, -90.0), PoleError);
  EXPECT_THROW(beta_24(kCs, 0.0), InputError);
  EXPECT_THROW(beta_24(AtomSpec::spin_half(), -2000.0), InputError);
}

TEST(ScatteringRate, LinPerpLinIsUniform) {
  const LatticeGeometry g = lin_angle_lin(M_PI / 2);
  for (int i = 0; i < 20; ++i) EXPECT_NEAR(scattering_rate(g, 100.0, -2000.0, Vec3(0, 0, 0.3 * i)), 0.1, 1e-15);
}

TEST(ScatteringRate, TwoDimensionalOrigin) {
  const LatticeGeometry g = three_beam_2d(M_PI / 3, 0.0, 0.0);
  EXPECT_NEAR(scattering_rate(g, 10.0, -1000.0, Vec3::Zero()), 4.5 * 10.0 / 1000.0, 1e-15);
  EXPECT_NEAR(scattering_rate(g, 10.0, -2000.0, Vec3::Zero()), 0.5 * scattering_rate(g, 10.0, -1000.0, Vec3::Zero()),
              1e-16);
}

TEST(ScatteringRate, WidthAveragingAgreesWithQuadrature) {
  const LatticeGeometry g = lin_angle_lin(0.7);
  const double w = 0.2, z = 0.3;
  double sum = 0.0, norm = 0.0;
  for (int k = -600; k <= 600; ++k) {
    const double s = k * 0.01, p = std::exp(-0.5 * s * s / (w * w));
    sum += p * field_at(g, Vec3(0, 0, z + s)).squaredNorm();
    norm += p;
  }
  EXPECT_NEAR(scattering_rate(g, 1.0, -1.0, Vec3(0, 0, z), w), sum / norm, 1e-10);
}

TEST(RamanDm2, KappaIsNearlyDetuningIndependent) {
  for (double delta : {-1e3, -2e3, -1e4, -1e5}) {
    const CouplingReport r = raman_dm2(200.0, kCs, delta);
    EXPECT_NEAR(r.kappa / r.eta, 4.41, 0.03 * 4.41) << delta;
  }
}

TEST(RamanDm2, KappaPrimeAtFiveHundred) { EXPECT_NEAR(raman_dm2(500.0, kCs, -2000.0).kappa_prime, 43.0, 0.05 * 43.0); }

TEST(RamanDm2, KappaPrimeQuarterPowerLaw) {
  for (double u1 : {50.0, 100.0, 200.0, 300.0, 500.0}) {
    const double k = raman_dm2(u1, kCs, -2000.0).kappa_prime;
    EXPECT_NEAR(k / (9.1 * std::pow(u1, 0.25)), 1.0, 0.03) << u1;
  }
}

TEST(RamanDm2, PrefactorClosure) {
  // U_R = 2 U1 |beta| eta, gamma_s = 2 U1 / |Delta|, (dk z0)^2 = (11/15) eta^2, eta = (4 sqrt(U1/3))^(-1/2).
  const double u1 = 300.0;
  const CouplingReport r = raman_dm2(u1, kCs, -2000.0, {11.0 / 15.0, true});
  EXPECT_NEAR(r.kappa_prime / std::pow(u1, 0.25), 9.1, 0.02 * 9.1);
  const double eta = 1.0 / std::sqrt(4.0 * std::sqrt(u1 / 3.0));
  EXPECT_NEAR(r.eta, eta, 1e-9);
  EXPECT_NEAR(r.kappa_prime, std::sqrt(7.0) / 6.0 * 10.0 / (11.0 / 15.0 * eta), 1e-9 * r.kappa_prime);
}

TEST(RamanDm1, KappaAtTwentyFive) { EXPECT_NEAR(raman_dm1_2d(25.0, kCs, -1e4, 0.5, M_PI / 2).kappa, 53.0, 0.05 * 53.0); }

TEST(RamanDm1, KappaPrimeAxes) {
  const CouplingReport r = raman_dm1_2d(45.0, kCs, -4000.0, 0.5, M_PI / 2);
  EXPECT_NEAR(r.kappa_prime, 880.0, 0.05 * 880.0);
  EXPECT_DOUBLE_EQ(r.kappa_prime_y, 3.0 * r.kappa_prime);
}

TEST(RamanDm1, KappaGrowsLinearlyWithDetuning) {
  const double a = raman_dm1_2d(30.0, kCs, -2000.0, 0.5, M_PI / 2).kappa;
  const double b = raman_dm1_2d(30.0, kCs, -4000.0, 0.5, M_PI / 2).kappa;
  EXPECT_NEAR(b / a, 2.0, 1e-12);
}

TEST(RamanDm1, PrefactorClosure) {
  for (double u1 : {25.0, 100.0}) {
    const double delta = -1e4, ratio = 0.5;
    const CouplingReport r = raman_dm1_2d(u1, kCs, delta, ratio, M_PI / 2);
    const double coefficient = r.kappa * std::sqrt(4.0) / (ratio * std::abs(delta) * std::pow(u1, -0.25));
    EXPECT_NEAR(coefficient, 0.047, 0.02 * 0.047);
  }
}

TEST(RamanMatrixElement, OscillatorFunctionsOrthonormal) {
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      double s = 0.0;
      for (int k = -4000; k <= 4000; ++k) s += oscillator_function(a, k * 1e-3, 0.3) * oscillator_function(b, k * 1e-3, 0.3);
      EXPECT_NEAR(s * 1e-3, a == b ? 1.0 : 0.0, 1e-10);
    }
}

TEST(RamanMatrixElement, UniformTransverseFieldKeepsParity) {
  const OperatorField u = constant_field(zeeman_term(HalfInt(4), Vec3(3.0, 0.0, 0.0), Vec3::UnitZ()));
  const std::vector<Vec3> z{Vec3::UnitZ()};
  EXPECT_NEAR(std::abs(raman_matrix_element(u, ho(HalfInt(3), z, {1}, 0.2), ho(HalfInt(4), z, {0}, 0.2))), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(raman_matrix_element(u, ho(HalfInt(3), z, {2}, 0.2), ho(HalfInt(4), z, {1}, 0.2))), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(raman_matrix_element(u, ho(HalfInt(3), z, {0}, 0.2), ho(HalfInt(4), z, {0}, 0.2))),
              0.5 * 3.0 * std::sqrt(8.0), 1e-9);
}

TEST(RamanMatrixElement, CrossPolarizedPairIsEven) {
  const double a = 0.6, u1 = 10.0;
  const Vec3 k1(std::sin(a), 0, std::cos(a)), k2(std::sin(a), 0, -std::cos(a));
  LatticeGeometry g;
  g.beams = {PlaneWave::make(k1, Vec3::UnitY().cast<cplx>()),
             PlaneWave::make(k2, Vec3(std::cos(a), 0, std::sin(a)).cast<cplx>())};
  const OperatorField u = potential_operator(g, kCs, HalfInt(4), u1, {-2000.0, DetuningMode::infinite_limit});
  const double kz = 2.0 * std::cos(a);
  const double center = M_PI / (2.0 * kz);
  const std::vector<Vec3> z{Vec3::UnitZ()};
  const Vec3 c(0, 0, center);
  const cplx odd = raman_matrix_element(u, ho(HalfInt(3), z, {1}, 0.25, c), ho(HalfInt(4), z, {0}, 0.25, c));
  const cplx even = raman_matrix_element(u, ho(HalfInt(3), z, {0}, 0.25, c), ho(HalfInt(4), z, {0}, 0.25, c));
  EXPECT_LT(std::abs(odd), 1e-10 * u1);
  EXPECT_GT(std::abs(even), 1e-2 * u1);
}

TEST(RamanMatrixElement, TwoDimensionalOddCouplings) {
  const double u1 = 500.0, ratio = 0.5;
  const OperatorField u = potential_operator(three_beam_2d(M_PI / 3, ratio, M_PI / 2), kCs, HalfInt(4), u1,
                                             {-2000.0, DetuningMode::infinite_limit});
  const double eta = std::pow(2.0 / (15.0 * u1), 0.25);
  const double u_r = u1 / (2.0 * std::sqrt(8.0)) * ratio * eta;
  const std::vector<Vec3> xy{Vec3::UnitX(), Vec3::UnitY()};
  const cplx ex = raman_matrix_element(u, ho(HalfInt(3), xy, {1, 0}, eta), ho(HalfInt(4), xy, {0, 0}, eta));
  const cplx ey = raman_matrix_element(u, ho(HalfInt(3), xy, {0, 1}, eta), ho(HalfInt(4), xy, {0, 0}, eta));
  EXPECT_NEAR(std::abs(ex) / u_r, 1.0, 0.05);
  EXPECT_NEAR(std::abs(ey) / (3.0 * u_r), 1.0, 0.05);
  // x coupling is i U_R relative to the real y coupling.
  EXPECT_NEAR(std::abs(std::arg(ex / ey)), M_PI / 2, 0.05);
}

TEST(RamanMatrixElement, MismatchedAxesRejected) {
  const OperatorField u = constant_field(CMat::Identity(9, 9));
  EXPECT_THROW(raman_matrix_element(u, ho(HalfInt(3), {Vec3::UnitX()}, {0}, 0.2), ho(HalfInt(4), {Vec3::UnitY()}, {0}, 0.2)),
               InputError);
}

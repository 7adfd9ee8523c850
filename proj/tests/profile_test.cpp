#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "trp/error.hpp"
#include "trp/profile.hpp"

namespace trp {
namespace {

TEST(Phase, PolynomialProfile) {
  const auto p4 = SweepProfile::from_dimensional(4, 1.0, 1.0, 2.0);
  EXPECT_EQ(phase(p4, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(phase(p4, 1.0), 1.0);
  const auto p3 = SweepProfile::from_dimensional(3, 1.0, 1.0, 3.0);
  EXPECT_DOUBLE_EQ(phase(p3, 2.0), 16.0);
  EXPECT_DOUBLE_EQ(phase_rate(p3, 2.0), 2.0 * 3.0 * 4.0);
}

TEST(LabFrameField, Limits) {
  const auto p = SweepProfile::from_dimensional(4, 1.5, 2.0, 0.7);
  const Vec3 f0 = lab_frame_field(p, 0.0);
  EXPECT_EQ(f0.x, 1.5);
  EXPECT_EQ(f0.y, 0.0);
  EXPECT_EQ(f0.z, 0.0);

  const auto flat = SweepProfile::from_dimensional(4, 1.5, 2.0, 0.0);
  const Vec3 f = lab_frame_field(flat, 3.0);
  EXPECT_EQ(f.x, 1.5);
  EXPECT_EQ(f.y, 0.0);
  EXPECT_EQ(f.z, 6.0);
}

TEST(LabFrameField, TransverseFieldTwistsClockwiseForPositiveB) {
  const auto p = SweepProfile::from_dimensional(4, 1.0, 1.0, 2.0);
  const Vec3 f = lab_frame_field(p, 1.0);  // phi = 1
  EXPECT_DOUBLE_EQ(f.x, std::cos(1.0));
  EXPECT_DOUBLE_EQ(f.y, -std::sin(1.0));
}

TEST(LabFrameField, MagnitudeIdentity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  const auto p = SweepProfile::from_dimensional(4, 0.8, 3.0, 0.01);
  for (int i = 0; i < 200; ++i) {
    const double t = u(rng);
    const Vec3 f = lab_frame_field(p, t);
    const double expect = 0.64 + 9.0 * t * t;
    EXPECT_NEAR(f.x * f.x + f.y * f.y + f.z * f.z, expect, 1e-12 * expect);
  }
}

TEST(RotatingFrameField, VanishesAtOriginAndResonances) {
  const auto p = SweepProfile::from_dimensionless(4, 5.0, 4.6e-4);
  const RotatingField f0 = rotating_frame_field(p, 0.0);
  EXPECT_EQ(f0.x, p.field());
  EXPECT_EQ(f0.z, 0.0);
  for (double tau : resonance_times(p).times)
    EXPECT_NEAR(rotating_frame_field(p, p.to_time(tau)).z, 0.0, 1e-12);
}

TEST(RotatingFrameField, DimensionlessOffset) {
  // b (10 - 4.6e-4 * 10^3) = 9.54 b
  const auto p = SweepProfile::from_dimensional(4, 2.0, 3.0,
                                                twist_from_eta(4, 3.0, 2.0, 4.6e-4));
  const double z = rotating_frame_field(p, p.to_time(10.0)).z;
  EXPECT_NEAR(z, 9.54 * 2.0, 1e-12);
  EXPECT_NEAR(reduced_offset(4, 4.6e-4, 10.0), 9.54, 1e-14);
}

TEST(EnergyGap, Values) {
  const auto p = SweepProfile::from_dimensionless(4, 5.0, 1.6e-3);
  EXPECT_DOUBLE_EQ(energy_gap(p, 0.0), 2.0 * p.field());
  EXPECT_NEAR(energy_gap(p, p.to_time(25.0)), 2.0 * p.field(), 1e-12);

  const auto flat = SweepProfile::from_dimensional(4, 0.5, 2.0, 0.0);
  for (double t : {-3.0, 0.1, 7.0})
    EXPECT_DOUBLE_EQ(energy_gap(flat, t), 2.0 * std::sqrt(0.25 + 4.0 * t * t));
}

TEST(EnergyGap, MinimaOnlyAtResonances) {
  for (double eta : {4.6e-4, 1.6e-3, 4.0e-3, -4.6e-4}) {
    const auto p = SweepProfile::from_dimensionless(4, 5.0, eta);
    const ResonanceSet set = resonance_times(p);
    const double half = p.window() / 2.0;
    const int cells = 200000;
    const double h = 2.0 * half / cells;
    const double floor = 2.0 * p.field() * (1.0 + 1e-9);
    auto gap = [&](double tau) { return energy_gap(p, p.to_time(tau)); };
    for (int i = 1; i < cells; ++i) {
      const double tau = -half + i * h;
      const double g = gap(tau);
      if (g < gap(tau - h) && g < gap(tau + h)) {
        // every local minimum sits on a resonance and reaches 2b
        double nearest = 1e300;
        for (double r : set.times) nearest = std::min(nearest, std::abs(tau - r));
        EXPECT_LE(nearest, h) << "eta=" << eta << " tau=" << tau;
      }
      if (g < floor) {
        double nearest = 1e300;
        for (double r : set.times) nearest = std::min(nearest, std::abs(tau - r));
        EXPECT_LE(nearest, 1e-3) << "eta=" << eta << " tau=" << tau;
      }
    }
  }
}

TEST(ResonanceTimes, QuarticExamples) {
  const ResonanceSet pos = resonance_times(4, 4.6e-4);
  ASSERT_EQ(pos.size(), 3u);
  EXPECT_NEAR(pos.times[0], -46.63, 5e-3);
  EXPECT_EQ(pos.times[1], 0.0);
  EXPECT_NEAR(pos.times[2], 46.63, 5e-3);
  EXPECT_EQ(pos.regime, Regime::kPositiveEven);

  const ResonanceSet neg = resonance_times(4, -4.6e-4);
  ASSERT_EQ(neg.size(), 1u);
  EXPECT_EQ(neg.times[0], 0.0);
  EXPECT_EQ(neg.regime, Regime::kNegativeEven);

  const ResonanceSet strong = resonance_times(4, 1.6e-3);
  EXPECT_NEAR(strong.times[2], 25.0, 1e-12);
}

TEST(ResonanceTimes, QuadraticHasOnlyOrigin) {
  for (double eta : {-3.0, -0.2, 0.0, 0.5, 7.0}) {
    const ResonanceSet s = resonance_times(2, eta);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.times[0], 0.0);
    EXPECT_EQ(s.regime, Regime::kNone);
  }
}

TEST(ResonanceTimes, QuadraticDegenerateIsFlagged) {
  const ResonanceSet s = resonance_times(2, 1.0);
  EXPECT_TRUE(s.degenerate());
  EXPECT_EQ(reduced_offset(2, 1.0, 17.0), 0.0);
}

TEST(ResonanceTimes, CubicMatchesBisectionOracle) {
  const ResonanceSet s = resonance_times(3, 0.01);
  const auto roots = oracle::scan_roots(
      [](double t) { return t - 0.01 * t * t; }, -150.0, 150.0, 3001);
  ASSERT_EQ(roots.size(), 2u);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s.times[0], roots[0], 1e-9);
  EXPECT_NEAR(s.times[1], roots[1], 1e-9);
  EXPECT_EQ(s.times[1], 100.0);
  EXPECT_EQ(s.regime, Regime::kPositiveOdd);

  const ResonanceSet neg = resonance_times(3, -0.01);
  EXPECT_EQ(neg.times[0], -100.0);
  EXPECT_EQ(neg.regime, Regime::kNegativeOdd);
}

TEST(ResonanceTimes, RejectsLinearTwist) {
  EXPECT_THROW(resonance_times(1, 0.1), ConfigError);
  EXPECT_THROW(resonance_times(0, 0.1), ConfigError);
}

TEST(ResonanceTimes, CardinalityAndRootsAgreeWithOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mag(-3.0, -0.5);  // log10 |eta|
  for (int n = 2; n <= 6; ++n) {
    for (int sign : {+1, -1}) {
      for (int trial = 0; trial < 20; ++trial) {
        const double eta = sign * std::pow(10.0, mag(rng));
        const ResonanceSet s = resonance_times(n, eta);
        std::size_t expected = 1;
        if (n >= 3) expected = (n % 2 == 0) ? (sign > 0 ? 3 : 1) : 2;
        EXPECT_EQ(s.size(), expected) << "n=" << n << " eta=" << eta;
        for (double tau : s.times)
          EXPECT_LE(std::abs(reduced_offset(n, eta, tau)), 1e-12)
              << "n=" << n << " eta=" << eta << " tau=" << tau;

        const double reach = 2.0 * std::max(1.0, s.max_abs());
        const auto roots = oracle::scan_roots(
            [&](double t) { return reduced_offset(n, eta, t); }, -reach,
            reach, 20001);
        ASSERT_EQ(roots.size(), s.size()) << "n=" << n << " eta=" << eta;
        for (std::size_t i = 0; i < roots.size(); ++i)
          EXPECT_NEAR(s.times[i], roots[i], 1e-9 * std::max(1.0, std::abs(roots[i])));
      }
    }
    EXPECT_EQ(resonance_times(n, 0.0).size(), 1u);
  }
}

TEST(EtaFromTheory, Examples) {
  EXPECT_DOUBLE_EQ(eta_from_theory(4, 1.0, 1.0, 0.37).eta, 0.37);
  EXPECT_DOUBLE_EQ(eta_from_theory(3, 1.0, 1.0, -0.2).eta, -0.2);
  const DimensionlessParams d = eta_from_theory(4, 2.0, 1.0, 8.0);
  EXPECT_DOUBLE_EQ(d.eta, 1.0);
  EXPECT_DOUBLE_EQ(d.lambda, 2.0);
  EXPECT_DOUBLE_EQ(eta_from_theory(2, 4.0, 3.0, 2.0).eta, 0.5);
}

TEST(EtaFromTheory, InverseIsIdentity) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pos(0.1, 20.0);
  std::uniform_real_distribution<double> eta_d(-1e-2, 1e-2);
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const double a = pos(rng), b = pos(rng), eta = eta_d(rng);
    const double back = eta_from_theory(n, a, b, twist_from_eta(n, a, b, eta)).eta;
    EXPECT_NEAR(back, eta, 1e-12 * std::abs(eta));
  }
}

TEST(SweepProfile, DimensionlessRoundTrip) {
  const auto p = SweepProfile::from_dimensionless(4, 5.0, 4.6e-4);
  EXPECT_DOUBLE_EQ(p.lambda(), 5.0);
  EXPECT_NEAR(p.eta(), 4.6e-4, 1e-18);
  EXPECT_DOUBLE_EQ(p.to_tau(p.to_time(12.5)), 12.5);
}

TEST(SweepProfile, RejectsInvalidParameters) {
  EXPECT_THROW(SweepProfile::from_dimensional(0, 1.0, 1.0, 0.0), ConfigError);
  EXPECT_THROW(SweepProfile::from_dimensional(4, 0.0, 1.0, 0.0), ConfigError);
  EXPECT_THROW(SweepProfile::from_dimensional(4, 1.0, -1.0, 0.0), ConfigError);
  EXPECT_THROW(SweepProfile::from_dimensionless(4, 0.0, 0.0), ConfigError);
  EXPECT_THROW(SweepProfile::from_dimensionless(4, 5.0, 0.0, 19.0), ConfigError);
  EXPECT_THROW(SweepProfile::from_dimensionless(4, 5.0, 0.0, -40.0), ConfigError);
  EXPECT_NO_THROW(SweepProfile::from_dimensionless(4, 5.0, 0.0, 20.0));
  EXPECT_TRUE(SweepProfile::from_dimensionless(4, 5.0, 0.0, 0.0).empty());
}

TEST(SweepProfile, DefaultWindowPolicy) {
  EXPECT_EQ(SweepProfile::from_dimensionless(4, 5.0, 0.0).window(), 120.0);
  EXPECT_EQ(SweepProfile::from_dimensionless(4, 5.0, 4.0e-3).window(), 120.0);
  EXPECT_NEAR(SweepProfile::from_dimensionless(4, 5.0, 4.6e-4).window(),
              6.0 / std::sqrt(4.6e-4), 1e-9);
  EXPECT_NEAR(SweepProfile::from_dimensionless(4, 5.0, 1.6e-3).window(), 150.0, 1e-9);
  EXPECT_EQ(SweepProfile::from_dimensionless(4, 5.0, 4.6e-4, 200.0).window(), 200.0);
}

TEST(Experimental, ExperimentalEtaFormulas) {
  ExperimentalParams exp{50000.0, 24.39, 393.0, 0.0, 0.0};
  EXPECT_EQ(eta_from_experiment(3, exp), 0.0);

  exp.B_exp = 1.0e6;
  // independent evaluation of 3 B delta w1 / (4 A^2)
  const double expect = 3.0e6 * 24.39 * 393.0 / (4.0 * 2.5e9);
  EXPECT_NEAR(eta_from_experiment(3, exp), expect, 1e-12 * expect);
  EXPECT_NEAR(eta_from_experiment(3, exp), 2.876, 5e-4);

  const double quartic = 1.0e6 * 24.39 * 393.0 * 393.0 / (2.0 * 1.25e14);
  EXPECT_NEAR(eta_from_experiment(4, exp), quartic, 1e-12 * quartic);
}

TEST(Experimental, InverseRoundTrip) {
  ExperimentalParams exp{50000.0, 24.39, 393.0, 0.0, 0.0};
  for (int n : {3, 4}) {
    for (double target : {4.6e-4, -1.3e-3, 2.876}) {
      exp.B_exp = twist_from_experiment_eta(n, exp, target);
      EXPECT_NEAR(eta_from_experiment(n, exp), target, 1e-12 * std::abs(target));
    }
  }
}

TEST(Experimental, ExperimentalEtaIsUnitInvariant) {
  const ExperimentalParams exp{40000.0, 12.0, 4000.0, 3.0e7, 0.0};
  for (int n : {3, 4})
    EXPECT_NEAR(eta_from_experiment(n, exp, FrequencyUnit::kRadPerSecond),
                eta_from_experiment(n, exp, FrequencyUnit::kHz),
                1e-12 * std::abs(eta_from_experiment(n, exp)));
}

TEST(Experimental, RejectsUnsupportedOrders) {
  const ExperimentalParams exp{50000.0, 24.39, 393.0, 1.0, 0.0};
  EXPECT_THROW(eta_from_experiment(5, exp), ConfigError);
  EXPECT_THROW(eta_from_experiment(2, exp), ConfigError);
  EXPECT_THROW(eta_from_experiment(3, ExperimentalParams{0.0, 1.0, 1.0, 1.0, 0.0}),
               ConfigError);
}

TEST(FrequencySchedules, Values) {
  const ExperimentalParams exp{50000.0, 24.39, 393.0, 0.0, 1000.0};
  const auto p = SweepProfile::from_dimensional(4, 1.0, 2.0, 0.01);
  const FrequencySchedule f0 = frequency_schedules(p, exp, 0.0);
  EXPECT_EQ(f0.omega_det, 1000.0);
  EXPECT_EQ(f0.omega_rf, 1000.0);

  const auto flat = SweepProfile::from_dimensional(4, 1.0, 2.0, 0.0);
  const FrequencySchedule f = frequency_schedules(flat, exp, 3.0);
  EXPECT_EQ(f.omega_rf, f.omega_det);
  EXPECT_EQ(f.omega_det, 1012.0);

  for (double tau : resonance_times(p).times)
    EXPECT_NEAR(frequency_schedules(p, exp, p.to_time(tau)).omega_rf, 1000.0, 1e-9);
}

TEST(FrequencySchedules, ZerosMatchRotatingField) {
  const ExperimentalParams exp{50000.0, 24.39, 393.0, 0.0, 500.0};
  for (int n : {3, 4, 5}) {
    const auto p = SweepProfile::from_dimensionless(n, 5.0, 2e-3);
    const double half = p.window() / 2.0;
    for (int i = 0; i <= 4000; ++i) {
      const double t = p.to_time(-half + i * (2.0 * half / 4000));
      const double rf = frequency_schedules(p, exp, t).omega_rf - exp.omega0_hz;
      const double z = rotating_frame_field(p, t).z;
      EXPECT_NEAR(rf, 2.0 * z, 1e-9 * std::max(1.0, std::abs(rf)));
    }
  }
}

TEST(InversionTime, Quartic) {
  EXPECT_NEAR(inversion_time_quartic(40000.0, 4000.0, 5.0), 2e-3, 1e-18);
  EXPECT_NEAR(inversion_time_quartic(50000.0, 4000.0, 5.0), 2.5e-3, 1e-18);
  const double t1 = inversion_time_quartic(40000.0, 1000.0, 2.0);
  const double t2 = inversion_time_quartic(40000.0, 2000.0, 2.0);
  EXPECT_DOUBLE_EQ(t2, t1 / 4.0);
  EXPECT_NEAR(inversion_time_quartic(40000.0, 4000.0, 5.0, FrequencyUnit::kRadPerSecond),
              2e-3 / (2.0 * std::numbers::pi), 1e-18);
  EXPECT_THROW(inversion_time_quartic(0.0, 1.0, 1.0), ConfigError);
}

}  // namespace
}  // namespace trp

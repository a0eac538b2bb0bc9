#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "vfp/collision.hpp"
#include "vfp/diagnostics.hpp"
#include "vfp/error.hpp"
#include "vfp/scenario.hpp"

using namespace vfp;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no vfp::Error thrown";
  return ErrorKind::InvalidConfig;
}

DistState hom_datum() {
  const Scenario sc = builtin_scenario("hom-relax");
  return sample_on_grid(sc.grid(), sc.initializer());
}

// |cos(w t)|^2 e^{2 g t}: field rate g, energy rate 2g.
void synthetic(double g, std::vector<double>& t, std::vector<double>& e) {
  for (int i = 0; i <= 6000; ++i) {
    const double ti = 0.01 * i;
    const double c = std::cos(1.3 * ti);
    t.push_back(ti);
    e.push_back(c * c * std::exp(2 * g * ti));
  }
}

}  // namespace

TEST(Invariants, InitialHomogeneousDatum) {
  const DistState f = hom_datum();
  const Invariants inv = invariants(f);
  // 0.9 M(0, 0.2) + 0.05 M(+-4, 1): n = 1, E_kin = 0.09 + 0.85.
  EXPECT_NEAR(inv.mass, 1.0, 1e-10);
  EXPECT_NEAR(inv.kinetic, 0.94, 1e-10);
  EXPECT_NEAR(inv.momentum_x, 0.0, 1e-14);
  EXPECT_EQ(inv.momentum_y, 0.0);
  EXPECT_EQ(inv.electric, 0.0);
  EXPECT_EQ(inv.total, inv.kinetic);
}

TEST(Invariants, SpatialIncludesField) {
  const PhaseGrid g = build_phase_grid(2.0, 4, 8.0, 64, 1);
  const DistState f = sample_on_grid(g, [](double, double v, double) { return std::exp(-v * v / 2); });
  const std::vector<double> e{1.0, -1.0, 2.0, 0.0};
  const Invariants inv = invariants(f, e);
  EXPECT_DOUBLE_EQ(inv.electric, 0.5 * 0.5 * 6.0);
  EXPECT_DOUBLE_EQ(inv.total, inv.kinetic + inv.electric);
  EXPECT_NEAR(inv.mass, 2.0 * std::sqrt(2 * std::numbers::pi), 1e-10);
  EXPECT_EQ(electric_energy({}, 1.0), 0.0);
}

TEST(Invariants, TwoDimensionalMomentum) {
  const PhaseGrid g = build_phase_grid(1.0, 4, 8.0, 64, 2);
  const DistState f = sample_on_grid(g, [](double, double vx, double vy) {
    return std::exp(-((vx - 0.5) * (vx - 0.5) + (vy + 0.25) * (vy + 0.25)) / 2) / (2 * std::numbers::pi);
  });
  const Invariants inv = invariants(f);
  EXPECT_NEAR(inv.mass, 1.0, 1e-10);
  EXPECT_NEAR(inv.momentum_x, 0.5, 1e-10);
  EXPECT_NEAR(inv.momentum_y, -0.25, 1e-10);
  EXPECT_NEAR(inv.kinetic, 1.0 + 0.5 * (0.25 + 0.0625), 1e-10);
}

TEST(Entropy, MaxwellianReferenceGivesMass) {
  const DistState f = hom_datum();
  const auto M = reference_maxwellian(f);
  DistState m(f.grid);
  m.values = M;
  EXPECT_NEAR(entropy(m, M), invariants(m).mass, 1e-14);
  EXPECT_EQ(l2_distance(m, M), 0.0);
  EXPECT_GT(entropy(f, M), entropy(m, M));
  EXPECT_GT(l2_distance(f, M), 0.0);
}

TEST(Entropy, QuadraticScaling) {
  DistState f = hom_datum();
  const auto M = reference_maxwellian(f);
  const double h = entropy(f, M);
  for (double& x : f.values) x *= 3.0;
  EXPECT_NEAR(entropy(f, M), 9.0 * h, 1e-12 * h);
}

TEST(Entropy, RejectsBadReference) {
  const DistState f = hom_datum();
  auto M = reference_maxwellian(f);
  M[5] = 0.0;
  EXPECT_EQ(kind_of([&] { entropy(f, M); }), ErrorKind::DegenerateDensity);
  M.pop_back();
  EXPECT_EQ(kind_of([&] { entropy(f, M); }), ErrorKind::BadCount);
  EXPECT_EQ(kind_of([&] { l2_distance(f, M); }), ErrorKind::BadCount);
}

TEST(ReferenceMaxwellian, HomogeneousUsesStaggeredMoments) {
  const DistState f = hom_datum();
  const auto m = staggered_moments(f.values, f.grid.velocity());
  const auto M = reference_maxwellian(f);
  const auto expect = discrete_maxwellian(m.n, m.u, m.T, f.grid.velocity());
  for (std::size_t j = 0; j < M.size(); ++j) EXPECT_EQ(M[j], expect[j]);
}

TEST(ReferenceMaxwellian, SpatialUsesGlobalMoments) {
  const PhaseGrid g = build_phase_grid(4 * std::numbers::pi, 16, 10.0, 200, 1);
  const DistState f = sample_on_grid(g, [](double x, double v, double) {
    return (1 + 0.1 * std::cos(0.5 * x)) * std::exp(-(v - 0.3) * (v - 0.3) / 3.0) / std::sqrt(3.0 * std::numbers::pi);
  });
  const auto M = reference_maxwellian(f);
  const auto expect = discrete_maxwellian(1.0, 0.3, 1.5, g.velocity());
  for (std::size_t j = 0; j < M.size(); ++j) EXPECT_NEAR(M[j], expect[j], 1e-10);
  DistState zero(g);
  EXPECT_EQ(kind_of([&] { reference_maxwellian(zero); }), ErrorKind::DegenerateDensity);
}

TEST(FitDamping, SyntheticRates) {
  std::vector<double> t, e;
  synthetic(-0.1, t, e);
  EXPECT_NEAR(fit_damping(t, e, 0, 60), -0.1, 1e-4);
  EXPECT_NEAR(fit_damping(t, e, 0, 60, RateKind::Energy), -0.2, 2e-4);
  std::vector<double> t2, g2;
  synthetic(0.05, t2, g2);
  EXPECT_NEAR(fit_damping(t2, g2, 10, 50), 0.05, 1e-4);
}

TEST(FitDamping, CoarseSamplingUsesParabolicPeaks) {
  std::vector<double> t, e;
  for (int i = 0; i <= 300; ++i) {
    const double ti = 0.2 * i + 0.037;
    t.push_back(ti);
    e.push_back(std::pow(std::cos(1.3 * ti), 2) * std::exp(-0.3 * ti));
  }
  EXPECT_NEAR(fit_damping(t, e, 0, 60), -0.15, 5e-3);
}

TEST(FitDamping, LogLinear) {
  std::vector<double> t, e;
  for (int i = 0; i < 50; ++i) {
    t.push_back(i);
    e.push_back(std::exp(-0.4 * i));
  }
  EXPECT_NEAR(fit_damping(t, e, 0, 49, RateKind::Field, FitMethod::LogLinear), -0.2, 1e-12);
  EXPECT_NEAR(fit_damping(t, e, 0, 49, RateKind::Energy, FitMethod::LogLinear), -0.4, 1e-12);
}

TEST(FitDamping, Errors) {
  std::vector<double> t{0, 1, 2, 3, 4, 5}, e{5, 4, 3, 2, 1, 0.5};
  EXPECT_EQ(kind_of([&] { fit_damping(t, e, 0, 5); }), ErrorKind::TooFewPeaks);
  std::vector<double> shorter{1, 2};
  EXPECT_EQ(kind_of([&] { fit_damping(t, shorter, 0, 5); }), ErrorKind::BadCount);
  std::vector<double> tt, ee;
  synthetic(-0.1, tt, ee);
  EXPECT_EQ(kind_of([&] { fit_damping(tt, ee, 100, 200); }), ErrorKind::TooFewPeaks);
  EXPECT_EQ(kind_of([&] { fit_damping(tt, ee, 1, 1, RateKind::Field, FitMethod::LogLinear); }),
            ErrorKind::TooFewPeaks);
}

TEST(Diagnose, RowMatchesParts) {
  const PhaseGrid g = build_phase_grid(2.0, 4, 8.0, 64, 1);
  DistState f = sample_on_grid(g, [](double x, double v, double) { return (1 + 0.1 * x) * std::exp(-v * v / 2); });
  f.time = 2.5;
  const std::vector<double> e{0.1, 0.2, 0.3, 0.4};
  const auto M = reference_maxwellian(f);
  const DiagRow r = diagnose(f, e, M);
  const Invariants inv = invariants(f, e);
  EXPECT_EQ(r.t, 2.5);
  EXPECT_EQ(r.mass, inv.mass);
  EXPECT_EQ(r.e_elec, inv.electric);
  EXPECT_EQ(r.e_tot, inv.total);
  EXPECT_EQ(r.entropy, entropy(f, M));
  EXPECT_EQ(r.l2_maxwellian, l2_distance(f, M));
  EXPECT_EQ(r.stages, 0);
  DiagSeries s;
  s.rows = {r, r};
  s.rows[1].t = 3.0;
  EXPECT_EQ(s.column(&DiagRow::t), (std::vector<double>{2.5, 3.0}));
}

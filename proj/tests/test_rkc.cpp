#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "vfp/error.hpp"
#include "vfp/rkc.hpp"

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

Rhs linear(double lambda) {
  return [lambda](double, std::span<const double> y, std::span<double> out) {
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = lambda * y[i];
  };
}

// y' = -y + cos t, y(0) = 1 has y = (cos t + sin t + e^{-t}) / 2.
Rhs forced() {
  return [](double t, std::span<const double> y, std::span<double> out) { out[0] = -y[0] + std::cos(t); };
}

double forced_exact(double t) { return 0.5 * (std::cos(t) + std::sin(t)) + 0.5 * std::exp(-t); }

double fixed_error(Method m, int s, double dt) {
  std::vector<double> y{1.0};
  AdvanceOptions opt;
  opt.method = m;
  opt.eta = default_eta(m);
  opt.fixed_stages = s;
  fixed_advance(y, 0.0, 2.0, dt, forced(), opt);
  return std::abs(y[0] - forced_exact(2.0));
}

double slope(Method m, int s) {
  const double e1 = fixed_error(m, s, 0.05), e2 = fixed_error(m, s, 0.025);
  return std::log2(e1 / e2);
}

}  // namespace

TEST(Chebyshev, ReferenceValue) {
  // mpmath at 30 digits.
  EXPECT_NEAR(cheb_eval(7, 1.001).t, 1.049393177681232448, 1e-14);
}

TEST(Chebyshev, TrigonometricIdentityAndEndpointDerivatives) {
  for (int s : {0, 1, 2, 5, 13}) {
    for (double th : {0.1, 0.7, 2.5}) EXPECT_NEAR(cheb_eval(s, std::cos(th)).t, std::cos(s * th), 1e-12);
    const auto v = cheb_eval(s, 1.0);
    EXPECT_DOUBLE_EQ(v.t, 1.0);
    EXPECT_DOUBLE_EQ(v.dt, s * s);
    EXPECT_NEAR(v.d2t, s * s * (s * s - 1) / 3.0, 1e-9);
  }
}

TEST(Coefficients, Rkc1Reference) {
  const auto c = rkc1_coeffs(2, 0.05);
  EXPECT_DOUBLE_EQ(c.w0, 1.0125);
  EXPECT_NEAR(c.w1, 0.259336419753086, 1e-14);
  EXPECT_NEAR(c.stability_length, 7.760190419518, 1e-10);
  EXPECT_NEAR(rkc1_coeffs(20, 0.05).stability_length, 774.3751525421511, 1e-9);
  EXPECT_NEAR(rkc1_coeffs(20, 0.05).c_eta, 1.935937881355378, 1e-12);
  EXPECT_NEAR(rkc1_coeffs(20, 0.15).c_eta, 1.82152539260045, 1e-12);
  EXPECT_NEAR(rkc1_coeffs(5, 0.15).stability_length, 45.58450621997, 1e-9);
}

TEST(Coefficients, Rkc2Reference) {
  const auto c = rkc2_coeffs(5, 0.15);
  EXPECT_NEAR(c.w2, 0.1278324351294577, 1e-14);
  EXPECT_NEAR(c.stability_length, 15.69241795299, 1e-9);
  EXPECT_NEAR(c.c_eta, 0.6276967181196, 1e-11);
  EXPECT_NEAR(c.b[5], 0.2984048937234579, 1e-14);
  const auto d = rkc2_coeffs(20, 0.15);
  EXPECT_NEAR(d.w2, 0.007669230327484819, 1e-15);
  EXPECT_NEAR(d.stability_length, 260.8312587550148, 1e-9);
  EXPECT_NEAR(d.c_eta, 0.6520781468875371, 1e-12);
}

TEST(Coefficients, StructuralIdentities) {
  for (int s : {2, 3, 7, 40}) {
    for (Method m : {Method::Rkc1, Method::Rkc2}) {
      const auto c = make_coeffs(m, s, default_eta(m));
      EXPECT_NEAR(c.c[static_cast<std::size_t>(s)], 1.0, 1e-12) << s;
      for (int l = 2; l <= s; ++l) {
        const auto L = static_cast<std::size_t>(l);
        if (m == Method::Rkc1) EXPECT_NEAR(c.nu[L] + c.kappa[L], 1.0, 1e-12);
        EXPECT_GE(c.c[L], c.c[L - 1] - 1e-12);
      }
    }
    const auto c2 = rkc2_coeffs(s, 0.15);
    EXPECT_NEAR(c2.mu[1], c2.b[1] * c2.w2, 1e-15);
  }
}

TEST(Coefficients, RejectsBadInput) {
  EXPECT_EQ(kind_of([] { rkc1_coeffs(1); }), ErrorKind::BadStageCount);
  EXPECT_EQ(kind_of([] { rkc2_coeffs(0); }), ErrorKind::BadStageCount);
  EXPECT_EQ(kind_of([] { rkc2_coeffs(5, -0.1); }), ErrorKind::InvalidConfig);
  EXPECT_EQ(kind_of([] { make_coeffs(Method::Rk2, 5, 0.1); }), ErrorKind::InvalidConfig);
  RkcCoeffs bad;
  bad.s = 1;
  std::vector<double> y{1.0}, y1{0.0};
  RkcWorkspace ws;
  EXPECT_EQ(kind_of([&] { rkc_step(bad, y, 0, 1, linear(-1), y1, ws); }), ErrorKind::BadStageCount);
}

TEST(Method, NamesRoundTrip) {
  for (Method m : {Method::Rkc1, Method::Rkc2, Method::Rk2}) EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_EQ(parse_method("rkc"), Method::Rkc2);
  EXPECT_EQ(kind_of([] { parse_method("euler"); }), ErrorKind::InvalidConfig);
  EXPECT_EQ(default_eta(Method::Rkc1), 0.05);
  EXPECT_EQ(default_eta(Method::Rkc2), 0.15);
}

TEST(Step, MatchesStabilityFunction) {
  for (Method m : {Method::Rkc1, Method::Rkc2}) {
    for (int s : {2, 6, 17}) {
      const auto c = make_coeffs(m, s, default_eta(m));
      for (double z : {-0.3, -5.0, -0.9 * c.stability_length}) {
        std::vector<double> y{1.0, -2.0}, y1(2);
        RkcWorkspace ws;
        rkc_step(c, y, 0.0, 1.0, linear(z), y1, ws);
        const double r = stability_function(c, z);
        EXPECT_NEAR(y1[0], r, 1e-12 * std::max(1.0, std::abs(r)));
        EXPECT_NEAR(y1[1], -2 * r, 2e-12 * std::max(1.0, std::abs(r)));
      }
    }
  }
}

TEST(Step, ZeroRhsIsBitwiseIdentity) {
  const Rhs zero = [](double, std::span<const double>, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
  };
  std::vector<double> y{0.1, 3.0, -7.25, 1e-300}, y1(4);
  RkcWorkspace ws;
  for (Method m : {Method::Rkc1, Method::Rkc2}) {
    rkc_step(make_coeffs(m, 9, default_eta(m)), y, 0.0, 5.0, zero, y1, ws);
    EXPECT_EQ(y1, y);
  }
  std::vector<double> k1, k2;
  rk2_step(y, 0.0, 5.0, zero, y1, k1, k2);
  EXPECT_EQ(y1, y);
}

TEST(Step, EvaluationCount) {
  int calls = 0;
  const Rhs counted = [&](double, std::span<const double> y, std::span<double> out) {
    ++calls;
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = -y[i];
  };
  std::vector<double> y{1.0}, y1(1), q0{-1.0};
  RkcWorkspace ws;
  EXPECT_EQ(rkc_step(rkc2_coeffs(8), y, 0, 0.1, counted, y1, ws), 8);
  EXPECT_EQ(calls, 8);
  EXPECT_EQ(rkc_step(rkc2_coeffs(8), y, 0, 0.1, counted, y1, ws, q0), 7);
  EXPECT_EQ(calls, 15);
}

TEST(Step, NonFiniteStageThrows) {
  const Rhs bad = [](double, std::span<const double>, std::span<double> out) {
    std::fill(out.begin(), out.end(), std::numeric_limits<double>::infinity());
  };
  std::vector<double> y{1.0}, y1(1), k1, k2;
  RkcWorkspace ws;
  EXPECT_EQ(kind_of([&] { rkc_step(rkc2_coeffs(4), y, 0, 0.1, bad, y1, ws); }), ErrorKind::NonFiniteState);
  EXPECT_EQ(kind_of([&] { rk2_step(y, 0, 0.1, bad, y1, k1, k2); }), ErrorKind::NonFiniteState);
}

TEST(Stability, BoundedOnRealInterval) {
  for (Method m : {Method::Rkc1, Method::Rkc2}) {
    for (int s = 2; s <= 40; ++s) {
      const auto c = make_coeffs(m, s, default_eta(m));
      for (int k = 0; k <= 400; ++k) {
        const double z = -c.stability_length * k / 400.0;
        EXPECT_LE(std::abs(stability_function(c, z)), 1.0 + 1e-8) << to_string(m) << " s=" << s << " z=" << z;
      }
      EXPECT_GT(std::abs(stability_function(c, -1.5 * c.stability_length)), 1.0);
    }
  }
}

TEST(Stability, RandomPointsInsideInterval) {
  std::mt19937 rng(20261018);
  std::uniform_int_distribution<int> stages(2, 80);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const Method m = trial % 2 ? Method::Rkc1 : Method::Rkc2;
    const auto c = make_coeffs(m, stages(rng), default_eta(m));
    EXPECT_LE(std::abs(stability_function(c, -frac(rng) * c.stability_length)), 1.0 + 1e-8);
  }
}

TEST(Stability, OrderOfAccuracyAtOrigin) {
  // R(z) - e^z = O(z^{p+1}).
  for (Method m : {Method::Rkc1, Method::Rkc2}) {
    const auto c = make_coeffs(m, 7, default_eta(m));
    const double e1 = std::abs(stability_function(c, -0.02) - std::exp(-0.02));
    const double e2 = std::abs(stability_function(c, -0.01) - std::exp(-0.01));
    EXPECT_NEAR(std::log2(e1 / e2), m == Method::Rkc1 ? 2.0 : 3.0, 0.05);
  }
  EXPECT_DOUBLE_EQ(stability_function(Method::Rk2, 2, 0.0, -2.0), 1.0);
}

TEST(Stability, ComplexMatchesRealAxis) {
  const auto c = rkc2_coeffs(11);
  const auto r = stability_function(c, std::complex<double>(-30.0, 0.0));
  EXPECT_NEAR(r.real(), stability_function(c, -30.0), 1e-15);
  EXPECT_EQ(r.imag(), 0.0);
}

TEST(StageSelect, Examples) {
  EXPECT_EQ(stage_select(0.0, 100.0, 0.65), 2);
  EXPECT_EQ(stage_select(1e-6, 1.0, 0.65), 2);
  EXPECT_EQ(stage_select(3.06, 85.7, asymptotic_c_eta(Method::Rkc2, 0.15)), 21);
  EXPECT_EQ(kind_of([] { stage_select(1.0, 1.0, 0.0); }), ErrorKind::InvalidConfig);
}

TEST(StageSelect, MonotoneAndCoversSpectrum) {
  const double ce = asymptotic_c_eta(Method::Rkc2, 0.15);
  int prev = 0;
  for (double x = 0; x < 5000; x += 7.3) {
    const int s = stage_select(x, 1.0, ce);
    EXPECT_GE(s, prev);
    prev = s;
    EXPECT_GE(rkc2_coeffs(s).stability_length, x) << x;
  }
}

TEST(SpectralBound, ReferenceAndErrors) {
  const VelocityGrid vg(12.0, 256);
  EXPECT_NEAR(spectral_bound(vg, 0.1, 1.8822), 89.944064, 1e-6);
  EXPECT_EQ(spectral_bound(vg, 0.0, 1.0), 0.0);
  EXPECT_NEAR(spectral_bound(vg, 0.0, 1.0, 0.5), 1.05 * 0.5 / vg.dv(), 1e-12);
  EXPECT_EQ(kind_of([&] { spectral_bound(vg, -1.0, 1.0); }), ErrorKind::InvalidConfig);
  EXPECT_EQ(kind_of([&] { spectral_bound(vg, 1.0, 0.0); }), ErrorKind::DegenerateDensity);
  EXPECT_NEAR(spectral_bound(VelocityGrid(12.0, 256, 2), 0.1, 1.8822), 2 * 89.944064, 2e-6);
}

TEST(Controller, ErrorNormAndEstimate) {
  std::vector<double> est{1e-6, -2e-6}, y0{0.0, 1.0};
  EXPECT_NEAR(error_norm(est, y0, 1e-6), 1.0, 1e-12);
  EXPECT_EQ(error_norm({}, {}, 1e-6), 0.0);
  // A linear-in-time solution has zero estimated error.
  std::vector<double> y1{0.3, 1.3}, q{0.3, 0.3}, out(2);
  rkc_error_estimate(y0, y1, q, q, 1.0, out);
  EXPECT_NEAR(out[0], 0.0, 1e-15);
  EXPECT_NEAR(out[1], 0.0, 1e-15);
}

TEST(Controller, StepFactors) {
  ControllerConfig cfg;
  cfg.dt0 = 1.0;
  StepController c(cfg);
  EXPECT_TRUE(c.update(0.0, 1.0));
  EXPECT_DOUBLE_EQ(c.dt(), 10.0);
  EXPECT_TRUE(c.update(1.0, 1.0));
  EXPECT_DOUBLE_EQ(c.dt(), 0.8);
  EXPECT_FALSE(c.update(8.0, 1.0));
  EXPECT_NEAR(c.dt(), 0.4, 1e-15);
  EXPECT_FALSE(c.update(std::nan(""), 1.0));
  EXPECT_DOUBLE_EQ(c.dt(), 0.1);
  EXPECT_EQ(c.accepted(), 2);
  EXPECT_EQ(c.rejected(), 2);
  StepController r(cfg, 0.5);
  r.update(4.0, 1.0);
  EXPECT_DOUBLE_EQ(r.dt(), 0.4);
}

TEST(Controller, UnderflowAndConfig) {
  ControllerConfig cfg;
  cfg.dt0 = 1e-9;
  cfg.dt_min = 1e-10;
  StepController c(cfg);
  EXPECT_EQ(kind_of([&] {
              for (int i = 0; i < 20; ++i) c.update(1e30, 1e-10);
            }),
            ErrorKind::StepUnderflow);
  ControllerConfig bad;
  bad.tol = 0.0;
  EXPECT_EQ(kind_of([&] { StepController x(bad); }), ErrorKind::InvalidConfig);
  bad = {};
  bad.dt0 = -1;
  EXPECT_EQ(kind_of([&] { StepController x(bad); }), ErrorKind::InvalidConfig);
  ControllerConfig capped;
  capped.dt0 = 5.0;
  capped.dt_max = 2.0;
  EXPECT_EQ(StepController(capped).dt(), 2.0);
}

TEST(Adaptive, ZeroRhsGrowsStepAndLandsOnEnd) {
  const Rhs zero = [](double, std::span<const double>, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
  };
  ControllerConfig cfg;
  cfg.dt0 = 1e-3;
  StepController c(cfg);
  std::vector<double> y{2.0};
  AdvanceOptions opt;
  opt.fixed_stages = 3;
  const auto recs = adaptive_advance(c, y, 0.0, 50.0, zero, opt);
  ASSERT_GE(recs.size(), 2u);
  EXPECT_NEAR(recs[1].dt, 10 * recs[0].dt, 1e-15);
  for (const auto& r : recs) EXPECT_TRUE(r.accepted);
  EXPECT_DOUBLE_EQ(recs.back().t, 50.0);
  EXPECT_EQ(y[0], 2.0);
}

TEST(Adaptive, StiffDecayMeetsTolerance) {
  for (Method m : {Method::Rkc1, Method::Rkc2, Method::Rk2}) {
    ControllerConfig cfg;
    cfg.tol = 1e-7;
    StepController c(cfg);
    std::vector<double> y{1.0, 1.0};
    const Rhs rhs = [](double t, std::span<const double> v, std::span<double> out) {
      out[0] = -v[0] + std::cos(t);
      out[1] = -200.0 * (v[1] - std::cos(t));
    };
    AdvanceOptions opt;
    opt.method = m;
    opt.eta = default_eta(m);
    opt.lambda_max = 210.0;
    int calls = 0;
    opt.on_accept = [&](const StepRecord& r, std::span<const double>) {
      ++calls;
      EXPECT_TRUE(r.accepted);
    };
    const auto recs = adaptive_advance(c, y, 0.0, 2.0, rhs, opt);
    EXPECT_NEAR(y[0], forced_exact(2.0), m == Method::Rkc1 ? 1e-3 : 1e-4) << to_string(m);
    EXPECT_EQ(calls, c.accepted());
    EXPECT_EQ(static_cast<std::int64_t>(recs.size()), c.accepted() + c.rejected());
    std::int64_t evals = 0;
    for (const auto& r : recs) evals += r.rhs_evals;
    EXPECT_EQ(evals, c.rhs_evals());
  }
}

TEST(Fixed, ConvergenceOrders) {
  EXPECT_NEAR(slope(Method::Rkc1, 5), 1.0, 0.1);
  EXPECT_NEAR(slope(Method::Rkc2, 5), 2.0, 0.1);
  EXPECT_NEAR(slope(Method::Rk2, 2), 2.0, 0.1);
  std::vector<double> y{1.0};
  AdvanceOptions opt;
  EXPECT_EQ(kind_of([&] { fixed_advance(y, 0, 1, 0.0, forced(), opt); }), ErrorKind::InvalidConfig);
}

TEST(Fixed, LinearInvariantsPreserved) {
  // A with zero column sums keeps sum(y) fixed for any stage count.
  const int n = 30;
  const Rhs rhs = [n](double, std::span<const double> y, std::span<double> out) {
    for (int i = 0; i < n; ++i) {
      const double l = i > 0 ? y[i - 1] : 0.0, r = i + 1 < n ? y[i + 1] : 0.0;
      const double deg = (i > 0) + (i + 1 < n);
      out[i] = 50.0 * (l + r - deg * y[i]);
    }
  };
  std::vector<double> y(n);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double& x : y) x = u(rng);
  double s0 = 0;
  for (double x : y) s0 += x;
  for (Method m : {Method::Rkc1, Method::Rkc2}) {
    std::vector<double> z = y;
    AdvanceOptions opt;
    opt.method = m;
    opt.eta = default_eta(m);
    opt.lambda_max = 210.0;
    fixed_advance(z, 0, 1.0, 0.05, rhs, opt);
    double s = 0;
    for (double x : z) s += x;
    EXPECT_NEAR(s, s0, 1e-12 * s0);
  }
}

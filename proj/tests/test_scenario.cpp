#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

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

}  // namespace

TEST(Scenario, BuiltinsValidateAndSample) {
  ASSERT_EQ(builtin_names().size(), 6u);
  for (const auto& name : builtin_names()) {
    const Scenario s = builtin_scenario(name);
    EXPECT_EQ(s.name, name);
    EXPECT_NO_THROW(s.validate()) << name;
    const PhaseGrid g = s.grid();
    EXPECT_EQ(g.mode(), s.dims) << name;
    const DistState f = sample_on_grid(g, s.initializer());
    for (double x : f.values) ASSERT_GE(x, 0.0) << name;
    // Every datum is normalized to unit mean density.
    const double length = g.homogeneous() ? 1.0 : g.space().length();
    EXPECT_NEAR(invariants(f).mass / length, 1.0, 2e-4) << name;
  }
}

TEST(Scenario, BumpTwoBeamHotComponentIsNormalizedOnTheGrid) {
  Scenario s = builtin_scenario("bump-2beam");
  s.alpha = 0.0;
  s.beta = 0.0;
  s.nx = 8;
  const DistState f = sample_on_grid(s.grid(), s.initializer());
  const auto col = f.column(3);
  double m = 0;
  for (double x : col) m += x;
  EXPECT_NEAR(m * s.grid().velocity().dv(), 1.0, 1e-10);
}

TEST(Scenario, UnknownName) {
  EXPECT_EQ(kind_of([] { builtin_scenario("plasma-soup"); }), ErrorKind::UnknownScenario);
  EXPECT_EQ(kind_of([] { parse_scenario("scenario = nope\n"); }), ErrorKind::UnknownScenario);
}

TEST(Scenario, FormatParseRoundTrip) {
  for (const auto& name : builtin_names()) {
    const Scenario s = builtin_scenario(name);
    const std::string text = format_scenario(s);
    const Scenario back = parse_scenario(text);
    EXPECT_EQ(format_scenario(back), text) << name;
  }
  Scenario odd = builtin_scenario("bump-2beam");
  odd.integrator = Method::Rkc1;
  odd.eta = 0.0721;
  odd.tol = 1.0 / 3.0;
  EXPECT_EQ(format_scenario(parse_scenario(format_scenario(odd))), format_scenario(odd));
}

TEST(Scenario, ParseOverridesAndComments) {
  const Scenario s = parse_scenario(
      "# comment\n"
      "scenario = landau-1d   # base\n"
      "\n"
      "nu = 0.05\n"
      "L = 10\n"
      "  integrator = rkc1\n"
      "adaptive = no\n");
  EXPECT_EQ(s.name, "landau-1d");
  EXPECT_EQ(s.nu, 0.05);
  EXPECT_NEAR(s.length(), 10.0, 1e-12);
  EXPECT_EQ(s.integrator, Method::Rkc1);
  EXPECT_EQ(s.eta, 0.05);
  EXPECT_FALSE(s.adaptive);
  EXPECT_EQ(parse_scenario("").name, "custom");
}

TEST(Scenario, ParseErrors) {
  EXPECT_EQ(kind_of([] { parse_scenario("nu = 0.1\nscenario = landau-1d\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_scenario("just words\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_scenario("colour = blue\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_scenario("nu = fast\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_scenario("nx = 3.5\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_scenario("adaptive = maybe\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_scenario("splitting = lie\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_scenario("init = mystery\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_scenario("integrator = euler\n"); }), ErrorKind::InvalidConfig);
  EXPECT_EQ(kind_of([] { load_scenario("/nonexistent/dir/x.cfg"); }), ErrorKind::IoFailure);
}

TEST(Scenario, ValidationRejectsInconsistentCombinations) {
  auto invalid = [](const char* text) { return kind_of([&] { parse_scenario(text); }); };
  EXPECT_EQ(invalid("order = 3\n"), ErrorKind::InvalidConfig);
  EXPECT_EQ(invalid("scenario = landau-2dv\norder = 4\n"), ErrorKind::InvalidConfig);
  EXPECT_EQ(invalid("dims = 1\n"), ErrorKind::InvalidConfig);
  EXPECT_EQ(invalid("scenario = landau-1d\nsplitting = strang-2dv\n"), ErrorKind::InvalidConfig);
  EXPECT_EQ(invalid("scenario = landau-1d\ninit = landau-2dv\n"), ErrorKind::InvalidConfig);
  EXPECT_EQ(invalid("nu = -1\n"), ErrorKind::InvalidConfig);
  EXPECT_EQ(invalid("stages = 1\n"), ErrorKind::InvalidConfig);
  EXPECT_EQ(invalid("cadence = 0\n"), ErrorKind::InvalidConfig);
  EXPECT_EQ(invalid("tol = 0\n"), ErrorKind::InvalidConfig);
  EXPECT_EQ(invalid("adaptive = false\ndt = 0\n"), ErrorKind::InvalidConfig);
  EXPECT_EQ(invalid("scenario = bump-2beam\ngamma = 3\n"), ErrorKind::InvalidConfig);
  EXPECT_EQ(invalid("t_end = -1\n"), ErrorKind::InvalidConfig);
  EXPECT_EQ(invalid("cfl = 0\n"), ErrorKind::InvalidConfig);
}

TEST(Scenario, LoadFromFile) {
  const auto p = std::filesystem::temp_directory_path() / "vfp_scenario_test.cfg";
  std::ofstream(p) << "scenario = bump-valentini\nt_end = 12\n";
  const Scenario s = load_scenario(p);
  std::filesystem::remove(p);
  EXPECT_EQ(s.init, InitKind::BumpValentini);
  EXPECT_EQ(s.t_end, 12.0);
  EXPECT_NEAR(s.length(), 22.0, 1e-12);
}

TEST(Scenario, NamesRoundTrip) {
  for (Splitting sp : {Splitting::Homogeneous, Splitting::SlRkc, Splitting::SlRk2Rkc, Splitting::Strang2dv}) {
    EXPECT_EQ(parse_splitting(to_string(sp)), sp);
  }
  for (InitKind k : {InitKind::TriMaxwellian, InitKind::Landau1d, InitKind::BumpTwoBeam, InitKind::BumpValentini,
                     InitKind::Landau2dv, InitKind::FourBeams2dv}) {
    EXPECT_EQ(parse_init(to_string(k)), k);
  }
}

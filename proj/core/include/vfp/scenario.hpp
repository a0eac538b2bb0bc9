#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vfp/mesh.hpp"
#include "vfp/rkc.hpp"

namespace vfp {

enum class Splitting { Homogeneous, SlRkc, SlRk2Rkc, Strang2dv };

std::string_view to_string(Splitting s) noexcept;
Splitting parse_splitting(std::string_view name);

enum class InitKind {
  TriMaxwellian,   // M_{a,0,Tc} + M_{(1-a)/2,+-u,1}
  Landau1d,        // M_{1,0,1}(1 + eps cos kx)
  BumpTwoBeam,     // (a f_c + (1-a) f_h)(1 + beta cos kx)
  BumpValentini,   // (M_{n1,0,1} + M_{n2/2,+-u,0.2})(1 + eps cos kx)
  Landau2dv,       // M_{1,0,0,1}(1 + eps cos kx)
  FourBeams2dv,    // ((1-a)/4 sum M_{1,+-3,+-3,1/2} + a M_{1,0,0,1})(1 + eps cos kx)
};

std::string_view to_string(InitKind k) noexcept;
InitKind parse_init(std::string_view name);

struct Scenario {
  std::string name;
  int dims = 0;  // 0 homogeneous, 1 = 1dx-1dv, 2 = 1dx-2dv
  double k = 0.5;  // L = 2 pi / k
  int nx = 128;
  int nv = 256;
  double v_max = 12.0;
  double nu = 0.1;
  Splitting splitting = Splitting::Homogeneous;
  Method integrator = Method::Rkc2;
  double eta = 0.15;
  int order = 2;
  bool adaptive = true;
  double dt = 0.1;  // fixed step, or unused when adaptive
  double tol = 1e-6;
  double dt0 = 1e-3;
  double dt_max = 0.0;  // 0 = unbounded
  double cfl = 0.8;     // sl-rk2-rkc velocity stage: |E| h / dv <= cfl
  double t_end = 100.0;
  int cadence = 1;  // accepted steps per diagnostics row
  int stages = 0;   // fixed RKC stage count, 0 = automatic

  InitKind init = InitKind::TriMaxwellian;
  double alpha = 0.9;
  double t_c = 0.2;
  double beta = 0.5;
  double gamma = 10.0;
  double n1 = 0.97;
  double n2 = 0.03;
  double u_beam = 4.0;
  double eps = 1e-3;

  double length() const;
  PhaseGrid grid() const;
  Initializer initializer() const;
  /// Throws InvalidConfig for inconsistent combinations.
  void validate() const;
};

/// Built-in names: hom-relax, landau-1d, bump-2beam, bump-valentini,
/// landau-2dv, beams-2dv. Throws UnknownScenario.
Scenario builtin_scenario(std::string_view name);
std::vector<std::string> builtin_names();

/// Sets one key. Throws ParseError for unknown keys or unparsable values.
void apply_setting(Scenario& s, std::string_view key, std::string_view value);

/// Flat "key = value" text, '#' comments. A `scenario` key selects the
/// built-in base and must come first when present.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Inverse of parse_scenario.
std::string format_scenario(const Scenario& s);

}  // namespace vfp

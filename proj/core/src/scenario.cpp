#include "vfp/scenario.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "vfp/error.hpp"
#include "vfp/io.hpp"

namespace vfp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double maxwellian_1d(double rho, double u, double T, double v) {
  const double w = v - u;
  return rho / std::sqrt(kTwoPi * T) * std::exp(-w * w / (2.0 * T));
}

double maxwellian_2d(double rho, double ux, double uy, double T, double vx, double vy) {
  const double wx = vx - ux, wy = vy - uy;
  return rho / (kTwoPi * T) * std::exp(-(wx * wx + wy * wy) / (2.0 * T));
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_real(std::string_view key, std::string_view v) {
  double out = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty()) {
    raise(ErrorKind::ParseError, "value '" + std::string(v) + "' for " + std::string(key) + " is not a number");
  }
  return out;
}

int to_int(std::string_view key, std::string_view v) {
  int out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty()) {
    raise(ErrorKind::ParseError, "value '" + std::string(v) + "' for " + std::string(key) + " is not an integer");
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  raise(ErrorKind::ParseError, "value '" + std::string(v) + "' for " + std::string(key) + " is not a boolean");
}

}  // namespace

std::string_view to_string(Splitting s) noexcept {
  switch (s) {
    case Splitting::Homogeneous: return "homogeneous";
    case Splitting::SlRkc: return "sl-rkc";
    case Splitting::SlRk2Rkc: return "sl-rk2-rkc";
    case Splitting::Strang2dv: return "strang-2dv";
  }
  return "?";
}

Splitting parse_splitting(std::string_view name) {
  for (Splitting s : {Splitting::Homogeneous, Splitting::SlRkc, Splitting::SlRk2Rkc, Splitting::Strang2dv}) {
    if (to_string(s) == name) return s;
  }
  raise(ErrorKind::ParseError, "unknown splitting '" + std::string(name) + "'");
}

std::string_view to_string(InitKind k) noexcept {
  switch (k) {
    case InitKind::TriMaxwellian: return "tri-maxwellian";
    case InitKind::Landau1d: return "landau-1d";
    case InitKind::BumpTwoBeam: return "bump-2beam";
    case InitKind::BumpValentini: return "bump-valentini";
    case InitKind::Landau2dv: return "landau-2dv";
    case InitKind::FourBeams2dv: return "beams-2dv";
  }
  return "?";
}

InitKind parse_init(std::string_view name) {
  for (InitKind k : {InitKind::TriMaxwellian, InitKind::Landau1d, InitKind::BumpTwoBeam, InitKind::BumpValentini,
                     InitKind::Landau2dv, InitKind::FourBeams2dv}) {
    if (to_string(k) == name) return k;
  }
  raise(ErrorKind::ParseError, "unknown initial condition '" + std::string(name) + "'");
}

double Scenario::length() const { return kTwoPi / k; }

PhaseGrid Scenario::grid() const { return build_phase_grid(dims == 0 ? 1.0 : length(), nx, v_max, nv, dims); }

Initializer Scenario::initializer() const {
  const Scenario s = *this;
  switch (init) {
    case InitKind::TriMaxwellian:
      return [s](double, double v, double) {
        const double side = 0.5 * (1.0 - s.alpha);
        return maxwellian_1d(s.alpha, 0.0, s.t_c, v) + maxwellian_1d(side, s.u_beam, 1.0, v) +
               maxwellian_1d(side, -s.u_beam, 1.0, v);
      };
    case InitKind::Landau1d:
      return [s](double x, double v, double) {
        return maxwellian_1d(1.0, 0.0, 1.0, v) * (1.0 + s.eps * std::cos(s.k * x));
      };
    case InitKind::BumpTwoBeam: {
      // rho_h = int_{-vmax}^{vmax} v^g e^{-v^2/2} / sqrt(2 pi) dv for even g.
      const double a = 0.5 * (s.gamma + 1.0);
      const double rho_h = std::pow(2.0, 0.5 * s.gamma) * boost::math::tgamma(a) / std::sqrt(std::numbers::pi) *
                           boost::math::gamma_p(a, 0.5 * s.v_max * s.v_max);
      return [s, rho_h](double x, double v, double) {
        const double fc = maxwellian_1d(1.0, 0.0, s.t_c, v);
        const double fh = std::pow(v, s.gamma) * std::exp(-0.5 * v * v) / (rho_h * std::sqrt(kTwoPi));
        return (s.alpha * fc + (1.0 - s.alpha) * fh) * (1.0 + s.beta * std::cos(s.k * x));
      };
    }
    case InitKind::BumpValentini:
      return [s](double x, double v, double) {
        const double g = maxwellian_1d(s.n1, 0.0, 1.0, v) + maxwellian_1d(0.5 * s.n2, s.u_beam, 0.2, v) +
                         maxwellian_1d(0.5 * s.n2, -s.u_beam, 0.2, v);
        return g * (1.0 + s.eps * std::cos(s.k * x));
      };
    case InitKind::Landau2dv:
      return [s](double x, double vx, double vy) {
        return maxwellian_2d(1.0, 0.0, 0.0, 1.0, vx, vy) * (1.0 + s.eps * std::cos(s.k * x));
      };
    case InitKind::FourBeams2dv:
      return [s](double x, double vx, double vy) {
        double beams = 0.0;
        for (double sx : {-3.0, 3.0}) {
          for (double sy : {-3.0, 3.0}) beams += maxwellian_2d(1.0, sx, sy, 0.5, vx, vy);
        }
        const double g = 0.25 * (1.0 - s.alpha) * beams + s.alpha * maxwellian_2d(1.0, 0.0, 0.0, 1.0, vx, vy);
        return g * (1.0 + s.eps * std::cos(s.k * x));
      };
  }
  raise(ErrorKind::InvalidConfig, "unhandled initial condition");
}

void Scenario::validate() const {
  auto bad = [](const std::string& msg) { raise(ErrorKind::InvalidConfig, msg); };
  if (dims < 0 || dims > 2) bad("dims must be 0, 1 or 2");
  const bool two_v = init == InitKind::Landau2dv || init == InitKind::FourBeams2dv;
  if (two_v != (dims == 2)) bad("initial condition " + std::string(to_string(init)) + " does not match dims");
  if (dims == 0 && init != InitKind::TriMaxwellian) bad("homogeneous runs use the tri-maxwellian datum");
  if (dims != 0 && init == InitKind::TriMaxwellian) bad("the tri-maxwellian datum is homogeneous");
  if (dims == 0 && splitting != Splitting::Homogeneous) bad("homogeneous runs need splitting=homogeneous");
  if (dims == 1 && splitting != Splitting::SlRkc && splitting != Splitting::SlRk2Rkc) {
    bad("1dx-1dv runs need splitting sl-rkc or sl-rk2-rkc");
  }
  if (dims == 2 && splitting != Splitting::Strang2dv) bad("1dx-2dv runs need splitting=strang-2dv");
  if (order != 2 && order != 4) bad("collision order must be 2 or 4");
  if (order == 4 && dims == 2) bad("order 4 is available for one velocity dimension only");
  if (!(nu >= 0.0) || !std::isfinite(nu)) bad("nu must be finite and non-negative");
  if (!(k > 0.0) || !std::isfinite(k)) bad("k must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) bad("t_end must be finite and non-negative");
  if (cadence < 1) bad("cadence must be at least 1");
  if (stages != 0 && stages < 2) bad("stages must be 0 (automatic) or at least 2");
  if (!(eta >= 0.0)) bad("eta must be non-negative");
  if (adaptive) {
    if (!(tol > 0.0)) bad("tol must be positive");
    if (!(dt0 > 0.0)) bad("dt0 must be positive");
  } else if (!(dt > 0.0)) {
    bad("dt must be positive");
  }
  if (!(dt_max >= 0.0)) bad("dt_max must be non-negative");
  if (!(cfl > 0.0)) bad("cfl must be positive");
  if (init == InitKind::BumpTwoBeam) {
    if (gamma < 0.0 || std::fmod(gamma, 2.0) != 0.0) bad("gamma must be a non-negative even integer");
  }
}

Scenario builtin_scenario(std::string_view name) {
  Scenario s;
  s.name = std::string(name);
  if (name == "hom-relax") {
    s.dims = 0;
    s.v_max = 12.0;
    s.nv = 256;
    s.nu = 0.1;
    s.init = InitKind::TriMaxwellian;
    s.t_end = 100.0;
  } else if (name == "landau-1d") {
    s.dims = 1;
    s.k = 0.5;
    s.nx = 128;
    s.nv = 256;
    s.v_max = 12.0;
    s.nu = 0.0;
    s.splitting = Splitting::SlRk2Rkc;
    s.adaptive = false;
    s.dt = 0.1;
    s.t_end = 60.0;
    s.init = InitKind::Landau1d;
    s.eps = 1e-3;
  } else if (name == "bump-2beam") {
    s.dims = 1;
    s.k = 0.5;
    s.nx = 128;
    s.nv = 256;
    s.v_max = 14.0;
    s.nu = 0.1;
    s.splitting = Splitting::SlRk2Rkc;
    s.t_end = 200.0;
    s.init = InitKind::BumpTwoBeam;
    s.alpha = 0.9;
    s.t_c = 0.2;
    s.gamma = 10.0;
    s.beta = 0.5;
  } else if (name == "bump-valentini") {
    s.dims = 1;
    s.k = kTwoPi / 22.0;
    s.nx = 128;
    s.nv = 256;
    s.v_max = 14.0;
    s.nu = 0.0;
    s.splitting = Splitting::SlRk2Rkc;
    s.adaptive = false;
    s.dt = 1.0;
    s.t_end = 300.0;
    s.init = InitKind::BumpValentini;
    s.n1 = 0.97;
    s.n2 = 0.03;
    s.u_beam = 4.0;
    s.eps = 0.00056;
  } else if (name == "landau-2dv") {
    s.dims = 2;
    s.k = 0.3;
    s.nx = 32;
    s.nv = 64;
    s.v_max = 7.0;
    s.nu = 0.0;
    s.splitting = Splitting::Strang2dv;
    s.adaptive = false;
    s.dt = 0.3;
    s.t_end = 50.0;
    s.init = InitKind::Landau2dv;
    s.eps = 1e-4;
  } else if (name == "beams-2dv") {
    s.dims = 2;
    s.k = 0.5;
    s.nx = 32;
    s.nv = 96;
    s.v_max = 18.0;
    s.nu = 0.1;
    s.splitting = Splitting::Strang2dv;
    s.adaptive = false;
    s.dt = 0.5;
    s.stages = 5;
    s.t_end = 50.0;
    s.init = InitKind::FourBeams2dv;
    s.alpha = 0.5;
    s.eps = 0.01;
  } else {
    raise(ErrorKind::UnknownScenario, "no built-in scenario named '" + std::string(name) + "'");
  }
  return s;
}

std::vector<std::string> builtin_names() {
  return {"hom-relax", "landau-1d", "bump-2beam", "bump-valentini", "landau-2dv", "beams-2dv"};
}

void apply_setting(Scenario& s, std::string_view key, std::string_view value) {
  if (key == "name") s.name = std::string(value);
  else if (key == "dims") s.dims = to_int(key, value);
  else if (key == "k") s.k = to_real(key, value);
  else if (key == "L") s.k = kTwoPi / to_real(key, value);
  else if (key == "nx") s.nx = to_int(key, value);
  else if (key == "nv") s.nv = to_int(key, value);
  else if (key == "vmax") s.v_max = to_real(key, value);
  else if (key == "nu") s.nu = to_real(key, value);
  else if (key == "splitting") s.splitting = parse_splitting(value);
  else if (key == "integrator") {
    s.integrator = parse_method(value);
    s.eta = default_eta(s.integrator);
  } else if (key == "eta") s.eta = to_real(key, value);
  else if (key == "order") s.order = to_int(key, value);
  else if (key == "adaptive") s.adaptive = to_bool(key, value);
  else if (key == "dt") s.dt = to_real(key, value);
  else if (key == "tol") s.tol = to_real(key, value);
  else if (key == "dt0") s.dt0 = to_real(key, value);
  else if (key == "dt_max") s.dt_max = to_real(key, value);
  else if (key == "cfl") s.cfl = to_real(key, value);
  else if (key == "t_end") s.t_end = to_real(key, value);
  else if (key == "cadence") s.cadence = to_int(key, value);
  else if (key == "stages") s.stages = to_int(key, value);
  else if (key == "init") s.init = parse_init(value);
  else if (key == "alpha") s.alpha = to_real(key, value);
  else if (key == "t_c") s.t_c = to_real(key, value);
  else if (key == "beta") s.beta = to_real(key, value);
  else if (key == "gamma") s.gamma = to_real(key, value);
  else if (key == "n1") s.n1 = to_real(key, value);
  else if (key == "n2") s.n2 = to_real(key, value);
  else if (key == "u_beam") s.u_beam = to_real(key, value);
  else if (key == "eps") s.eps = to_real(key, value);
  else raise(ErrorKind::ParseError, "unknown key '" + std::string(key) + "'");
}

Scenario parse_scenario(std::string_view text) {
  Scenario s = builtin_scenario("hom-relax");
  s.name = "custom";
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool seen_setting = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      raise(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key == "scenario") {
      if (seen_setting) raise(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": scenario must come first");
      s = builtin_scenario(value);
    } else {
      apply_setting(s, key, value);
    }
    seen_setting = true;
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::IoFailure, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string format_scenario(const Scenario& s) {
  std::ostringstream o;
  o << "name = " << s.name << '\n'
    << "dims = " << s.dims << '\n'
    << "k = " << format_real(s.k) << '\n'
    << "nx = " << s.nx << '\n'
    << "nv = " << s.nv << '\n'
    << "vmax = " << format_real(s.v_max) << '\n'
    << "nu = " << format_real(s.nu) << '\n'
    << "splitting = " << to_string(s.splitting) << '\n'
    << "integrator = " << to_string(s.integrator) << '\n'
    << "eta = " << format_real(s.eta) << '\n'
    << "order = " << s.order << '\n'
    << "adaptive = " << (s.adaptive ? "true" : "false") << '\n'
    << "dt = " << format_real(s.dt) << '\n'
    << "tol = " << format_real(s.tol) << '\n'
    << "dt0 = " << format_real(s.dt0) << '\n'
    << "dt_max = " << format_real(s.dt_max) << '\n'
    << "cfl = " << format_real(s.cfl) << '\n'
    << "t_end = " << format_real(s.t_end) << '\n'
    << "cadence = " << s.cadence << '\n'
    << "stages = " << s.stages << '\n'
    << "init = " << to_string(s.init) << '\n'
    << "alpha = " << format_real(s.alpha) << '\n'
    << "t_c = " << format_real(s.t_c) << '\n'
    << "beta = " << format_real(s.beta) << '\n'
    << "gamma = " << format_real(s.gamma) << '\n'
    << "n1 = " << format_real(s.n1) << '\n'
    << "n2 = " << format_real(s.n2) << '\n'
    << "u_beam = " << format_real(s.u_beam) << '\n'
    << "eps = " << format_real(s.eps) << '\n';
  return o.str();
}

}  // namespace vfp

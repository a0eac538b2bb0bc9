#include "vfp/io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "vfp/error.hpp"

namespace vfp {

namespace fs = std::filesystem;

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) raise(ErrorKind::IoFailure, "cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::IoFailure, "cannot open " + path.string());
  return in;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) raise(ErrorKind::IoFailure, "write to " + path.string() + " failed");
}

double parse_real(std::string_view tok, const std::string& where) {
  double v = 0.0;
  const char* b = tok.data();
  const char* e = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) {
    // from_chars rejects "inf"/"nan" spellings of some writers; strtod does not.
    std::string s(tok);
    char* end = nullptr;
    errno = 0;
    v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || s.empty()) raise(ErrorKind::ParseError, "bad number '" + s + "' in " + where);
  }
  return v;
}

long long parse_int(std::string_view tok, const std::string& where) {
  long long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    raise(ErrorKind::ParseError, "bad integer '" + std::string(tok) + "' in " + where);
  }
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string series_header(int velocity_dims) {
  std::string h = "t,mass,momentum_x";
  if (velocity_dims == 2) h += ",momentum_y";
  h += ",e_kin,e_elec,e_tot,entropy,l2_maxwellian,dt,stages,nrhs";
  return h;
}

void write_series(const fs::path& path, const DiagSeries& series) {
  std::ofstream out = open_out(path);
  out << series_header(series.velocity_dims) << '\n';
  for (const DiagRow& r : series.rows) {
    out << format_real(r.t) << ',' << format_real(r.mass) << ',' << format_real(r.momentum_x);
    if (series.velocity_dims == 2) out << ',' << format_real(r.momentum_y);
    out << ',' << format_real(r.e_kin) << ',' << format_real(r.e_elec) << ',' << format_real(r.e_tot) << ','
        << format_real(r.entropy) << ',' << format_real(r.l2_maxwellian) << ',' << format_real(r.dt) << ','
        << r.stages << ',' << r.nrhs << '\n';
  }
  finish(out, path);
}

DiagSeries read_series(const fs::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) raise(ErrorKind::ParseError, path.string() + " is empty");
  DiagSeries s;
  if (line == series_header(1)) {
    s.velocity_dims = 1;
  } else if (line == series_header(2)) {
    s.velocity_dims = 2;
  } else {
    raise(ErrorKind::ParseError, "unexpected series header in " + path.string());
  }
  const std::size_t ncol = s.velocity_dims == 2 ? 12 : 11;
  const std::string where = path.string();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tok = split(line, ',');
    if (tok.size() != ncol) raise(ErrorKind::ParseError, "wrong column count in " + where);
    DiagRow r;
    std::size_t k = 0;
    r.t = parse_real(tok[k++], where);
    r.mass = parse_real(tok[k++], where);
    r.momentum_x = parse_real(tok[k++], where);
    if (s.velocity_dims == 2) r.momentum_y = parse_real(tok[k++], where);
    r.e_kin = parse_real(tok[k++], where);
    r.e_elec = parse_real(tok[k++], where);
    r.e_tot = parse_real(tok[k++], where);
    r.entropy = parse_real(tok[k++], where);
    r.l2_maxwellian = parse_real(tok[k++], where);
    r.dt = parse_real(tok[k++], where);
    r.stages = static_cast<int>(parse_int(tok[k++], where));
    r.nrhs = parse_int(tok[k++], where);
    s.rows.push_back(r);
  }
  return s;
}

void write_snapshot(const fs::path& path, const DistState& f, const FieldState* e) {
  std::ofstream out = open_out(path);
  const PhaseGrid& g = f.grid;
  const int nx = g.homogeneous() ? 0 : g.space().points();
  const double length = g.homogeneous() ? 0.0 : g.space().length();
  out << "vfp-snapshot dims=" << g.mode() << " nx=" << nx << " nv=" << g.velocity().cells()
      << " L=" << format_real(length) << " vmax=" << format_real(g.velocity().v_max()) << " t=" << format_real(f.time)
      << " field=" << (e ? 1 : 0) << '\n';
  const std::size_t m = g.column_size();
  for (std::size_t i = 0; i < g.columns(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      out << format_real(f.values[i * m + j]) << (j + 1 == m ? '\n' : ' ');
    }
  }
  if (e) {
    out << "E t=" << format_real(e->time) << '\n';
    for (std::size_t i = 0; i < e->values.size(); ++i) {
      out << format_real(e->values[i]) << (i + 1 == e->values.size() ? '\n' : ' ');
    }
  }
  finish(out, path);
}

Snapshot read_snapshot(const fs::path& path) {
  std::ifstream in = open_in(path);
  const std::string where = path.string();
  std::string line;
  if (!std::getline(in, line)) raise(ErrorKind::ParseError, where + " is empty");
  std::istringstream hs(line);
  std::string magic;
  hs >> magic;
  if (magic != "vfp-snapshot") raise(ErrorKind::ParseError, where + " is not a snapshot");
  std::map<std::string, std::string> kv;
  std::string tok;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) raise(ErrorKind::ParseError, "bad header field '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  for (const char* key : {"dims", "nx", "nv", "L", "vmax", "t", "field"}) {
    if (!kv.count(key)) raise(ErrorKind::ParseError, std::string("snapshot header lacks ") + key);
  }
  const int dims = static_cast<int>(parse_int(kv["dims"], where));
  const PhaseGrid grid = build_phase_grid(parse_real(kv["L"], where), static_cast<int>(parse_int(kv["nx"], where)),
                                          parse_real(kv["vmax"], where), static_cast<int>(parse_int(kv["nv"], where)),
                                          dims);
  Snapshot snap{DistState(grid, parse_real(kv["t"], where)), std::nullopt};
  for (double& v : snap.f.values) {
    if (!(in >> tok)) raise(ErrorKind::ParseError, where + " ends before all values were read");
    v = parse_real(tok, where);
  }
  if (parse_int(kv["field"], where) != 0) {
    if (!(in >> tok) || tok != "E") raise(ErrorKind::ParseError, where + " lacks the field block");
    if (!(in >> tok) || tok.rfind("t=", 0) != 0) raise(ErrorKind::ParseError, where + " field block lacks t=");
    FieldState e;
    e.time = parse_real(std::string_view(tok).substr(2), where);
    e.values.resize(grid.space().size());
    for (double& v : e.values) {
      if (!(in >> tok)) raise(ErrorKind::ParseError, where + " ends inside the field block");
      v = parse_real(tok, where);
    }
    snap.e = std::move(e);
  }
  return snap;
}

void write_matrix(const fs::path& path, const DenseMatrix& a, int nv) {
  std::ofstream out = open_out(path);
  out << nv << ' ' << a.rows << ' ' << a.cols << '\n';
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) out << format_real(a(i, j)) << (j + 1 == a.cols ? '\n' : ' ');
  }
  finish(out, path);
}

DenseMatrix read_matrix(const fs::path& path, int* nv) {
  std::ifstream in = open_in(path);
  const std::string where = path.string();
  std::string a, b, c;
  if (!(in >> a >> b >> c)) raise(ErrorKind::ParseError, where + " lacks the matrix header");
  DenseMatrix m(static_cast<std::size_t>(parse_int(b, where)), static_cast<std::size_t>(parse_int(c, where)));
  if (nv) *nv = static_cast<int>(parse_int(a, where));
  std::string tok;
  for (double& v : m.data) {
    if (!(in >> tok)) raise(ErrorKind::ParseError, where + " ends before all entries were read");
    v = parse_real(tok, where);
  }
  return m;
}

void write_stability(const fs::path& scan_path, const fs::path& trace_path, const StabilityScan& scan) {
  {
    std::ofstream out = open_out(scan_path);
    out << "re_z,im_z,abs_R\n";
    for (std::size_t i = 0; i < scan.re.size(); ++i) {
      out << format_real(scan.re[i]) << ',' << format_real(scan.im[i]) << ',' << format_real(scan.abs_r[i]) << '\n';
    }
    finish(out, scan_path);
  }
  std::ofstream out = open_out(trace_path);
  out << "z,R\n";
  for (std::size_t i = 0; i < scan.trace_z.size(); ++i) {
    out << format_real(scan.trace_z[i]) << ',' << format_real(scan.trace_r[i]) << '\n';
  }
  finish(out, trace_path);
}

void write_plotspec(const fs::path& path, const std::string& series_file, int velocity_dims, bool spatial) {
  std::ofstream out = open_out(path);
  out << "series " << series_file << '\n';
  out << "x t\n";
  if (spatial) out << "logy e_elec\n";
  out << "deviation mass momentum_x" << (velocity_dims == 2 ? " momentum_y" : "") << " e_tot\n";
  out << "y entropy\n";
  out << "logy l2_maxwellian\n";
  out << "logy dt\n";
  out << "y stages\n";
  finish(out, path);
}

}  // namespace vfp

#include "hylos/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hylos/error.hpp"

namespace hylos {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  require(out.good(), ErrorCode::io_error, "cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::io_error, "cannot open '" + path.string() + "' for reading");
  return in;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double parse_real(const std::string& s, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  require(end != s.c_str() && *end == '\0', ErrorCode::io_error, "bad number '" + s + "' in " + where);
  return v;
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_snapshot(const std::filesystem::path& path, const ComplexField& field) {
  const Grid& g = field.grid();
  auto out = open_out(path);
  std::string counts, lengths;
  for (int d = 0; d < g.dim(); ++d) {
    counts += (d ? "x" : "") + std::to_string(g.count(d));
    lengths += (d ? "x" : "") + format_real(g.length(d));
  }
  out << "# " << g.dim() << ',' << counts << ',' << lengths << '\n';
  for (std::size_t n = 0; n < g.size(); ++n) {
    const Point x = g.position(n);
    for (int d = 0; d < g.dim(); ++d) out << format_real(x[d]) << ',';
    out << format_real(field[n].real()) << ',' << format_real(field[n].imag()) << '\n';
  }
  require(out.good(), ErrorCode::io_error, "write failed for '" + path.string() + "'");
}

ComplexField read_snapshot(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)) && line.rfind("# ", 0) == 0, ErrorCode::io_error,
          "snapshot header missing in '" + path.string() + "'");
  const auto head = split(line.substr(2), ',');
  require(head.size() == 3, ErrorCode::io_error, "snapshot header must be '# dim,counts,lengths'");
  const int dim = std::atoi(head[0].c_str());
  const auto cs = split(head[1], 'x');
  const auto ls = split(head[2], 'x');
  require(dim >= 1 && dim <= 3 && static_cast<int>(cs.size()) == dim && static_cast<int>(ls.size()) == dim,
          ErrorCode::io_error, "inconsistent snapshot header '" + line + "'");
  std::vector<std::size_t> counts;
  std::vector<double> lengths;
  for (int d = 0; d < dim; ++d) {
    counts.push_back(static_cast<std::size_t>(std::stoull(cs[d])));
    lengths.push_back(parse_real(ls[d], "snapshot header"));
  }
  const Grid g = Grid::make(dim, lengths, counts);
  ComplexField f(g);
  std::size_t n = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    require(cols.size() == static_cast<std::size_t>(dim + 2), ErrorCode::io_error, "bad snapshot row " + std::to_string(n));
    require(n < g.size(), ErrorCode::io_error, "snapshot has more rows than nodes");
    f[n++] = cplx{parse_real(cols[dim], "snapshot"), parse_real(cols[dim + 1], "snapshot")};
  }
  require(n == g.size(), ErrorCode::io_error, "snapshot has fewer rows than nodes");
  return f;
}

void write_profile(const std::filesystem::path& path, const RadialProfile& p) {
  auto out = open_out(path);
  out << "# " << p.dim << ',' << format_real(p.omega) << ',' << (p.equation == Equation::ns ? "NS" : "NKG") << ','
      << format_real(p.u0) << ',' << format_real(p.sigma) << '\n';
  for (std::size_t i = 0; i < p.r.size(); ++i) out << format_real(p.r[i]) << ',' << format_real(p.u[i]) << '\n';
  require(out.good(), ErrorCode::io_error, "write failed for '" + path.string() + "'");
}

RadialProfile read_profile(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)) && line.rfind("# ", 0) == 0, ErrorCode::io_error,
          "profile header missing in '" + path.string() + "'");
  const auto head = split(line.substr(2), ',');
  require(head.size() == 5, ErrorCode::io_error, "profile header must be '# N,omega,equation,u0,sigma'");
  RadialProfile p;
  p.dim = std::atoi(head[0].c_str());
  p.omega = parse_real(head[1], "profile header");
  require(head[2] == "NS" || head[2] == "NKG", ErrorCode::io_error, "profile equation must be NS or NKG");
  p.equation = head[2] == "NS" ? Equation::ns : Equation::nkg;
  p.u0 = parse_real(head[3], "profile header");
  p.sigma = parse_real(head[4], "profile header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    require(cols.size() == 2, ErrorCode::io_error, "profile rows must be 'r,u'");
    p.r.push_back(parse_real(cols[0], "profile"));
    p.u.push_back(parse_real(cols[1], "profile"));
  }
  require(p.r.size() >= 4, ErrorCode::io_error, "profile needs at least four rows");
  p.h_r = p.r[1] - p.r[0];
  // Slopes are not stored; rebuild them by centered differences.
  p.du.assign(p.u.size(), 0.0);
  for (std::size_t i = 1; i + 1 < p.u.size(); ++i) p.du[i] = (p.u[i + 1] - p.u[i - 1]) / (2.0 * p.h_r);
  p.du.back() = (p.u.back() - p.u[p.u.size() - 2]) / p.h_r;
  return p;
}

void write_diagnostics(const std::filesystem::path& path, const std::vector<DiagnosticsRow>& rows) {
  auto out = open_out(path);
  out << diagnostics_header() << '\n';
  for (const auto& r : rows) out << to_csv(r) << '\n';
  require(out.good(), ErrorCode::io_error, "write failed for '" + path.string() + "'");
}

}  // namespace hylos

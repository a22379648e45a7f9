#include "gcauchy/export.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "gcauchy/errors.hpp"

namespace gcauchy {

namespace {

bool has_point(NodeState s) { return s == NodeState::ok || s == NodeState::singular; }

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double to_double(const std::string& s, const std::string& where) {
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw ConfigError(where + ": bad number '" + s + "'");
  return x;
}

const char* kind_name(CaseKind k) { return to_string(k); }

CaseKind kind_from(const std::string& s) {
  for (CaseKind k : {CaseKind::cmc_timelike, CaseKind::cmc_spacelike, CaseKind::cmc_null, CaseKind::psph_principal,
                     CaseKind::psph_general, CaseKind::psph_asymptotic})
    if (s == kind_name(k)) return k;
  throw ConfigError("frames cache: unknown kind '" + s + "'");
}

}  // namespace

std::string format_g17(double x) { return fmt::format("{:.17g}", x); }

void write_obj(std::ostream& os, const SurfaceSamples& m) {
  const GridSpec& g = m.grid;
  std::vector<int> id(g.size(), 0);
  fmt::memory_buffer b;
  fmt::format_to(std::back_inserter(b), "# {} surface, {}x{} grid\n", kind_name(m.kind), g.nx, g.ny);
  int next = 1;
  for (int k = 0; k < g.size(); ++k) {
    if (m.state[k] != NodeState::ok) continue;
    id[k] = next++;
    const auto& p = m.point[k];
    fmt::format_to(std::back_inserter(b), "v {:.17g} {:.17g} {:.17g}\n", p[0], p[1], p[2]);
  }
  for (int k = 0; k < g.size(); ++k) {
    if (!id[k]) continue;
    const auto& n = m.normal[k];
    fmt::format_to(std::back_inserter(b), "vn {:.17g} {:.17g} {:.17g}\n", n[0], n[1], n[2]);
  }
  for (int j = 0; j + 1 < g.ny; ++j)
    for (int i = 0; i + 1 < g.nx; ++i) {
      const int a = id[g.index(i, j)], c = id[g.index(i + 1, j)], d = id[g.index(i + 1, j + 1)],
                e = id[g.index(i, j + 1)];
      if (a && c && d && e) fmt::format_to(std::back_inserter(b), "f {0}//{0} {1}//{1} {2}//{2} {3}//{3}\n", a, c, d, e);
    }
  os.write(b.data(), static_cast<std::streamsize>(b.size()));
}

void write_mesh_csv(std::ostream& os, const SurfaceSamples& m) {
  const GridSpec& g = m.grid;
  fmt::memory_buffer b;
  fmt::format_to(std::back_inserter(b), "x,y,u,v,fx,fy,fz,nx,ny,nz,mask\n");
  const double nan = std::nan("");
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const int k = g.index(i, j);
      const double x = g.x(i), y = g.y(j);
      const bool pt = has_point(m.state[k]);
      const Coords3 p = pt ? m.point[k] : Coords3{nan, nan, nan};
      const Coords3 n = pt ? m.normal[k] : Coords3{nan, nan, nan};
      fmt::format_to(std::back_inserter(b), "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{}\n", x,
                     y, (x - y) / 2, (x + y) / 2, p[0], p[1], p[2], n[0], n[1], n[2], static_cast<int>(m.state[k]));
    }
  os.write(b.data(), static_cast<std::streamsize>(b.size()));
}

void write_frames_cache(std::ostream& os, const SurfaceSamples& m) {
  const GridSpec& g = m.grid;
  fmt::memory_buffer b;
  auto out = std::back_inserter(b);
  fmt::format_to(out, "# kind = {}\n", kind_name(m.kind));
  fmt::format_to(out, "# metric = {}\n", m.metric == Metric::minkowski ? "minkowski" : "euclidean");
  fmt::format_to(out, "# H = {:.17g}\n# lambda0 = {:.17g}\n", m.H, m.lambda0);
  fmt::format_to(out, "# x_lo = {:.17g}\n# x_hi = {:.17g}\n# y_lo = {:.17g}\n# y_hi = {:.17g}\n", g.x_lo, g.x_hi, g.y_lo,
                 g.y_hi);
  fmt::format_to(out, "# nx = {}\n# ny = {}\n# gauged = {}\n", g.nx, g.ny, m.scalars.empty() ? 0 : 1);
  fmt::format_to(out, "i,j,state,eps1,eps2,conformal,theta,len_fx,len_fy\n");
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const int k = g.index(i, j);
      const NodeScalars s = m.scalars.empty() ? NodeScalars{} : m.scalars[k];
      fmt::format_to(out, "{},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", i, j, static_cast<int>(m.state[k]),
                     s.eps1, s.eps2, s.conformal, s.theta, s.fx, s.fy);
    }
  os.write(b.data(), static_cast<std::streamsize>(b.size()));
}

SurfaceSamples read_mesh(const std::string& mesh_path, const std::string& frames_path) {
  std::ifstream ff(frames_path);
  if (!ff) throw ConfigError("cannot read frames cache '" + frames_path + "'");
  std::map<std::string, std::string> meta;
  std::string line;
  std::vector<std::vector<std::string>> rows;
  bool header = false;
  while (std::getline(ff, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto key = line.substr(1, eq - 1), val = line.substr(eq + 1);
      key.erase(0, key.find_first_not_of(' '));
      key.erase(key.find_last_not_of(' ') + 1);
      val.erase(0, val.find_first_not_of(' '));
      meta[key] = val;
      continue;
    }
    if (!header) {
      header = true;
      continue;
    }
    rows.push_back(split_csv(line));
  }
  for (const char* k : {"kind", "metric", "H", "lambda0", "x_lo", "x_hi", "y_lo", "y_hi", "nx", "ny", "gauged"})
    if (!meta.count(k)) throw ConfigError(std::string("frames cache: missing '") + k + "'");

  SurfaceSamples m;
  m.kind = kind_from(meta["kind"]);
  m.metric = meta["metric"] == "minkowski" ? Metric::minkowski : Metric::euclidean;
  m.H = to_double(meta["H"], "frames cache");
  m.lambda0 = to_double(meta["lambda0"], "frames cache");
  GridSpec& g = m.grid;
  g.x_lo = to_double(meta["x_lo"], "frames cache");
  g.x_hi = to_double(meta["x_hi"], "frames cache");
  g.y_lo = to_double(meta["y_lo"], "frames cache");
  g.y_hi = to_double(meta["y_hi"], "frames cache");
  g.nx = static_cast<int>(to_double(meta["nx"], "frames cache"));
  g.ny = static_cast<int>(to_double(meta["ny"], "frames cache"));
  if (g.nx < 1 || g.ny < 1 || static_cast<int>(rows.size()) != g.size())
    throw ConfigError("frames cache: expected " + std::to_string(g.size()) + " rows");
  const bool gauged = meta["gauged"] == "1";
  m.state.resize(g.size());
  if (gauged) m.scalars.resize(g.size());
  for (const auto& r : rows) {
    if (r.size() != 9) throw ConfigError("frames cache: expected 9 columns");
    const int i = static_cast<int>(to_double(r[0], "frames cache")), j = static_cast<int>(to_double(r[1], "frames cache"));
    if (i < 0 || j < 0 || i >= g.nx || j >= g.ny) throw ConfigError("frames cache: node out of range");
    const int k = g.index(i, j);
    const int st = static_cast<int>(to_double(r[2], "frames cache"));
    if (st < 0 || st > 3) throw ConfigError("frames cache: bad state");
    m.state[k] = static_cast<NodeState>(st);
    if (gauged)
      m.scalars[k] = {to_double(r[3], "frames cache"), to_double(r[4], "frames cache"), to_double(r[5], "frames cache"),
                      to_double(r[6], "frames cache"), to_double(r[7], "frames cache"), to_double(r[8], "frames cache")};
  }

  std::ifstream mf(mesh_path);
  if (!mf) throw ConfigError("cannot read mesh '" + mesh_path + "'");
  std::getline(mf, line);
  if (line != "x,y,u,v,fx,fy,fz,nx,ny,nz,mask") throw ConfigError("mesh csv: unexpected header");
  m.point.resize(g.size());
  m.normal.resize(g.size());
  int k = 0;
  while (std::getline(mf, line)) {
    if (line.empty()) continue;
    if (k >= g.size()) throw ConfigError("mesh csv: more rows than grid nodes");
    const auto r = split_csv(line);
    if (r.size() != 11) throw ConfigError("mesh csv: expected 11 columns");
    for (int c = 0; c < 3; ++c) {
      m.point[k][c] = to_double(r[4 + c], "mesh csv");
      m.normal[k][c] = to_double(r[7 + c], "mesh csv");
    }
    if (static_cast<int>(to_double(r[10], "mesh csv")) != static_cast<int>(m.state[k]))
      throw ConfigError("mesh csv: mask disagrees with the frames cache");
    ++k;
  }
  if (k != g.size()) throw ConfigError("mesh csv: expected " + std::to_string(g.size()) + " rows");
  return m;
}

}  // namespace gcauchy

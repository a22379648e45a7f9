#include "gcauchy/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "gcauchy/errors.hpp"

namespace gcauchy {

namespace {

std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("bad number '" + s + "' in " + what);
  }
  if (trim(s.substr(used)) != "") throw ConfigError("bad number '" + s + "' in " + what);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

Coords3 lin(double a, const Coords3& x, double b, const Coords3& y) {
  return {a * x[0] + b * y[0], a * x[1] + b * y[1], a * x[2] + b * y[2]};
}

double dot3(const Coords3& a, const Coords3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

}  // namespace

CurveSpec CurveSpec::parse(const std::string& text) {
  CurveSpec s;
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("empty curve spec");
  if (t.rfind("csv:", 0) == 0) {
    s.csv_path = t.substr(4);
    return s;
  }
  if (ends_with(t, ".csv")) {
    s.csv_path = t;
    return s;
  }
  const auto colon = t.find(':');
  s.name = trim(t.substr(0, colon));
  if (colon == std::string::npos) return s;
  for (const auto& kv : split(t.substr(colon + 1), ',')) {
    if (kv.empty()) continue;
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("curve parameter '" + kv + "' needs key=value");
    const std::string key = trim(kv.substr(0, eq));
    if (s.params.count(key)) throw ConfigError("curve parameter '" + key + "' given twice");
    s.params[key] = parse_number(trim(kv.substr(eq + 1)), "curve spec");
  }
  return s;
}

std::string CurveSpec::str() const {
  if (!csv_path.empty()) return "csv:" + csv_path;
  std::string out = name;
  char sep = ':';
  for (const auto& [k, v] : params) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += sep;
    out += k + "=" + buf;
    sep = ',';
  }
  return out;
}

std::vector<Coords3> diff1(const std::vector<Coords3>& v, double h) {
  const int n = static_cast<int>(v.size());
  if (n < 5) throw ConfigError("need at least 5 samples for 4th-order differences");
  std::vector<Coords3> d(n);
  static const double e0[5] = {-25, 48, -36, 16, -3};
  static const double e1[5] = {-3, -10, 18, -6, 1};
  for (int c = 0; c < 3; ++c) {
    for (int i = 2; i < n - 2; ++i)
      d[i][c] = (v[i - 2][c] - 8 * v[i - 1][c] + 8 * v[i + 1][c] - v[i + 2][c]) / (12 * h);
    double l0 = 0, l1 = 0, r0 = 0, r1 = 0;
    for (int k = 0; k < 5; ++k) {
      l0 += e0[k] * v[k][c];
      l1 += e1[k] * v[k][c];
      r0 -= e0[k] * v[n - 1 - k][c];
      r1 -= e1[k] * v[n - 1 - k][c];
    }
    d[0][c] = l0 / (12 * h);
    d[1][c] = l1 / (12 * h);
    d[n - 1][c] = r0 / (12 * h);
    d[n - 2][c] = r1 / (12 * h);
  }
  return d;
}

std::vector<Coords3> diff2(const std::vector<Coords3>& v, double h) {
  const int n = static_cast<int>(v.size());
  if (n < 6) throw ConfigError("need at least 6 samples for 4th-order second differences");
  std::vector<Coords3> d(n);
  static const double e0[6] = {45, -154, 214, -156, 61, -10};
  static const double e1[6] = {10, -15, -4, 14, -6, 1};
  const double h2 = 12 * h * h;
  for (int c = 0; c < 3; ++c) {
    for (int i = 2; i < n - 2; ++i)
      d[i][c] = (-v[i - 2][c] + 16 * v[i - 1][c] - 30 * v[i][c] + 16 * v[i + 1][c] - v[i + 2][c]) / h2;
    double l0 = 0, l1 = 0, r0 = 0, r1 = 0;
    for (int k = 0; k < 6; ++k) {
      l0 += e0[k] * v[k][c];
      l1 += e1[k] * v[k][c];
      r0 += e0[k] * v[n - 1 - k][c];
      r1 += e1[k] * v[n - 1 - k][c];
    }
    d[0][c] = l0 / h2;
    d[1][c] = l1 / h2;
    d[n - 1][c] = r0 / h2;
    d[n - 2][c] = r1 / h2;
  }
  return d;
}

CurveSamples read_curve_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open curve file '" + path + "'");
  CurveSamples s;
  std::string line;
  int lineno = 0;
  int columns = -1;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto cells = split(line, ',');
    if (columns < 0) {
      // header
      const bool has_field = cells.size() == 7;
      if ((cells.size() != 4 && !has_field) || cells[0] != "t" || cells[1] != "fx" || cells[2] != "fy" ||
          cells[3] != "fz")
        throw ConfigError(path + ": header must be t,fx,fy,fz[,vx,vy,vz]");
      if (has_field) {
        const bool v = cells[4] == "vx" && cells[5] == "vy" && cells[6] == "vz";
        const bool n = cells[4] == "nx" && cells[5] == "ny" && cells[6] == "nz";
        if (!v && !n) throw ConfigError(path + ": field columns must be vx,vy,vz");
      }
      columns = static_cast<int>(cells.size());
      continue;
    }
    if (static_cast<int>(cells.size()) != columns)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(columns) +
                        " columns");
    std::vector<double> x;
    for (const auto& c : cells) {
      const double v = parse_number(c, path + ":" + std::to_string(lineno));
      if (!std::isfinite(v)) throw ConfigError(path + ":" + std::to_string(lineno) + ": non-finite value");
      x.push_back(v);
    }
    s.t.push_back(x[0]);
    s.f.push_back({x[1], x[2], x[3]});
    if (columns == 7) s.w.push_back({x[4], x[5], x[6]});
  }
  if (columns < 0) throw ConfigError(path + ": empty file");
  return s;
}

namespace {

// degree-5 Lagrange interpolation through the six samples nearest to t
struct Interp {
  std::vector<double> t;
  double h;
  Coords3 at(const std::vector<Coords3>& v, double x) const {
    const int n = static_cast<int>(t.size());
    int i0 = static_cast<int>(std::floor((x - t[0]) / h)) - 2;
    i0 = std::clamp(i0, 0, n - 6);
    Coords3 out{0, 0, 0};
    for (int a = 0; a < 6; ++a) {
      double w = 1;
      for (int b = 0; b < 6; ++b)
        if (b != a) w *= (x - t[i0 + b]) / (t[i0 + a] - t[i0 + b]);
      for (int c = 0; c < 3; ++c) out[c] += w * v[i0 + a][c];
    }
    return out;
  }
};

}  // namespace

CurveData curve_from_samples(const std::string& name, Metric metric, const CurveSamples& s,
                             bool principal_normal) {
  const int n = static_cast<int>(s.t.size());
  if (n < 9) throw ConfigError("curve '" + name + "' has " + std::to_string(n) + " samples, need at least 9");
  const double h = (s.t.back() - s.t.front()) / (n - 1);
  if (!(h > 0)) throw ConfigError("curve '" + name + "': parameter must increase");
  for (int i = 0; i < n; ++i)
    if (std::abs(s.t[i] - (s.t.front() + i * h)) > 1e-9 * std::max(1.0, std::abs(s.t[i])) + 1e-6 * h)
      throw ConfigError("curve '" + name + "': parameter grid is not uniform near t = " +
                        std::to_string(s.t[i]));

  auto df = diff1(s.f, h), ddf = diff2(s.f, h);
  std::vector<Coords3> w = s.w;
  std::string label = metric == Metric::euclidean ? "N0" : "V";
  if (principal_normal) {
    if (metric != Metric::euclidean) throw ConfigError("principal-normal fill is only defined for Euclidean curves");
    w.assign(n, {});
    for (int i = 0; i < n; ++i) {
      const Coords3 p = lin(1, ddf[i], -dot3(ddf[i], df[i]) / dot3(df[i], df[i]), df[i]);
      const double len = std::sqrt(dot3(p, p));
      if (len < 1e-12) throw HypothesisViolation("principal normal undefined near t = " + std::to_string(s.t[i]));
      w[i] = lin(1 / len, p, 0, p);
    }
    label = "N0 (principal normal)";
  } else if (w.empty()) {
    throw ConfigError("curve '" + name + "' has no field columns; give vx,vy,vz or use the principal normal");
  }
  auto dw = diff1(w, h), ddw = diff2(w, h);

  CurveData d;
  d.name = name;
  d.metric = metric;
  d.analytic = false;
  d.t_min = s.t.front();
  d.t_max = s.t.back();
  d.field_label = label;
  auto ip = std::make_shared<Interp>(Interp{s.t, h});
  auto f = std::make_shared<std::vector<Coords3>>(s.f);
  auto f1 = std::make_shared<std::vector<Coords3>>(std::move(df));
  auto f2 = std::make_shared<std::vector<Coords3>>(std::move(ddf));
  auto w0 = std::make_shared<std::vector<Coords3>>(std::move(w));
  auto w1 = std::make_shared<std::vector<Coords3>>(std::move(dw));
  auto w2 = std::make_shared<std::vector<Coords3>>(std::move(ddw));
  const double lo = d.t_min, hi = d.t_max;
  d.jet = [=](double t) {
    if (t < lo - 1e-9 * (hi - lo) || t > hi + 1e-9 * (hi - lo))
      throw HypothesisViolation("parameter " + std::to_string(t) + " outside the sampled curve [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
    CurveJet j;
    j.f = ip->at(*f, t);
    j.df = ip->at(*f1, t);
    j.ddf = ip->at(*f2, t);
    j.w = ip->at(*w0, t);
    j.dw = ip->at(*w1, t);
    j.ddw = ip->at(*w2, t);
    return j;
  };
  return d;
}

CurveData ingest_curve(const CurveSpec& spec, const IngestOptions& opt) {
  if (!spec.csv_path.empty())
    return curve_from_samples(spec.str(), opt.metric, read_curve_csv(spec.csv_path), opt.principal_normal);
  return catalog_curve(spec, opt);
}

}  // namespace gcauchy

#pragma once

// Initial curves with their prescribed field (V for CMC data, N0 for
// pseudospherical data): the built-in catalog and CSV ingestion.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gcauchy/minkalg.hpp"

namespace gcauchy {

// position, field and their first two derivatives at one parameter value
struct CurveJet {
  Coords3 f{}, df{}, ddf{};
  Coords3 w{}, dw{}, ddw{};
};

struct CurveData {
  std::string name;
  Metric metric = Metric::euclidean;
  double t_min = -1, t_max = 1;  // where the data is defined
  std::function<CurveJet(double)> jet;
  bool analytic = true;
  std::string field_label;  // "V", "N0 (principal normal)", ...

  CurveJet at(double t) const { return jet(t); }
};

struct CurveSpec {
  std::string name;                      // catalog name, or empty for CSV
  std::map<std::string, double> params;  // name:key=val,key=val
  std::string csv_path;

  static CurveSpec parse(const std::string& text);
  std::string str() const;
};

struct CatalogCurve {
  std::string name;
  Metric metric;
  std::map<std::string, double> defaults;
  std::string description;
};

const std::vector<CatalogCurve>& curve_catalog();

struct IngestOptions {
  Metric metric = Metric::euclidean;  // which catalog family to look in
  bool principal_normal = false;      // replace the field by the principal normal
};

CurveData ingest_curve(const CurveSpec& spec, const IngestOptions& opt);
// catalog lookup only; ingest_curve dispatches here for named curves
CurveData catalog_curve(const CurveSpec& spec, const IngestOptions& opt);

// Sampled data on a uniform grid, derivatives by 4th-order differences.
struct CurveSamples {
  std::vector<double> t;
  std::vector<Coords3> f;
  std::vector<Coords3> w;  // empty when the CSV has no field columns
};
CurveSamples read_curve_csv(const std::string& path);
CurveData curve_from_samples(const std::string& name, Metric metric, const CurveSamples& s,
                             bool principal_normal);

// 4th-order first/second derivatives of uniformly spaced samples
std::vector<Coords3> diff1(const std::vector<Coords3>& v, double h);
std::vector<Coords3> diff2(const std::vector<Coords3>& v, double h);

}  // namespace gcauchy

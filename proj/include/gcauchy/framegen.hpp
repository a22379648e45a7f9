#pragma once

// From a potential pair to the frame field on a grid: loop ODEs along the
// two axes, a left Birkhoff splitting per node, gauges and the Sym formula.

#include <cstdint>
#include <memory>
#include <vector>

#include "gcauchy/cauchydata.hpp"
#include "gcauchy/loop.hpp"

namespace gcauchy {

struct GridSpec {
  double x_lo = -1, x_hi = 1, y_lo = -1, y_hi = 1;
  int nx = 41, ny = 41;

  double x(int i) const { return nx == 1 ? x_lo : x_lo + (x_hi - x_lo) * i / (nx - 1); }
  double y(int j) const { return ny == 1 ? y_lo : y_lo + (y_hi - y_lo) * j / (ny - 1); }
  double hx() const { return nx > 1 ? (x_hi - x_lo) / (nx - 1) : 0; }
  double hy() const { return ny > 1 ? (y_hi - y_lo) / (ny - 1) : 0; }
  int index(int i, int j) const { return j * nx + i; }
  int size() const { return nx * ny; }
  // square grid of half-width L centred at (x0, y0)
  static GridSpec centred(double x0, double y0, double L, int n);
};

struct IntegrateOptions {
  int steps_per_unit = 800;
  int min_steps = 400;  // per interval, or 4 n when there are more nodes
  double det_drift_limit = 1e-6;
};

// F^{-1} F' = A(t) with F(t0) = I, at each circle sample, by fixed-step RK4
// with det renormalization. times sorted; the returned loops match them.
std::vector<TwistedLoop> integrate_potential(const LoopPotential& A, RealForm form, const std::vector<double>& times,
                                             double t0, int M, const IntegrateOptions& opt = {});

// F(lambda0) and lambda dF/dlambda (lambda0) from the variational ODE, same steps
struct PointFrame {
  Mat2 F, dF;
};
std::vector<PointFrame> integrate_at_lambda(const LoopPotential& A, cplx lambda0, const std::vector<double>& times,
                                            double t0, const IntegrateOptions& opt = {});

enum class NodeState : std::uint8_t { ok, big_cell, irregular, singular };
const char* to_string(NodeState s);

struct NodeFrame {
  NodeState state = NodeState::ok;
  BirkhoffStatus birkhoff = BirkhoffStatus::ok;
  double residual = 0, condition = 0;
  int truncation = 0;
  std::vector<Mat2> hminus;  // coefficients of lambda^0, lambda^-1, ...
  Mat2 hplus0 = Mat2::identity();
};

// per-node data of the normalizing gauge
struct GaugeData {
  Mat2 A1 = Mat2::zero(), Am1 = Mat2::zero();  // Maurer-Cartan lambda^{+1}, lambda^{-1} parts
  Mat2 T = Mat2::identity();
  // CMC
  double eps1 = 0, eps2 = 0, conformal = 0, rho = 1;
  // pseudospherical
  double fx = 0, fy = 0, theta = 0, mu = 0;
};

struct FrameGenOptions {
  int samples = 128;
  BirkhoffOptions birkhoff;
  IntegrateOptions integrate;
  double lambda0 = 1;
  double regularity_tolerance = 1e-10;
  double singular_tolerance = 1e-6;  // |sin 2 theta| below this: surface singular
};

class FrameField {
 public:
  GridSpec grid;
  RealForm form = RealForm::split;
  int samples = 0;
  double lambda0 = 1;
  std::shared_ptr<const PotentialPair> pair;

  std::vector<TwistedLoop> fplus;    // per x node
  std::vector<TwistedLoop> fminus;   // per y node
  std::vector<PointFrame> fplus_l0;  // per x node at lambda0
  std::vector<NodeFrame> nodes;
  std::vector<GaugeData> gauge;

  bool ok(int i, int j) const { return nodes[grid.index(i, j)].state == NodeState::ok; }
  int masked_count() const;
  double max_residual() const;

  Mat2 hminus_at(int i, int j, cplx lambda) const;
  Mat2 hminus_lambda_derivative(int i, int j, cplx lambda) const;
  // F = F+ H- at one spectral value, and lambda dF/dlambda
  PointFrame frame_at(int i, int j) const;
  // the full frame loop on the circle
  TwistedLoop frame_loop(int i, int j) const;
};

FrameField build_frame_field(const PotentialPair& pair, const GridSpec& grid, const FrameGenOptions& opt = {});

// A1 = chi_1(x), A-1 = H+(0) psi_-1(y) H+(0)^{-1}
void maurer_cartan_coeffs(const FrameField& ff, int i, int j, Mat2& A1, Mat2& Am1);

// throw RegularityFailure / WeakRegularityFailure on vanishing coefficients
GaugeData gauge_cmc(const Mat2& A1, const Mat2& Am1, double H, double tol = 1e-10);
GaugeData gauge_psph(const Mat2& A1, const Mat2& Am1, double tol = 1e-10);

// Fills ff.gauge and marks irregular / singular nodes.
void apply_gauges(FrameField& ff, const FrameGenOptions& opt = {});

// gauge scalars kept with the mesh so diagnostics can rerun from files
struct NodeScalars {
  double eps1 = 0, eps2 = 0, conformal = 0;
  double theta = 0, fx = 0, fy = 0;
};

struct SurfaceSamples {
  GridSpec grid;
  Metric metric = Metric::minkowski;
  std::vector<Coords3> point, normal;  // user coordinates
  std::vector<NodeState> state;
  std::vector<NodeScalars> scalars;  // empty when no gauge was applied
  double lambda0 = 1;
  double H = 0;
  CaseKind kind = CaseKind::cmc_timelike;

  bool ok(int i, int j) const { return state[grid.index(i, j)] == NodeState::ok; }
  const Coords3& at(int i, int j) const { return point[grid.index(i, j)]; }
};

// Sym formulas in model coordinates
Coords3 sym_cmc_point(const PointFrame& F, double H);
Coords3 sym_cmc_normal(const Mat2& F);
Coords3 sym_psph_point(const PointFrame& F);
Coords3 sym_psph_normal(const Mat2& F);

// Evaluates the Sym formula at ff.lambda0 on every unmasked node and
// applies the placement of the pair.
SurfaceSamples sym_surface(const FrameField& ff);

}  // namespace gcauchy

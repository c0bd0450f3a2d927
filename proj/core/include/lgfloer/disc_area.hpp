#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lgfloer/lagrangians.hpp"

namespace lgf {

/// Map samples on a tensor grid, at(i, j) = u(xs[i], ys[j]).
struct GridSamples {
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<PointY> values;

  GridSamples() = default;
  GridSamples(std::size_t nx_, std::size_t ny_) : nx(nx_), ny(ny_), values(nx_ * ny_) {}
  PointY& at(std::size_t i, std::size_t j) { return values[i * ny + j]; }
  [[nodiscard]] const PointY& at(std::size_t i, std::size_t j) const { return values[i * ny + j]; }
};

using GridMap = std::function<GridSamples(const std::vector<double>& xs, const std::vector<double>& ys)>;

/// Grid map from a pointwise map; nodes are evaluated in parallel.
GridMap pointwise_map(std::function<PointY(double x, double y)> f);
/// Grid map from a column generator f(x, ys) -> values at (x, ys[j]).
GridMap columnwise_map(std::function<std::vector<PointY>(double x, const std::vector<double>& ys)> f);

/// Rectangle edges: bottom y = y0 and top y = y1 run in x, left x = x0 and
/// right x = x1 run in y.
enum class Edge { Bottom, Right, Top, Left };

std::string to_string(Edge e);

/// A smooth map on a parameter rectangle. orientation = -1 when the rectangle
/// enters the disc with reversed orientation.
struct PatchPiece {
  std::string name;
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  GridMap map;
  double orientation = 1.0;
  int nx = 64;  // coarse cells; the coarse mesh has 2 nx ny triangles
  int ny = 32;
};

/// Membership residual of a boundary sample at arc fraction tau.
using ArcResidual = std::function<double(double tau, const PointY& p)>;

/// Boundary arc j of a disc runs from corner j to corner j+1 (cyclically) along
/// one edge of one piece.
struct BoundaryArc {
  std::size_t piece = 0;
  Edge edge = Edge::Bottom;
  bool reversed = false;  // traversed against the edge parameter
  std::string lagrangian;
  /// Parameters (t, u) on the assigned Lagrangian, in arc direction.
  std::optional<ParamPath> path;
  ArcResidual residual;
};

struct DiscPatch {
  std::string name;
  std::vector<PatchPiece> pieces;
  std::vector<BoundaryArc> arcs;
  std::vector<PointY> corners;

  /// Image of arc j at fraction tau in [0, 1].
  [[nodiscard]] std::vector<PointY> arc_samples(std::size_t j, const std::vector<double>& taus) const;
};

/// Residual: p lies over curve(t) of L and its fiber parameter sits on the
/// fiber curve, t taken from the arc's parameter path.
ArcResidual on_lagrangian(const FiberedLagrangian& L, ParamPath path);

/// Residual for the image psi_1(L) of the arc: p is carried back along the
/// s-line and located on L.
ArcResidual on_isotoped(const LagrangianIsotopy& iso, ParamPath path);

/// Signed area of one piece with every coarse cell split 2^level times per direction.
double piece_area(const PatchPiece& piece, int level);
double patch_area(const DiscPatch& disc, int level);

struct AreaOptions {
  double tol = 1e-5;      // change under one refinement (x4 triangles)
  int max_level = 3;
};

struct AreaResult {
  double value = 0.0;
  double change = 0.0;  // |area(level) - area(level - 1)|
  int level = 0;
  std::size_t triangles = 0;
};

/// Integral of u^* omega, refined until one refinement changes it by less
/// than tol; mesh_error otherwise.
AreaResult disc_area_converged(const DiscPatch& disc, const AreaOptions& opts = {});
double disc_area(const DiscPatch& disc, const AreaOptions& opts = {});

/// Largest arc residual over `samples` points per arc, and corner mismatch.
double boundary_fidelity(const DiscPatch& disc, int samples = 65);
double corner_mismatch(const DiscPatch& disc);

/// u' = u with the cylinder psi_s(arc m) glued on along arc m.
DiscPatch deform_disc(const DiscPatch& disc, const LagrangianIsotopy& iso, std::size_t m);

/// Cylinder (tau, s) -> psi_s(arc(tau)) over the arc's parameter path.
PatchPiece isotopy_cylinder(const LagrangianIsotopy& iso, const ParamPath& path, double orientation,
                            std::string name = "cylinder");

struct AreaReport {
  std::string label;
  double area_u = 0.0;
  double area_u_prime = 0.0;
  double boundary_term = 0.0;
  double residual = 0.0;
  double change_u = 0.0;        // refinement change of area_u
  double change_u_prime = 0.0;  // refinement change of area_u_prime
  double path_discrepancy = 0.0;
  double fiber_residual = 0.0;  // max |v(u'') - c|, triangle check only
};

/// Compares area(u) - area(u') with f(p_{m+1}) - f(p_m).
AreaReport area_difference_check(const DiscPatch& disc, const LagrangianIsotopy& iso, std::size_t m,
                                 const AreaOptions& opts = {}, const PotentialOptions& popts = {});

/// Checks area(u) = area(u'') + f(p_{m+1}) - f(p_m) for arc m of u on the
/// isotopy's Lagrangian, and that u'' lies in the fiber over `fiber_value`.
AreaReport triangle_split_check(const DiscPatch& u, const LagrangianIsotopy& iso, std::size_t m,
                                const DiscPatch& u_doubleprime, cplx fiber_value, const AreaOptions& opts = {},
                                const PotentialOptions& popts = {});

/// Columnar dump: node rows, then arc rows.
void write_columnar(std::ostream& os, const DiscPatch& disc, int level = 0);

}  // namespace lgf

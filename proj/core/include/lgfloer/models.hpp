#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lgfloer/errors.hpp"
#include "lgfloer/types.hpp"

namespace lgf {

enum class ModelId { TrivialLine, Conic, LefschetzQuadratic };

/// An explicit Kaehler Landau-Ginzburg model on a chart of C^{n+1}: standard
/// symplectic form and complex structure, a polynomial superpotential v, and
/// the holomorphic volume form dz_1 ^ ... ^ dz_{n+1}.
///
/// Immutable after construction; every evaluator is a pure function.
class Model {
 public:
  [[nodiscard]] ModelId id() const { return id_; }
  [[nodiscard]] const std::string& name() const { return name_; }
  /// Total complex dimension n+1.
  [[nodiscard]] int dim() const { return dim_; }
  /// Complex dimension n of the regular fibers.
  [[nodiscard]] int fiber_dim() const { return dim_ - 1; }
  [[nodiscard]] const std::vector<cplx>& critical_values() const { return critical_values_; }

  [[nodiscard]] bool in_chart(const PointY& p) const { return p.dim() == dim_ && p.finite(); }

  [[nodiscard]] cplx v(const PointY& p) const;
  /// Holomorphic gradient (dv/dz_1, ..., dv/dz_{n+1}).
  [[nodiscard]] CVec grad(const PointY& p) const;
  /// dv_p(x), complex linear in x.
  [[nodiscard]] cplx dv(const PointY& p, const CVec& x) const;

  [[nodiscard]] static CVec J(const CVec& x) { return cplx{0.0, 1.0} * x; }

  [[nodiscard]] double omega(const PointY& p, const TangentVec& x, const TangentVec& y) const;
  [[nodiscard]] cplx Omega(const PointY& p, std::span<const TangentVec> frame) const;
  /// Omega on bare component vectors (the catalogue forms are translation invariant).
  [[nodiscard]] cplx Omega(std::span<const CVec> frame) const;

  /// Smallest distance from c to a critical value, +inf when there are none.
  [[nodiscard]] double critical_clearance(cplx c) const;

  // Fiber chart for models with one-dimensional fibers: every regular fiber
  // Y_c is identified with C^* through a coordinate w.
  [[nodiscard]] PointY fiber_point(cplx c, cplx w) const;
  [[nodiscard]] CVec fiber_point_dw(cplx c, cplx w) const;
  [[nodiscard]] cplx fiber_coordinate(const PointY& p) const;

 private:
  friend Model make_model(std::string_view id);

  ModelId id_ = ModelId::TrivialLine;
  std::string name_;
  int dim_ = 1;
  std::vector<cplx> critical_values_;
};

/// Catalogue lookup: trivial_line, conic, lefschetz_quadratic.
Model make_model(std::string_view id);

std::vector<std::string> model_ids();

/// One catalogue line per model, e.g. "conic  dim=2  critv={0}".
std::string describe_model(const Model& model);

}  // namespace lgf

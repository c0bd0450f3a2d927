#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lgfloer/lagrangians.hpp"

namespace lgf {

/// Linear Lagrangian subspace at a point, given by an ordered real basis.
struct LagrangianPlane {
  PointY base;
  std::vector<CVec> basis;
};

/// Builds a plane and checks it: n+1 real-independent vectors with omega
/// vanishing on every pair (relative tolerance).
LagrangianPlane make_plane(const Model& model, const PointY& p, std::vector<CVec> basis, double tol = 1e-8);

/// z^2 / |z|^2.
cplx squared_phase(cplx z);

/// Omega(e)^2 / |Omega(e)|^2.
cplx alpha_total(const Model& model, const LagrangianPlane& plane);
/// Residue phase of a vertical basis: Omega(e, h) / dv(h), squared and
/// normalized; h defaults to the horizontal lift of 1.
cplx alpha_vert(const Model& model, const PointY& p, std::span<const CVec> vertical,
                std::optional<CVec> probe = std::nullopt);
/// dv(e)^2 / |dv(e)|^2.
cplx alpha_hor(const Model& model, const PointY& p, const CVec& e);

/// Continuous lift of unit samples with lift[0] = anchor.
std::vector<double> unwrap_lift(const std::vector<cplx>& samples, double anchor);

struct UnwrapOptions {
  int initial = 16;
  double max_increment = 0.125;
  int max_depth = 30;
};

/// Lift of the unit-valued function f on [a, b] at b, starting from anchor at a,
/// bisecting until consecutive increments are at most max_increment.
double unwrap_function(const std::function<cplx(double)>& f, double a, double b, double anchor,
                       const UnwrapOptions& opts = {});

/// Grading of a fibered Lagrangian split as vertical lift + base lift, fixed
/// by anchor values at the anchor parameters.
class GradedLagrangian {
 public:
  GradedLagrangian(FiberedLagrangian L, double fiber_anchor, double base_anchor, ParamPoint anchor);

  [[nodiscard]] const FiberedLagrangian& lagrangian() const { return L_; }
  [[nodiscard]] double fiber_anchor() const { return fiber_anchor_; }
  [[nodiscard]] double base_anchor() const { return base_anchor_; }
  [[nodiscard]] ParamPoint anchor() const { return anchor_; }

  [[nodiscard]] cplx vert_phase(double t, double u) const;
  [[nodiscard]] cplx base_phase(double t) const;
  [[nodiscard]] cplx total_phase(double t, double u) const;

  [[nodiscard]] double vert_lift(double t, double u) const;
  [[nodiscard]] double base_lift(double t) const;
  [[nodiscard]] double lift(double t, double u) const { return vert_lift(t, u) + base_lift(t); }

  /// Anchors raised by integers (or any consistent shift).
  [[nodiscard]] GradedLagrangian shifted(double fiber_shift, double base_shift) const;

 private:
  FiberedLagrangian L_;
  double fiber_anchor_;
  double base_anchor_;
  ParamPoint anchor_;
};

GradedLagrangian grade(const FiberedLagrangian& L, double fiber_anchor, double base_anchor, ParamPoint anchor);

/// One complex-one-dimensional factor of a short path: unitary factor vector
/// f, rotation taking the first line to the real axis, and the relative angle.
struct ShortPathFactor {
  CVec f;
  cplx rot;
  double theta = 0.0;

  /// Direction (in factor coordinates) of the line lambda(t).
  [[nodiscard]] cplx zeta(double t) const;
  [[nodiscard]] CVec direction(double t) const { return (rot * zeta(t)) * f; }
  /// Lift change of the squared phase along the factor path: theta/pi - 1.
  [[nodiscard]] double lift_change() const;
};

/// Builds a factor from the two tangent vectors a0, a1 lying in span_C(f).
ShortPathFactor make_factor(const CVec& f, const CVec& a0, const CVec& a1, double angle_tol = 1e-3);

struct ShortPath {
  PointY point;
  std::vector<ShortPathFactor> factors;  // vertical factor first when present

  [[nodiscard]] LagrangianPlane at(double t) const;
  [[nodiscard]] double closed_form_change() const;
};

/// Vertical and horizontal unitary factor vectors at p.
CVec vertical_factor(const Model& model, const PointY& p);
CVec horizontal_factor(const Model& model, const PointY& p);

ShortPath canonical_short_path(const Model& model, const PointY& p, const Frame& T0, const Frame& T1,
                               double angle_tol = 1e-3);
ShortPath canonical_short_path(const IntersectionPoint& ip, const FiberedLagrangian& L0,
                               const FiberedLagrangian& L1, double angle_tol = 1e-3);

struct DegreeResult {
  int degree = 0;
  double raw = 0.0;         // value of the formula before rounding
  double residual = 0.0;    // |raw - degree|
  double lift0 = 0.0;
  double lift1 = 0.0;
  double path_change = 0.0;  // unwrapped lift change along the short path
  double closed_form_change = 0.0;
};

struct DegreeOptions {
  double round_tol = 1e-4;
  double angle_tol = 1e-3;
};

/// Degree from planes: lifts of the two gradings at p and the short path
/// between them, phases evaluated with alpha_total.
DegreeResult total_degree(const Model& model, const ShortPath& path, double lift0, double lift1,
                          const DegreeOptions& opts = {});
/// Same in the fiber, phases evaluated with the residue.
DegreeResult fiber_degree(const Model& model, const PointY& p, const ShortPathFactor& vert, double lift0,
                          double lift1, const DegreeOptions& opts = {});
/// Same in C with phase z^2, for base tangent directions d0, d1.
DegreeResult base_degree(cplx d0, cplx d1, double lift0, double lift1, const DegreeOptions& opts = {});

DegreeResult degree(const GradedLagrangian& L0, const GradedLagrangian& L1, const IntersectionPoint& ip,
                    const DegreeOptions& opts = {});

struct DegreeSplit {
  DegreeResult fiber;
  DegreeResult base;
  DegreeResult total;
};

/// Fiber, base and total degree computed independently; throws
/// theorem_check_failure unless total = fiber + base.
DegreeSplit degree_split(const GradedLagrangian& L0, const GradedLagrangian& L1, const IntersectionPoint& ip,
                         const DegreeOptions& opts = {});

struct BigonRecord {
  int deg_plus = 0;
  int deg_minus = 0;
  int fiber_plus = 0;
  int fiber_monodromy_minus = 0;  // degree of (Phi(L0), L1) at p'_- in the fiber over c_+
  int base_plus = 0;
  int base_minus = 0;
  int lhs = 0;
  int rhs = 0;
  int difference = 0;
  double pprime_residual = 0.0;   // p'_- found in the fiber vs p_- transported back
  double max_round_residual = 0.0;
  PointY pprime;
};

/// Both sides of the bigon relation for corners p_plus, p_minus of two
/// Lagrangians (the loop runs along L0 from c_+ to c_- and back along L1).
BigonRecord bigon_relation(const GradedLagrangian& L0, const GradedLagrangian& L1, const IntersectionPoint& p_plus,
                           const IntersectionPoint& p_minus, const DegreeOptions& opts = {});

/// Loop gamma0 from t0_plus to t0_minus followed by gamma1 from t1_minus back to t1_plus.
BasePath bigon_loop(const BasePath& g0, double t0_plus, double t0_minus, const BasePath& g1, double t1_plus,
                    double t1_minus);

}  // namespace lgf

#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lgfloer/base_path.hpp"
#include "lgfloer/fibration.hpp"
#include "lgfloer/models.hpp"

namespace lgf {

/// Fiber Lagrangians in a complex-one-dimensional fiber, written in the fiber
/// chart coordinate w of the model:
///   circle  w = r e^{is}
///   ray     w = s e^{i theta}, s > 0
///   spiral  w = exp(s (1 + i k)) e^{i theta}
///   point   the whole (zero-dimensional) fiber of trivial_line
enum class FiberKind { Circle, Ray, Spiral, Point };

std::string to_string(FiberKind kind);
FiberKind fiber_kind_from_string(const std::string& name);

struct FiberLagrangianParam {
  FiberKind kind = FiberKind::Circle;
  double r = 1.0;
  double theta = 0.0;
  double k = 0.0;
  // Parameter window used when sampling (the circle is periodic on [-pi, pi]).
  double s_min = -kPi;
  double s_max = kPi;

  static FiberLagrangianParam circle(double r);
  static FiberLagrangianParam ray(double theta = 0.0, double s_min = 0.05, double s_max = 20.0);
  static FiberLagrangianParam spiral(double k, double theta = 0.0, double s_min = -3.0, double s_max = 3.0);
  static FiberLagrangianParam point();

  [[nodiscard]] bool periodic() const { return kind == FiberKind::Circle; }
  [[nodiscard]] cplx w(double s) const;
  [[nodiscard]] cplx dw(double s) const;
  /// Fiber parameter of chart coordinate w and a signed membership residual
  /// (zero exactly on the curve). Rays report a large residual on the wrong side.
  [[nodiscard]] std::pair<double, double> invert(cplx w) const;
};

/// Point of a real frame: base point and tangent vectors.
struct Frame {
  PointY point;
  std::vector<CVec> vectors;
};

/// Lagrangian fibered over a base curve: the fiber Lagrangian sigma sits in the
/// fiber over curve(anchor_t) and is carried to the other fibers by parallel
/// transport along the curve.
class FiberedLagrangian {
 public:
  FiberedLagrangian(Model model, BasePath curve, FiberLagrangianParam fiber, double anchor_t = 0.0,
                    IntegratorOptions opts = {});

  [[nodiscard]] const Model& model() const { return model_; }
  [[nodiscard]] const BasePath& curve() const { return curve_; }
  [[nodiscard]] const FiberLagrangianParam& fiber() const { return fiber_; }
  [[nodiscard]] double anchor_t() const { return anchor_t_; }
  [[nodiscard]] cplx anchor_value() const { return curve_(anchor_t_); }
  [[nodiscard]] const IntegratorOptions& options() const { return opts_; }

  /// sigma(s) in the anchor fiber.
  [[nodiscard]] PointY sigma(double s) const;
  [[nodiscard]] CVec dsigma(double s) const;

  [[nodiscard]] PointY eval(double t, double s, TransportStats* stats = nullptr) const;
  /// eval(t, s) for every t in ts (monotone), sharing one transport sweep.
  [[nodiscard]] std::vector<PointY> eval_along(const std::vector<double>& ts, double s) const;

  /// Fiber vector by central difference in s (first, absent for point
  /// fibers), then the exact horizontal lift of curve'(t).
  [[nodiscard]] Frame tangent_frame(double t, double s, double h = 1e-5) const;

  /// Fiber parameter of p, assumed to lie over curve(t), by transporting it back
  /// to the anchor fiber; second entry is the signed membership residual.
  [[nodiscard]] std::pair<double, double> locate(double t, const PointY& p) const;

  /// Same Lagrangian with the base curve rotated about the origin.
  [[nodiscard]] FiberedLagrangian rotated(double angle) const;

 private:
  Model model_;
  BasePath curve_;
  FiberLagrangianParam fiber_;
  double anchor_t_;
  IntegratorOptions opts_;
};

/// Straight-line base homotopy h_s(t) = gamma(t) + s chi(t) (target(t) - gamma(t)),
/// chi a smoothstep bump equal to 1 on [a, b] and 0 outside [a - width, b + width].
class BaseHomotopy {
 public:
  enum class Target { Identity, Constant, Path };

  static BaseHomotopy identity(BasePath gamma);
  static BaseHomotopy to_constant(BasePath gamma, cplx c, double a, double b, double width);
  /// delta is linearly reparametrized onto [a, b].
  static BaseHomotopy to_path(BasePath gamma, BasePath delta, double a, double b, double width);

  [[nodiscard]] Target target_kind() const { return target_; }
  [[nodiscard]] const BasePath& gamma() const { return gamma_; }
  [[nodiscard]] double a() const { return a_; }
  [[nodiscard]] double b() const { return b_; }
  [[nodiscard]] double width() const { return width_; }

  [[nodiscard]] double bump(double t) const;
  [[nodiscard]] cplx target(double t) const;
  [[nodiscard]] cplx operator()(double s, double t) const { return gamma_(t) + s * ds(t); }
  /// d h_s / ds, independent of s.
  [[nodiscard]] cplx ds(double t) const;
  /// Base path s -> h_s(t) on [0, 1].
  [[nodiscard]] BasePath s_line(double t) const;
  /// Breakpoints of the bump in t where the homotopy loses smoothness.
  [[nodiscard]] std::vector<double> breakpoints() const;

  /// Samples an s-t grid and throws homotopy_error if h_s comes within
  /// clearance of a critical value.
  void check(const Model& model, double clearance = 1e-3, int ns = 41, int nt = 801) const;

 private:
  BasePath gamma_;
  BasePath delta_;
  Target target_ = Target::Identity;
  cplx c_{};
  double a_ = 0.0;
  double b_ = 0.0;
  double width_ = 0.0;
};

/// Piecewise-linear path in the (t, s) parameters of a fibered Lagrangian.
struct ParamPath {
  std::vector<ParamPoint> vertices;

  static ParamPath straight(ParamPoint from, ParamPoint to) { return {{from, to}}; }
  /// First along t, then along s.
  static ParamPath l_shaped(ParamPoint from, ParamPoint to) {
    return {{from, {to.t, from.u}, to}};
  }
  /// Fiber loop at fixed t, s from s0 to s0 + 2 pi.
  static ParamPath fiber_loop(double t, double s0 = -kPi) { return {{{t, s0}, {t, s0 + 2.0 * kPi}}}; }
  [[nodiscard]] ParamPath reversed() const {
    return {std::vector<ParamPoint>(vertices.rbegin(), vertices.rend())};
  }
  [[nodiscard]] ParamPoint front() const { return vertices.front(); }
  /// Point at fraction tau of the total (t, s)-length.
  [[nodiscard]] ParamPoint at(double tau) const;
  [[nodiscard]] ParamPoint back() const { return vertices.back(); }
};

struct PotentialOptions {
  int panels_per_unit = 16;     // Gauss panels per unit parameter length
  double fd_step = 1e-5;        // central-difference step for d psi
  double exactness_tol = 1e-5;  // straight vs L-shaped path disagreement
};

/// Isotopy psi(p, s) = transport of p along s -> h_s(t), t the base parameter of p.
class LagrangianIsotopy {
 public:
  LagrangianIsotopy(FiberedLagrangian L, BaseHomotopy H);

  [[nodiscard]] const FiberedLagrangian& lagrangian() const { return L_; }
  [[nodiscard]] const BaseHomotopy& homotopy() const { return H_; }

  [[nodiscard]] PointY psi(double t, double u, double s) const;
  [[nodiscard]] PointY psi_point(const PointY& p, double t, double s) const;
  /// psi(p, s) for each s in ss (increasing from 0), one sweep.
  [[nodiscard]] std::vector<PointY> psi_sweep(const PointY& p, double t, const std::vector<double>& ss) const;

  /// Exact s-derivative of psi at q = psi(., t, s): the lift of dh/ds.
  [[nodiscard]] CVec dpsi_ds(const PointY& q, double t) const;

  /// b_s(w) for w = d psi_s (dL(dir)), dir a direction in (t, u).
  [[nodiscard]] double flux(double s, double t, double u, ParamPoint dir, double h = 1e-5) const;
  /// b_s(w) for a vector w in the ambient space tangent to psi_s(L) at psi(t, u, s).
  [[nodiscard]] double flux_form(double s, double t, double u, const CVec& w, double h = 1e-5) const;

  /// Integral of b_s along a parameter path (Gauss-Legendre, split at bump breakpoints).
  [[nodiscard]] double flux_path_integral(double s, const ParamPath& path,
                                          const PotentialOptions& opts = {}) const;
  /// Integral over the path of the one-form int_0^1 b_s ds.
  [[nodiscard]] double integrated_flux(const ParamPath& path, const PotentialOptions& opts = {}) const;

  /// f(p) - f(basepoint), cross-checked along straight and L-shaped paths.
  [[nodiscard]] double potential(ParamPoint p, ParamPoint basepoint, const PotentialOptions& opts = {},
                                 double* path_discrepancy = nullptr) const;

 private:
  FiberedLagrangian L_;
  BaseHomotopy H_;
};

/// Smallest principal angle between the real spans of A and B (same dimension).
double min_principal_angle(std::span<const CVec> A, std::span<const CVec> B);

struct IntersectionPoint {
  PointY point;
  cplx base_value;
  double t0 = 0.0;
  double u0 = 0.0;
  double t1 = 0.0;
  double u1 = 0.0;
  double residual = 0.0;
  double min_angle = 0.0;
};

struct IntersectionOptions {
  int base_samples = 400;
  int fiber_samples = 192;
  double angle_tol = 1e-3;
  double tol = 1e-8;
};

/// Transverse intersection points of two fibered Lagrangians over the same model.
std::vector<IntersectionPoint> find_intersections(const FiberedLagrangian& L0,
                                                  const FiberedLagrangian& L1,
                                                  const IntersectionOptions& opts = {});

/// Parameters (t0, t1) with gamma0(t0) = gamma1(t1).
std::vector<std::pair<double, double>> base_intersections(const BasePath& g0, const BasePath& g1,
                                                          int samples = 400, double angle_tol = 1e-3);

/// Intersection in a single fiber: given t0 on L0 and t1 on L1 over the same
/// base value, the fiber parameters (u0, u1) where the fiber curves meet.
std::vector<std::pair<double, double>> fiber_intersections(const FiberedLagrangian& L0, double t0,
                                                           const FiberedLagrangian& L1, double t1,
                                                           int samples = 192);

}  // namespace lgf

#include "lgfloer/grading.hpp"

#include <cmath>
#include <sstream>

#include "lgfloer/errors.hpp"

namespace lgf {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

cplx unit_phase(double lift) { return std::polar(1.0, kTwoPi * lift); }

void check_anchor(cplx sample, double anchor, const char* what) {
  if (std::abs(unit_phase(anchor) - sample) > 1e-6) {
    std::ostringstream os;
    os << what << " anchor " << anchor << " does not lift phase " << sample;
    fail(ErrorKind::Anchor, os.str());
  }
}

}  // namespace

LagrangianPlane make_plane(const Model& model, const PointY& p, std::vector<CVec> basis, double tol) {
  if (static_cast<int>(basis.size()) != model.dim()) fail(ErrorKind::Argument, "plane basis has wrong length");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const double w = omega_std(basis[i], basis[j]);
      if (std::abs(w) > tol * basis[i].norm() * basis[j].norm()) {
        fail(ErrorKind::DegeneratePlane, "plane is not Lagrangian");
      }
    }
  }
  double det = 1.0, scale = 1.0;
  for (const auto& b : basis) scale *= b.norm2();
  if (basis.size() == 1) det = basis[0].norm2();
  if (basis.size() == 2) {
    const double g = herm(basis[0], basis[1]).real();
    det = basis[0].norm2() * basis[1].norm2() - g * g;
  }
  if (!(scale > 0.0) || !(det > 1e-20 * scale)) fail(ErrorKind::DegeneratePlane, "plane basis is dependent");
  return {p, std::move(basis)};
}

cplx squared_phase(cplx z) {
  const double n = std::norm(z);
  if (!(n > 0.0)) fail(ErrorKind::DegeneratePlane, "phase of zero");
  return z * z / n;
}

cplx alpha_total(const Model& model, const LagrangianPlane& plane) {
  const cplx om = model.Omega(plane.basis);
  double scale = 1.0;
  for (const auto& b : plane.basis) scale *= b.norm();
  if (!(std::abs(om) > 1e-12 * scale)) fail(ErrorKind::DegeneratePlane, "Omega vanishes on the plane");
  return squared_phase(om);
}

cplx alpha_vert(const Model& model, const PointY& p, std::span<const CVec> vertical, std::optional<CVec> probe) {
  if (static_cast<int>(vertical.size()) != model.fiber_dim()) fail(ErrorKind::Argument, "vertical basis has wrong length");
  if (model.fiber_dim() == 0) return {1.0, 0.0};
  const CVec g = model.grad(p);
  if (!(g.norm2() > 1e-24)) fail(ErrorKind::SingularSplit, "residue at a critical point");
  for (const auto& e : vertical) {
    if (std::abs(model.dv(p, e)) > 1e-8 * e.norm() * g.norm()) {
      fail(ErrorKind::Argument, "basis vector is not vertical");
    }
  }
  const CVec h = probe ? *probe : horizontal_lift(model, p, 1.0);
  const cplx dvh = model.dv(p, h);
  if (!(std::abs(dvh) > 0.0)) fail(ErrorKind::Argument, "probe is vertical");
  std::vector<CVec> frame(vertical.begin(), vertical.end());
  frame.push_back(h);
  return squared_phase(model.Omega(frame) / dvh);
}

cplx alpha_hor(const Model& model, const PointY& p, const CVec& e) {
  const cplx d = model.dv(p, e);
  if (!(std::abs(d) > 1e-14 * e.norm())) fail(ErrorKind::DegeneratePlane, "dv vanishes on the horizontal vector");
  return squared_phase(d);
}

std::vector<double> unwrap_lift(const std::vector<cplx>& samples, double anchor) {
  std::vector<double> out;
  if (samples.empty()) return out;
  check_anchor(samples.front(), anchor, "unwrap");
  out.push_back(anchor);
  for (std::size_t k = 1; k < samples.size(); ++k) {
    const double d = std::arg(samples[k] / samples[k - 1]) / kTwoPi;
    if (std::abs(d) > 0.45) {
      std::ostringstream os;
      os << "phase jump " << d << " between samples " << k - 1 << " and " << k << " is ambiguous";
      fail(ErrorKind::Sampling, os.str());
    }
    out.push_back(out.back() + d);
  }
  return out;
}

namespace {

double unwrap_interval(const std::function<cplx(double)>& f, double a, cplx fa, double b, cplx fb,
                       const UnwrapOptions& opts, int depth) {
  const double d = std::arg(fb / fa) / kTwoPi;
  if (std::abs(d) <= opts.max_increment) return d;
  if (depth >= opts.max_depth) {
    std::ostringstream os;
    os << "phase refinement cap reached near parameter " << a;
    fail(ErrorKind::Sampling, os.str());
  }
  const double m = 0.5 * (a + b);
  const cplx fm = f(m);
  return unwrap_interval(f, a, fa, m, fm, opts, depth + 1) + unwrap_interval(f, m, fm, b, fb, opts, depth + 1);
}

}  // namespace

double unwrap_function(const std::function<cplx(double)>& f, double a, double b, double anchor,
                       const UnwrapOptions& opts) {
  cplx prev = f(a);
  check_anchor(prev, anchor, "unwrap");
  double lift = anchor;
  if (a == b) return lift;
  for (int k = 1; k <= opts.initial; ++k) {
    const double x0 = a + (b - a) * (k - 1) / opts.initial;
    const double x1 = (k == opts.initial) ? b : a + (b - a) * k / opts.initial;
    const cplx next = f(x1);
    lift += unwrap_interval(f, x0, prev, x1, next, opts, 0);
    prev = next;
  }
  return lift;
}

GradedLagrangian::GradedLagrangian(FiberedLagrangian L, double fiber_anchor, double base_anchor, ParamPoint anchor)
    : L_(std::move(L)), fiber_anchor_(fiber_anchor), base_anchor_(base_anchor), anchor_(anchor) {
  check_anchor(vert_phase(anchor_.t, anchor_.u), fiber_anchor_, "fiber");
  check_anchor(base_phase(anchor_.t), base_anchor_, "base");
}

cplx GradedLagrangian::vert_phase(double t, double u) const {
  if (L_.fiber().kind == FiberKind::Point) return {1.0, 0.0};
  const Frame fr = L_.tangent_frame(t, u);
  const CVec e = split_tangent(L_.model(), fr.point, {fr.point, fr.vectors[0]}).vertical.comp;
  return alpha_vert(L_.model(), fr.point, std::span<const CVec>(&e, 1));
}

cplx GradedLagrangian::base_phase(double t) const { return squared_phase(L_.curve().derivative(t)); }

cplx GradedLagrangian::total_phase(double t, double u) const {
  const Frame fr = L_.tangent_frame(t, u);
  return alpha_total(L_.model(), {fr.point, fr.vectors});
}

double GradedLagrangian::vert_lift(double t, double u) const {
  if (L_.fiber().kind == FiberKind::Point) return fiber_anchor_;
  const ParamPoint a = anchor_;
  const ParamPoint d = ParamPoint{t, u} - a;
  if (d.t == 0.0 && d.u == 0.0) return fiber_anchor_;
  return unwrap_function([&](double x) { return vert_phase(a.t + x * d.t, a.u + x * d.u); }, 0.0, 1.0,
                         fiber_anchor_);
}

double GradedLagrangian::base_lift(double t) const {
  if (t == anchor_.t) return base_anchor_;
  return unwrap_function([&](double x) { return base_phase(x); }, anchor_.t, t, base_anchor_);
}

GradedLagrangian GradedLagrangian::shifted(double fiber_shift, double base_shift) const {
  return {L_, fiber_anchor_ + fiber_shift, base_anchor_ + base_shift, anchor_};
}

GradedLagrangian grade(const FiberedLagrangian& L, double fiber_anchor, double base_anchor, ParamPoint anchor) {
  return {L, fiber_anchor, base_anchor, anchor};
}

cplx ShortPathFactor::zeta(double t) const {
  const double x = 0.5 * kPi * t;
  return {std::cos(x) - std::sin(x) * std::cos(theta) / std::sin(theta), -std::sin(x)};
}

double ShortPathFactor::lift_change() const { return theta / kPi - 1.0; }

ShortPathFactor make_factor(const CVec& f, const CVec& a0, const CVec& a1, double angle_tol) {
  const cplx c0 = herm(f, a0), c1 = herm(f, a1);
  if (!(std::abs(c0) > 0.0) || !(std::abs(c1) > 0.0)) fail(ErrorKind::DegeneratePlane, "tangent line misses the factor");
  double theta = std::arg(c1 * std::conj(c0));
  if (theta <= 0.0) theta += kPi;
  if (theta < angle_tol || theta > kPi - angle_tol) {
    std::ostringstream os;
    os << "factor lines are tangent (relative angle " << theta << ")";
    fail(ErrorKind::Transversality, os.str());
  }
  return {f, c0 / std::abs(c0), theta};
}

LagrangianPlane ShortPath::at(double t) const {
  LagrangianPlane pl{point, {}};
  for (const auto& f : factors) pl.basis.push_back(f.direction(t));
  return pl;
}

double ShortPath::closed_form_change() const {
  double s = 0.0;
  for (const auto& f : factors) s += f.lift_change();
  return s;
}

CVec vertical_factor(const Model& model, const PointY& p) {
  const CVec g = model.grad(p);
  if (g.dim() < 2) fail(ErrorKind::Argument, "model has no vertical directions");
  const CVec f(g[1], -g[0]);
  const double n = f.norm();
  if (!(n > 0.0)) fail(ErrorKind::SingularSplit, "vertical factor at a critical point");
  return f / n;
}

CVec horizontal_factor(const Model& model, const PointY& p) {
  const CVec g = model.grad(p);
  const double n = g.norm();
  if (!(n > 0.0)) fail(ErrorKind::SingularSplit, "horizontal factor at a critical point");
  return g.conj() / n;
}

ShortPath canonical_short_path(const Model& model, const PointY& p, const Frame& T0, const Frame& T1,
                               double angle_tol) {
  ShortPath sp{p, {}};
  const std::size_t n = T0.vectors.size();
  if (n != T1.vectors.size() || static_cast<int>(n) != model.dim()) fail(ErrorKind::Argument, "frames do not match the model");
  if (model.fiber_dim() == 1) {
    const TangentSplit s0 = split_tangent(model, p, {p, T0.vectors[0]});
    const TangentSplit s1 = split_tangent(model, p, {p, T1.vectors[0]});
    sp.factors.push_back(make_factor(vertical_factor(model, p), s0.vertical.comp, s1.vertical.comp, angle_tol));
  }
  const TangentSplit h0 = split_tangent(model, p, {p, T0.vectors[n - 1]});
  const TangentSplit h1 = split_tangent(model, p, {p, T1.vectors[n - 1]});
  sp.factors.push_back(make_factor(horizontal_factor(model, p), h0.horizontal.comp, h1.horizontal.comp, angle_tol));
  return sp;
}

ShortPath canonical_short_path(const IntersectionPoint& ip, const FiberedLagrangian& L0, const FiberedLagrangian& L1,
                               double angle_tol) {
  return canonical_short_path(L0.model(), ip.point, L0.tangent_frame(ip.t0, ip.u0), L1.tangent_frame(ip.t1, ip.u1),
                              angle_tol);
}

}  // namespace lgf

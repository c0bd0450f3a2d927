#include "lgfloer/lagrangians.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lgfloer/errors.hpp"

namespace lgf {

std::string to_string(FiberKind kind) {
  switch (kind) {
    case FiberKind::Circle: return "circle";
    case FiberKind::Ray: return "real_ray";
    case FiberKind::Spiral: return "spiral";
    case FiberKind::Point: return "point";
  }
  return "?";
}

FiberKind fiber_kind_from_string(const std::string& name) {
  if (name == "circle") return FiberKind::Circle;
  if (name == "real_ray" || name == "ray") return FiberKind::Ray;
  if (name == "spiral") return FiberKind::Spiral;
  if (name == "point") return FiberKind::Point;
  fail(ErrorKind::Argument, "unknown fiber kind '" + name + "'");
}

FiberLagrangianParam FiberLagrangianParam::circle(double r) {
  if (!(r > 0.0)) fail(ErrorKind::Argument, "circle radius must be positive");
  FiberLagrangianParam f;
  f.kind = FiberKind::Circle;
  f.r = r;
  return f;
}

FiberLagrangianParam FiberLagrangianParam::ray(double theta, double s_min, double s_max) {
  if (!(s_min > 0.0) || !(s_max > s_min)) fail(ErrorKind::Argument, "ray window must satisfy 0 < s_min < s_max");
  FiberLagrangianParam f;
  f.kind = FiberKind::Ray;
  f.theta = theta;
  f.s_min = s_min;
  f.s_max = s_max;
  return f;
}

FiberLagrangianParam FiberLagrangianParam::spiral(double k, double theta, double s_min, double s_max) {
  if (!(s_max > s_min)) fail(ErrorKind::Argument, "spiral window must satisfy s_min < s_max");
  FiberLagrangianParam f;
  f.kind = FiberKind::Spiral;
  f.k = k;
  f.theta = theta;
  f.s_min = s_min;
  f.s_max = s_max;
  return f;
}

FiberLagrangianParam FiberLagrangianParam::point() {
  FiberLagrangianParam f;
  f.kind = FiberKind::Point;
  f.s_min = 0.0;
  f.s_max = 0.0;
  return f;
}

cplx FiberLagrangianParam::w(double s) const {
  switch (kind) {
    case FiberKind::Circle: return std::polar(r, s);
    case FiberKind::Ray: return std::polar(s, theta);
    case FiberKind::Spiral: return std::exp(cplx{s, s * k + theta});
    case FiberKind::Point: return cplx{};
  }
  return {};
}

cplx FiberLagrangianParam::dw(double s) const {
  switch (kind) {
    case FiberKind::Circle: return cplx{0.0, 1.0} * w(s);
    case FiberKind::Ray: return std::polar(1.0, theta);
    case FiberKind::Spiral: return cplx{1.0, k} * w(s);
    case FiberKind::Point: return cplx{};
  }
  return {};
}

namespace {
double wrap_pi(double x) { return std::remainder(x, 2.0 * kPi); }
}  // namespace

std::pair<double, double> FiberLagrangianParam::invert(cplx wv) const {
  switch (kind) {
    case FiberKind::Circle: return {std::arg(wv), std::abs(wv) - r};
    case FiberKind::Ray: {
      const cplx z = wv * std::polar(1.0, -theta);
      if (z.real() <= 0.0) return {z.real(), std::abs(z) + 1.0};
      return {z.real(), z.imag()};
    }
    case FiberKind::Spiral: {
      const double a = std::log(std::abs(wv));
      const double b = std::arg(wv);
      return {a, wrap_pi(b - k * a - theta)};
    }
    case FiberKind::Point: return {0.0, 0.0};
  }
  return {0.0, 0.0};
}

FiberedLagrangian::FiberedLagrangian(Model model, BasePath curve, FiberLagrangianParam fiber,
                                     double anchor_t, IntegratorOptions opts)
    : model_(std::move(model)),
      curve_(std::move(curve)),
      fiber_(fiber),
      anchor_t_(anchor_t),
      opts_(opts) {
  if (!curve_.valid()) fail(ErrorKind::Argument, "fibered Lagrangian needs a base curve");
  if (!curve_.contains(anchor_t_)) fail(ErrorKind::Argument, "anchor parameter outside base curve domain");
  const bool point_fiber = fiber_.kind == FiberKind::Point;
  if (point_fiber != (model_.fiber_dim() == 0)) {
    fail(ErrorKind::Argument, "fiber kind " + to_string(fiber_.kind) + " does not fit model " + model_.name());
  }
  const cplx c0 = anchor_value();
  if (model_.critical_clearance(c0) < opts_.critical_clearance) {
    fail(ErrorKind::Argument, "anchor fiber is singular");
  }
  for (double s : {fiber_.s_min, 0.5 * (fiber_.s_min + fiber_.s_max), fiber_.s_max}) {
    const PointY p = sigma(s);
    if (!p.finite() || std::abs(model_.v(p) - c0) > 1e-10 * (1.0 + std::abs(c0))) {
      fail(ErrorKind::Argument, "fiber parametrization leaves the anchor fiber");
    }
  }
}

PointY FiberedLagrangian::sigma(double s) const { return model_.fiber_point(anchor_value(), fiber_.w(s)); }

CVec FiberedLagrangian::dsigma(double s) const {
  return fiber_.dw(s) * model_.fiber_point_dw(anchor_value(), fiber_.w(s));
}

PointY FiberedLagrangian::eval(double t, double s, TransportStats* stats) const {
  return parallel_transport(model_, curve_, anchor_t_, t, sigma(s), opts_, stats);
}

std::vector<PointY> FiberedLagrangian::eval_along(const std::vector<double>& ts, double s) const {
  if (ts.empty()) return {};
  return transport_samples(model_, curve_, ts, eval(ts.front(), s), opts_);
}

Frame FiberedLagrangian::tangent_frame(double t, double s, double h) const {
  Frame fr;
  fr.point = eval(t, s);
  if (fiber_.kind != FiberKind::Point) {
    CVec e = (eval(t, s + h) - eval(t, s - h)) / (2.0 * h);
    fr.vectors.push_back(e);
  }
  fr.vectors.push_back(horizontal_lift(model_, fr.point, curve_.derivative(t)));
  // Real Gram determinant of the frame, relative to the product of lengths.
  double scale = 1.0;
  for (const auto& v : fr.vectors) scale *= v.norm2();
  double det = scale;
  if (fr.vectors.size() == 2) {
    const double g12 = herm(fr.vectors[0], fr.vectors[1]).real();
    det = fr.vectors[0].norm2() * fr.vectors[1].norm2() - g12 * g12;
  }
  if (!(scale > 0.0) || !(det > 1e-12 * scale)) {
    std::ostringstream os;
    os << "degenerate tangent frame at t=" << t << ", s=" << s;
    fail(ErrorKind::Frame, os.str());
  }
  return fr;
}

std::pair<double, double> FiberedLagrangian::locate(double t, const PointY& p) const {
  if (fiber_.kind == FiberKind::Point) return {0.0, std::abs(model_.v(p) - curve_(t))};
  const PointY q = parallel_transport(model_, curve_, t, anchor_t_, p, opts_);
  return fiber_.invert(model_.fiber_coordinate(q));
}

FiberedLagrangian FiberedLagrangian::rotated(double angle) const {
  // The fiber chart is not rotation equivariant, so the fiber curve is kept in
  // chart coordinates over the rotated anchor value.
  return {model_, curve_.rotated(angle), fiber_, anchor_t_, opts_};
}

BaseHomotopy BaseHomotopy::identity(BasePath gamma) {
  BaseHomotopy h;
  h.gamma_ = std::move(gamma);
  h.target_ = Target::Identity;
  return h;
}

namespace {
void check_range(const BasePath& g, double a, double b, double width) {
  if (!(b > a) || !(width > 0.0)) fail(ErrorKind::Argument, "homotopy range needs a < b and width > 0");
  if (!g.contains(a) || !g.contains(b)) fail(ErrorKind::Argument, "homotopy range outside curve domain");
}
}  // namespace

BaseHomotopy BaseHomotopy::to_constant(BasePath gamma, cplx c, double a, double b, double width) {
  check_range(gamma, a, b, width);
  BaseHomotopy h;
  h.gamma_ = std::move(gamma);
  h.target_ = Target::Constant;
  h.c_ = c;
  h.a_ = a;
  h.b_ = b;
  h.width_ = width;
  return h;
}

BaseHomotopy BaseHomotopy::to_path(BasePath gamma, BasePath delta, double a, double b, double width) {
  check_range(gamma, a, b, width);
  BaseHomotopy h;
  h.gamma_ = std::move(gamma);
  h.delta_ = std::move(delta);
  h.target_ = Target::Path;
  h.a_ = a;
  h.b_ = b;
  h.width_ = width;
  return h;
}

double BaseHomotopy::bump(double t) const {
  if (target_ == Target::Identity) return 0.0;
  if (t < a_) return smoothstep((t - (a_ - width_)) / width_);
  if (t > b_) return smoothstep(((b_ + width_) - t) / width_);
  return 1.0;
}

cplx BaseHomotopy::target(double t) const {
  switch (target_) {
    case Target::Identity: return gamma_(t);
    case Target::Constant: return c_;
    case Target::Path: {
      const double x = std::clamp((t - a_) / (b_ - a_), 0.0, 1.0);
      return delta_(delta_.t_min() + x * (delta_.t_max() - delta_.t_min()));
    }
  }
  return {};
}

cplx BaseHomotopy::ds(double t) const {
  if (target_ == Target::Identity) return {};
  const double chi = bump(t);
  if (chi == 0.0) return {};
  return chi * (target(t) - gamma_(t));
}

BasePath BaseHomotopy::s_line(double t) const { return BasePath::line(gamma_(t), ds(t), 0.0, 1.0); }

std::vector<double> BaseHomotopy::breakpoints() const {
  if (target_ == Target::Identity) return {};
  return {a_ - width_, a_, b_, b_ + width_};
}

void BaseHomotopy::check(const Model& model, double clearance, int ns, int nt) const {
  if (target_ == Target::Identity || model.critical_values().empty()) return;
  const double t0 = std::max(gamma_.t_min(), a_ - width_);
  const double t1 = std::min(gamma_.t_max(), b_ + width_);
  for (int j = 0; j <= nt; ++j) {
    const double t = t0 + (t1 - t0) * j / nt;
    for (int i = 0; i <= ns; ++i) {
      const double s = static_cast<double>(i) / ns;
      const double d = model.critical_clearance((*this)(s, t));
      if (d < clearance) {
        std::ostringstream os;
        os << "h_s(t) comes within " << d << " of a critical value at s=" << s << ", t=" << t;
        fail(ErrorKind::Homotopy, os.str());
      }
    }
  }
}

ParamPoint ParamPath::at(double tau) const {
  if (vertices.size() < 2) return vertices.empty() ? ParamPoint{} : vertices.front();
  std::vector<double> len{0.0};
  for (std::size_t k = 1; k < vertices.size(); ++k) {
    const ParamPoint d = vertices[k] - vertices[k - 1];
    len.push_back(len.back() + std::hypot(d.t, d.u));
  }
  if (len.back() == 0.0) return vertices.front();
  const double target = std::clamp(tau, 0.0, 1.0) * len.back();
  std::size_t k = 1;
  while (k + 1 < vertices.size() && len[k] < target) ++k;
  const double seg = len[k] - len[k - 1];
  const double x = seg > 0.0 ? (target - len[k - 1]) / seg : 0.0;
  return vertices[k - 1] + x * (vertices[k] - vertices[k - 1]);
}

namespace {

// Real coordinates of a complex vector.
std::vector<double> realify(const CVec& v) {
  std::vector<double> r;
  for (int i = 0; i < v.dim(); ++i) {
    r.push_back(v[i].real());
    r.push_back(v[i].imag());
  }
  return r;
}

std::vector<std::vector<double>> orthonormal(std::span<const CVec> A) {
  std::vector<std::vector<double>> Q;
  for (const auto& a : A) {
    auto q = realify(a);
    for (const auto& e : Q) {
      double d = 0.0;
      for (std::size_t i = 0; i < q.size(); ++i) d += e[i] * q[i];
      for (std::size_t i = 0; i < q.size(); ++i) q[i] -= d * e[i];
    }
    double n = 0.0;
    for (double x : q) n += x * x;
    n = std::sqrt(n);
    if (!(n > 1e-14)) fail(ErrorKind::Frame, "linearly dependent frame in principal angle");
    for (double& x : q) x /= n;
    Q.push_back(std::move(q));
  }
  return Q;
}

}  // namespace

double min_principal_angle(std::span<const CVec> A, std::span<const CVec> B) {
  if (A.size() != B.size() || A.empty() || A.size() > 2) fail(ErrorKind::Argument, "principal angle needs equal frames of size 1 or 2");
  const auto QA = orthonormal(A);
  const auto QB = orthonormal(B);
  double M[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < QA.size(); ++i)
    for (std::size_t j = 0; j < QB.size(); ++j)
      for (std::size_t k = 0; k < QA[i].size(); ++k) M[i][j] += QA[i][k] * QB[j][k];
  double smax = 0.0;
  if (QA.size() == 1) {
    smax = std::abs(M[0][0]);
  } else {
    // Largest eigenvalue of M^T M.
    const double a = M[0][0] * M[0][0] + M[1][0] * M[1][0];
    const double d = M[0][1] * M[0][1] + M[1][1] * M[1][1];
    const double b = M[0][0] * M[0][1] + M[1][0] * M[1][1];
    const double lam = 0.5 * (a + d) + std::sqrt(0.25 * (a - d) * (a - d) + b * b);
    smax = std::sqrt(std::max(0.0, lam));
  }
  return std::acos(std::min(1.0, smax));
}

}  // namespace lgf

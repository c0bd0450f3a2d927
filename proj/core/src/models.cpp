#include "lgfloer/models.hpp"

#include <limits>
#include <sstream>

namespace lgf {

namespace {

void require_dim(const Model& m, const CVec& x, const char* what) {
  if (x.dim() != m.dim()) {
    fail(ErrorKind::Argument, std::string(what) + " has dimension " + std::to_string(x.dim()) +
                                  ", model " + m.name() + " expects " + std::to_string(m.dim()));
  }
}

std::string format_complex(cplx z) {
  std::ostringstream os;
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

}  // namespace

Model make_model(std::string_view id) {
  Model m;
  if (id == "trivial_line") {
    m.id_ = ModelId::TrivialLine;
    m.dim_ = 1;
  } else if (id == "conic") {
    m.id_ = ModelId::Conic;
    m.dim_ = 2;
    m.critical_values_ = {cplx{0.0, 0.0}};
  } else if (id == "lefschetz_quadratic") {
    m.id_ = ModelId::LefschetzQuadratic;
    m.dim_ = 2;
    m.critical_values_ = {cplx{0.0, 0.0}};
  } else {
    fail(ErrorKind::Catalogue, "unknown model id '" + std::string(id) + "'");
  }
  m.name_ = std::string(id);
  return m;
}

std::vector<std::string> model_ids() { return {"trivial_line", "conic", "lefschetz_quadratic"}; }

std::string describe_model(const Model& model) {
  std::ostringstream os;
  os << model.name() << "  dim=" << model.dim() << "  critv={";
  for (std::size_t i = 0; i < model.critical_values().size(); ++i) {
    if (i) os << ",";
    os << format_complex(model.critical_values()[i]);
  }
  os << "}";
  return os.str();
}

cplx Model::v(const PointY& p) const {
  switch (id_) {
    case ModelId::TrivialLine: return p[0];
    case ModelId::Conic: return p[0] * p[1];
    case ModelId::LefschetzQuadratic: return p[0] * p[0] + p[1] * p[1];
  }
  return {};
}

CVec Model::grad(const PointY& p) const {
  switch (id_) {
    case ModelId::TrivialLine: return CVec(cplx{1.0});
    case ModelId::Conic: return CVec(p[1], p[0]);
    case ModelId::LefschetzQuadratic: return CVec(2.0 * p[0], 2.0 * p[1]);
  }
  return {};
}

cplx Model::dv(const PointY& p, const CVec& x) const {
  const CVec g = grad(p);
  cplx s{};
  for (int i = 0; i < dim_; ++i) s += g[i] * x[i];
  return s;
}

double Model::omega(const PointY& p, const TangentVec& x, const TangentVec& y) const {
  require_dim(*this, p, "point");
  require_dim(*this, x.comp, "tangent vector");
  require_dim(*this, y.comp, "tangent vector");
  if (distance(x.base, p) != 0.0 || distance(y.base, p) != 0.0) {
    fail(ErrorKind::Argument, "tangent vectors are not based at the evaluation point");
  }
  return omega_std(x.comp, y.comp);
}

cplx Model::Omega(const PointY& p, std::span<const TangentVec> frame) const {
  require_dim(*this, p, "point");
  std::vector<CVec> comps;
  comps.reserve(frame.size());
  for (const auto& t : frame) {
    if (distance(t.base, p) != 0.0) fail(ErrorKind::Argument, "frame vector based at another point");
    comps.push_back(t.comp);
  }
  return Omega(comps);
}

cplx Model::Omega(std::span<const CVec> frame) const {
  if (static_cast<int>(frame.size()) != dim_) {
    fail(ErrorKind::Argument, "volume form needs " + std::to_string(dim_) + " vectors, got " +
                                  std::to_string(frame.size()));
  }
  for (const auto& f : frame) require_dim(*this, f, "frame vector");
  if (dim_ == 1) return frame[0][0];
  return frame[0][0] * frame[1][1] - frame[1][0] * frame[0][1];
}

double Model::critical_clearance(cplx c) const {
  double best = std::numeric_limits<double>::infinity();
  for (cplx cv : critical_values_) best = std::min(best, std::abs(c - cv));
  return best;
}

PointY Model::fiber_point(cplx c, cplx w) const {
  switch (id_) {
    case ModelId::TrivialLine: return CVec(c);
    case ModelId::Conic: return CVec(w, c / w);
    case ModelId::LefschetzQuadratic:
      return CVec(0.5 * (w + c / w), (w - c / w) / cplx{0.0, 2.0});
  }
  return {};
}

CVec Model::fiber_point_dw(cplx c, cplx w) const {
  switch (id_) {
    case ModelId::TrivialLine: return CVec::zero(1);
    case ModelId::Conic: return CVec(cplx{1.0}, -c / (w * w));
    case ModelId::LefschetzQuadratic:
      return CVec(0.5 * (1.0 - c / (w * w)), (1.0 + c / (w * w)) / cplx{0.0, 2.0});
  }
  return {};
}

cplx Model::fiber_coordinate(const PointY& p) const {
  switch (id_) {
    case ModelId::TrivialLine: return cplx{};
    case ModelId::Conic: return p[0];
    case ModelId::LefschetzQuadratic: return p[0] + cplx{0.0, 1.0} * p[1];
  }
  return {};
}

}  // namespace lgf

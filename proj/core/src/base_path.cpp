#include "lgfloer/base_path.hpp"

#include <algorithm>
#include <cmath>

#include "lgfloer/errors.hpp"

namespace lgf {

double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

double smoothstep_deriv(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return 30.0 * x * x * (1.0 - x) * (1.0 - x);
}

BasePath::BasePath(Fn value, Fn derivative, double t_min, double t_max, std::string kind)
    : value_(std::move(value)),
      derivative_(std::move(derivative)),
      t_min_(t_min),
      t_max_(t_max),
      kind_(std::move(kind)) {
  if (!(t_max > t_min)) fail(ErrorKind::Argument, "base path needs t_min < t_max");
}

bool BasePath::closed(double tol) const { return std::abs(value_(t_max_) - value_(t_min_)) <= tol; }

BasePath BasePath::reversed() const {
  const double s = t_min_ + t_max_;
  auto f = value_;
  auto df = derivative_;
  return {[f, s](double t) { return f(s - t); }, [df, s](double t) { return -df(s - t); }, t_min_,
          t_max_, kind_ + "_reversed"};
}

BasePath BasePath::rotated(double angle) const {
  const cplx e = std::polar(1.0, angle);
  auto f = value_;
  auto df = derivative_;
  return {[f, e](double t) { return e * f(t); }, [df, e](double t) { return e * df(t); }, t_min_,
          t_max_, kind_};
}

BasePath BasePath::restricted(double a, double b) const {
  if (!contains(a) || !contains(b) || a == b) fail(ErrorKind::Argument, "restriction outside path domain");
  auto f = value_;
  auto df = derivative_;
  const double L = b - a;
  return {[f, a, L](double t) { return f(a + L * t); },
          [df, a, L](double t) { return L * df(a + L * t); }, 0.0, 1.0, kind_};
}

BasePath BasePath::constant(cplx c, double t_min, double t_max) {
  return {[c](double) { return c; }, [](double) { return cplx{}; }, t_min, t_max, "constant"};
}

BasePath BasePath::segment(cplx a, cplx b) {
  return {[a, b](double t) { return a + (b - a) * t; }, [a, b](double) { return b - a; }, 0.0, 1.0,
          "segment"};
}

BasePath BasePath::line(cplx p, cplx d, double t_min, double t_max) {
  return {[p, d](double t) { return p + d * t; }, [d](double) { return d; }, t_min, t_max, "line"};
}

BasePath BasePath::arc(cplx center, double r, double a0, double a1, double t_min, double t_max) {
  if (!(r > 0.0)) fail(ErrorKind::Argument, "arc radius must be positive");
  const double da = a1 - a0;
  return {[=](double t) { return center + std::polar(r, a0 + da * t); },
          [=](double t) { return cplx{0.0, da} * std::polar(r, a0 + da * t); }, t_min, t_max, "arc"};
}

namespace {

double softplus(double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); }
double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Odd quintic with S(+-1) = +-1 and vanishing first and second derivatives there.
double odd_step(double t) {
  if (t >= 1.0) return 1.0;
  if (t <= -1.0) return -1.0;
  return t * (15.0 - 10.0 * t * t + 3.0 * t * t * t * t) / 8.0;
}
double odd_step_deriv(double t) {
  if (t >= 1.0 || t <= -1.0) return 0.0;
  const double q = 1.0 - t * t;
  return 15.0 * q * q / 8.0;
}

}  // namespace

BasePath BasePath::ushape(double R, double a0, double a1, double T) {
  if (!(R > 0.0) || !(T > 1.0)) fail(ErrorKind::Argument, "ushape needs R > 0 and T > 1");
  const double mid = 0.5 * (a0 + 2.0 * kPi + a1);
  const double half = 0.5 * (2.0 * kPi + a1 - a0);
  constexpr double w = 0.25;
  auto radius = [=](double t) { return R + w * (softplus((t - 1.0) / w) + softplus((-t - 1.0) / w)); };
  auto radius_d = [=](double t) { return sigmoid((t - 1.0) / w) - sigmoid((-t - 1.0) / w); };
  auto phi = [=](double t) { return mid + half * odd_step(t); };
  auto phi_d = [=](double t) { return half * odd_step_deriv(t); };
  return {[=](double t) { return std::polar(radius(t), phi(t)); },
          [=](double t) {
            const cplx e = std::polar(1.0, phi(t));
            return e * cplx{radius_d(t), radius(t) * phi_d(t)};
          },
          -T, T, "ushape"};
}

BasePath BasePath::composite(const std::vector<BasePath>& pieces) {
  if (pieces.empty()) fail(ErrorKind::Argument, "composite path needs at least one piece");
  for (std::size_t k = 1; k < pieces.size(); ++k) {
    if (std::abs(pieces[k](pieces[k].t_min()) - pieces[k - 1](pieces[k - 1].t_max())) > 1e-9) {
      fail(ErrorKind::Argument, "composite pieces are not continuous at junction " + std::to_string(k));
    }
  }
  auto locate = [pieces](double t) {
    const auto n = static_cast<double>(pieces.size());
    const double tc = std::clamp(t, 0.0, n);
    const auto k = static_cast<std::size_t>(std::min(std::floor(tc), n - 1.0));
    return std::pair{k, tc - static_cast<double>(k)};
  };
  return {[pieces, locate](double t) {
            auto [k, x] = locate(t);
            const auto& p = pieces[k];
            return p(p.t_min() + x * (p.t_max() - p.t_min()));
          },
          [pieces, locate](double t) {
            auto [k, x] = locate(t);
            const auto& p = pieces[k];
            const double L = p.t_max() - p.t_min();
            return L * p.derivative(p.t_min() + x * L);
          },
          0.0, static_cast<double>(pieces.size()), "composite"};
}

}  // namespace lgf

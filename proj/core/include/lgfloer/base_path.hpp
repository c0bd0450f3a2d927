#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lgfloer/types.hpp"

namespace lgf {

/// Smooth curve in the base C with a closed-form derivative.
class BasePath {
 public:
  using Fn = std::function<cplx(double)>;

  BasePath() = default;
  BasePath(Fn value, Fn derivative, double t_min, double t_max, std::string kind);

  [[nodiscard]] cplx operator()(double t) const { return value_(t); }
  [[nodiscard]] cplx derivative(double t) const { return derivative_(t); }
  [[nodiscard]] double t_min() const { return t_min_; }
  [[nodiscard]] double t_max() const { return t_max_; }
  [[nodiscard]] const std::string& kind() const { return kind_; }
  [[nodiscard]] bool valid() const { return static_cast<bool>(value_); }
  [[nodiscard]] bool contains(double t, double slack = 1e-12) const {
    return t >= t_min_ - slack && t <= t_max_ + slack;
  }
  [[nodiscard]] bool closed(double tol = 1e-9) const;

  /// Same image traversed backwards, on the same parameter interval.
  [[nodiscard]] BasePath reversed() const;
  /// Image multiplied by exp(i*angle) (rotation about the origin).
  [[nodiscard]] BasePath rotated(double angle) const;
  /// Restriction to [a, b], linearly reparametrized onto [0, 1].
  [[nodiscard]] BasePath restricted(double a, double b) const;

  static BasePath constant(cplx c, double t_min = 0.0, double t_max = 1.0);
  /// a + (b - a) t on [0, 1].
  static BasePath segment(cplx a, cplx b);
  /// p + t d on [t_min, t_max].
  static BasePath line(cplx p, cplx d, double t_min, double t_max);
  /// center + r exp(i(a0 + (a1 - a0) t)) on [t_min, t_max]; t = 0 gives angle a0.
  static BasePath arc(cplx center, double r, double a0, double a1, double t_min = 0.0,
                      double t_max = 1.0);
  /// U-shaped curve: two radial ends at angles a0 and 2 pi + a1 joined around
  /// the origin through the negative real axis, turning radius R, on [-T, T].
  static BasePath ushape(double R, double a0, double a1, double T);
  /// Concatenation; piece k is linearly reparametrized onto [k, k+1].
  static BasePath composite(const std::vector<BasePath>& pieces);

 private:
  Fn value_;
  Fn derivative_;
  double t_min_ = 0.0;
  double t_max_ = 1.0;
  std::string kind_;
};

/// Quintic smoothstep 6x^5 - 15x^4 + 10x^3 clamped to [0, 1], and its derivative.
double smoothstep(double x);
double smoothstep_deriv(double x);

}  // namespace lgf

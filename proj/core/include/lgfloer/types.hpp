#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

namespace lgf {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Complex vector of length 1 or 2. Every catalogue model has total complex
/// dimension at most 2, so a fixed-capacity value type avoids heap traffic in
/// the integrator hot loop.
class CVec {
 public:
  static constexpr int kMaxDim = 2;

  CVec() = default;
  explicit CVec(cplx a) : c_{a, cplx{}}, dim_(1) {}
  CVec(cplx a, cplx b) : c_{a, b}, dim_(2) {}

  static CVec zero(int dim) {
    CVec v;
    v.dim_ = dim;
    return v;
  }

  [[nodiscard]] int dim() const { return dim_; }
  cplx& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const cplx& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }

  CVec& operator+=(const CVec& o) {
    for (int i = 0; i < dim_; ++i) (*this)[i] += o[i];
    return *this;
  }
  CVec& operator-=(const CVec& o) {
    for (int i = 0; i < dim_; ++i) (*this)[i] -= o[i];
    return *this;
  }
  CVec& operator*=(cplx s) {
    for (int i = 0; i < dim_; ++i) (*this)[i] *= s;
    return *this;
  }

  friend CVec operator+(CVec a, const CVec& b) { return a += b; }
  friend CVec operator-(CVec a, const CVec& b) { return a -= b; }
  friend CVec operator-(CVec a) { return a *= cplx{-1.0}; }
  friend CVec operator*(cplx s, CVec a) { return a *= s; }
  friend CVec operator*(double s, CVec a) { return a *= cplx{s}; }
  friend CVec operator*(CVec a, double s) { return a *= cplx{s}; }
  friend CVec operator/(CVec a, double s) { return a *= cplx{1.0 / s}; }

  /// Componentwise conjugate.
  [[nodiscard]] CVec conj() const {
    CVec r = *this;
    for (int i = 0; i < dim_; ++i) r[i] = std::conj(r[i]);
    return r;
  }

  [[nodiscard]] double norm2() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += std::norm(c_[static_cast<std::size_t>(i)]);
    return s;
  }
  [[nodiscard]] double norm() const { return std::sqrt(norm2()); }

  [[nodiscard]] bool finite() const {
    for (int i = 0; i < dim_; ++i) {
      if (!std::isfinite((*this)[i].real()) || !std::isfinite((*this)[i].imag())) return false;
    }
    return true;
  }

 private:
  std::array<cplx, kMaxDim> c_{};
  int dim_ = 0;
};

/// Hermitian product sum conj(a_j) b_j.
inline cplx herm(const CVec& a, const CVec& b) {
  cplx s{};
  for (int i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

/// Standard Kaehler form on C^n: sum Im(conj(x_j) y_j).
inline double omega_std(const CVec& x, const CVec& y) { return herm(x, y).imag(); }

inline double distance(const CVec& a, const CVec& b) { return (a - b).norm(); }

using PointY = CVec;

/// Tangent vector at a chart point; components live in C^{n+1}.
struct TangentVec {
  PointY base;
  CVec comp;
};

/// Point of a fibered Lagrangian in its own coordinates: base-curve parameter t
/// and fiber-Lagrangian parameter u.
struct ParamPoint {
  double t = 0.0;
  double u = 0.0;
};

inline ParamPoint operator+(ParamPoint a, ParamPoint b) { return {a.t + b.t, a.u + b.u}; }
inline ParamPoint operator-(ParamPoint a, ParamPoint b) { return {a.t - b.t, a.u - b.u}; }
inline ParamPoint operator*(double s, ParamPoint a) { return {s * a.t, s * a.u}; }

}  // namespace lgf

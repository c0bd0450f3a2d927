#pragma once

#include <vector>

#include "lgfloer/base_path.hpp"
#include "lgfloer/models.hpp"

namespace lgf {

struct IntegratorOptions {
  double step = 1e-3;          // RK4 step in path parameter
  double fiber_tol = 1e-8;     // max |v(p) - path(t)| after projection
  int max_newton_iters = 3;    // projection iterations per step
  double critical_clearance = 1e-6;  // min distance of the path to a critical value
};

struct TangentSplit {
  TangentVec vertical;
  TangentVec horizontal;
};

TangentSplit split_tangent(const Model& model, const PointY& p, const TangentVec& x);

/// Horizontal vector at p with dv = xi: xi * conj(grad v) / |grad v|^2.
CVec horizontal_lift(const Model& model, const PointY& p, cplx xi);

struct TransportStats {
  int steps = 0;
  double max_fiber_residual = 0.0;  // worst |v - path(t)| over accepted steps
};

PointY parallel_transport(const Model& model, const BasePath& path, double t0, double t1,
                          const PointY& q, const IntegratorOptions& opts = {},
                          TransportStats* stats = nullptr);

/// Transport q from ts[0] through every checkpoint in ts (monotone), returning
/// the point at each checkpoint; the first entry is q itself.
std::vector<PointY> transport_samples(const Model& model, const BasePath& path,
                                      const std::vector<double>& ts, const PointY& q,
                                      const IntegratorOptions& opts = {},
                                      TransportStats* stats = nullptr);

/// Transport once around a closed loop, from t_min to t_max.
PointY monodromy(const Model& model, const BasePath& loop, const PointY& q,
                 const IntegratorOptions& opts = {}, TransportStats* stats = nullptr);

/// Newton projection onto the fiber v = c along the horizontal line.
PointY project_to_fiber(const Model& model, const PointY& p, cplx c, int iters);

/// (|z1|^2 - |z2|^2) / 2, conserved by transport in the conic model.
inline double conic_moment(const PointY& p) { return 0.5 * (std::norm(p[0]) - std::norm(p[1])); }

}  // namespace lgf

#pragma once

#include <string>
#include <vector>

#include "lgfloer/disc_area.hpp"

namespace lgf {

/// trivial_line: polar parametrization of u(z) = R z on the unit disc.
DiscPatch round_disc(double R);
/// Constant map to p.
DiscPatch constant_disc(const PointY& p);
/// conic fiber annulus z1 = rho e^{i phi}, z2 = c / z1 for R_inner <= rho <= R_outer.
DiscPatch fiber_annulus(cplx c, double R_outer, double R_inner);

/// Strip (x, y) -> (1 - x) A0(y) + x A1(y), A_i running along L_i from p_plus
/// to p_minus on straight parameter paths. Arc 0 lies on L1 (p_plus to
/// p_minus), arc 1 on L0 (back to p_plus).
DiscPatch bigon_strip(const FiberedLagrangian& L0, const FiberedLagrangian& L1, const IntersectionPoint& p_plus,
                      const IntersectionPoint& p_minus);

struct TriangleOptions {
  double epsilon = 0.5;
  double circle_radius = 1.0;  // L0 fiber, anchored over i
  double ray_angle = 0.3;      // L1 fiber, anchored over -epsilon
  double spiral_k = 0.8;       // L2 fiber, anchored over -epsilon
  double spiral_angle = -0.4;
};

/// conic triangle with one side on a horizontal segment through i and two
/// sides on lines meeting at -epsilon; the isotopy contracts the top side
/// onto -epsilon.
struct TriangleSetup {
  FiberedLagrangian L0, L1, L2;
  LagrangianIsotopy iso;
  cplx fiber_value;
  std::vector<PointY> corners;  // p0 (on L2, L0), p1 (L0, L1), p2 (L1, L2)
  DiscPatch u_doubleprime;      // log-affine triangle in the fiber over -epsilon
  DiscPatch u;                  // u'' with the isotopy cylinder glued back on
  DiscPatch u_reparametrized;   // same pieces, reparametrized domains
  std::size_t m = 0;            // arc of u on L0
};

TriangleSetup conic_triangle(const TriangleOptions& opts = {});

/// Factory names accepted by scenario files.
std::vector<std::string> patch_factory_names();

}  // namespace lgf

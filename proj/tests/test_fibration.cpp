#include <doctest.h>

#include <algorithm>
#include <random>

#include "lgfloer/fibration.hpp"

using namespace lgf;

namespace {

bool near(const CVec& a, const CVec& b, double tol) { return distance(a, b) <= tol; }

// Phase gained by z1 around a loop c(theta) on the moment level mu:
// d log z1 = (dc/c) |z2|^2 / (|z1|^2 + |z2|^2), with the weight
// 1/2 - mu / (2 sqrt(mu^2 + |c|^2)). Simpson on the loop parameter.
double conic_holonomy_phase(const BasePath& loop, double mu) {
  const int n = 20000;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double t = loop.t_min() + (loop.t_max() - loop.t_min()) * k / n;
    const cplx c = loop(t);
    const double w = 0.5 - mu / (2.0 * std::sqrt(mu * mu + std::norm(c)));
    const double f = w * (loop.derivative(t) / c).imag();
    sum += f * (k == 0 || k == n ? 1 : (k % 2 ? 4 : 2));
  }
  return sum * (loop.t_max() - loop.t_min()) / (3.0 * n);
}

}  // namespace

TEST_CASE("tangent splitting at (1,1)") {
  const Model m = make_model("conic");
  const PointY p(1.0, 1.0);
  auto s = split_tangent(m, p, {p, CVec(1.0, 0.0)});
  CHECK(near(s.vertical.comp, CVec(0.5, -0.5), 1e-14));
  CHECK(near(s.horizontal.comp, CVec(0.5, 0.5), 1e-14));
  s = split_tangent(m, p, {p, CVec(1.0, -1.0)});
  CHECK(near(s.vertical.comp, CVec(1.0, -1.0), 1e-14));
  CHECK(s.horizontal.comp.norm() < 1e-14);

  const Model t = make_model("trivial_line");
  s = split_tangent(t, PointY(cplx(0.3, 2)), {PointY(cplx(0.3, 2)), CVec(1.0)});
  CHECK(s.vertical.comp.norm() < 1e-15);
  CHECK(near(s.horizontal.comp, CVec(1.0), 1e-15));
}

TEST_CASE("horizontal lift") {
  const Model m = make_model("conic");
  CHECK(near(horizontal_lift(m, PointY(1.0, 1.0), 1.0), CVec(0.5, 0.5), 1e-15));
  CHECK(horizontal_lift(m, PointY(1.0, 1.0), 0.0).norm() == 0.0);
  const Model t = make_model("trivial_line");
  CHECK(near(horizontal_lift(t, PointY(cplx(4, 1)), cplx(2, -3)), CVec(cplx(2, -3)), 1e-15));
}

TEST_CASE("property: horizontal lift is omega-orthogonal to the fiber and has dv = xi") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  auto rc = [&] { return cplx(g(rng), g(rng)); };
  for (const char* id : {"conic", "lefschetz_quadratic"}) {
    const Model m = make_model(id);
    for (int k = 0; k < 40; ++k) {
      const PointY p(rc(), rc());
      const cplx xi = rc();
      const CVec h = horizontal_lift(m, p, xi);
      CHECK(std::abs(m.dv(p, h) - xi) < 1e-12 * (1.0 + std::abs(xi)));
      const CVec e = split_tangent(m, p, {p, CVec(rc(), rc())}).vertical.comp;
      CHECK(std::abs(m.omega(p, {p, h}, {p, e})) < 1e-12 * (1.0 + h.norm() * e.norm()));
      CHECK(std::abs(m.omega(p, {p, h}, {p, Model::J(e)})) < 1e-12 * (1.0 + h.norm() * e.norm()));
    }
  }
}

TEST_CASE("transport oracles") {
  const Model m = make_model("conic");
  CHECK(near(parallel_transport(m, BasePath::constant(2.0), 0, 1, PointY(1.0, 2.0)), PointY(1.0, 2.0), 1e-15));
  TransportStats st;
  const PointY a = parallel_transport(m, BasePath::segment(1.0, 4.0), 0, 1, PointY(1.0, 1.0), {}, &st);
  CHECK(near(a, PointY(2.0, 2.0), 1e-6));
  CHECK(st.max_fiber_residual <= 1e-8);
  const PointY b = parallel_transport(m, BasePath::arc(0, 1, 0, kPi), 0, 1, PointY(1.0, 1.0));
  CHECK(near(b, PointY(cplx(0, 1), cplx(0, 1)), 1e-6));
}

TEST_CASE("monodromy around the critical value") {
  const Model m = make_model("conic");
  CHECK(near(monodromy(m, BasePath::arc(0, 1, 0, 2 * kPi), PointY(1.0, 1.0)), PointY(-1.0, -1.0), 1e-6));
  const Model t = make_model("trivial_line");
  const BasePath loop = BasePath::arc(cplx(1, 1), 2, 0.3, 0.3 + 2 * kPi);
  CHECK(near(monodromy(t, loop, PointY(loop(0))), PointY(loop(0)), 1e-12));
}

TEST_CASE("contractible loop: trivial on mu = 0, closed-form holonomy otherwise") {
  const Model m = make_model("conic");
  const BasePath loop = BasePath::arc(3.0, 0.5, kPi, 3 * kPi);
  const double r = std::sqrt(2.5);
  const PointY q0(r, r);
  CHECK(near(monodromy(m, loop, q0), q0, 1e-6));

  const PointY q(cplx(2.0, 0.5), 2.5 / cplx(2.0, 0.5));
  const double mu = conic_moment(q);
  const PointY end = monodromy(m, loop, q);
  const PointY oracle(q[0] * std::polar(1.0, conic_holonomy_phase(loop, mu)),
                      q[1] * std::polar(1.0, -conic_holonomy_phase(loop, mu)));
  CHECK(near(end, oracle, 1e-6));
  CHECK(distance(end, q) > 1e-3);

  IntegratorOptions fine;
  fine.step = 2.5e-4;
  CHECK(near(monodromy(m, loop, q, fine), end, 1e-8));
}

TEST_CASE("property: moment conservation and fiber constraint on random paths") {
  const Model m = make_model("conic");
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.5, 3.0), ang(-kPi, kPi);
  for (int k = 0; k < 20; ++k) {
    const cplx a = std::polar(u(rng), ang(rng)), b = std::polar(u(rng), ang(rng));
    const BasePath path = BasePath::segment(a, b);
    const double tt = std::clamp(-(std::conj(a) * (b - a)).real() / std::norm(b - a), 0.0, 1.0);
    if (std::abs(path(tt)) < 0.2) continue;
    const cplx w = std::polar(u(rng), ang(rng));
    const PointY q(w, a / w);
    TransportStats st;
    const PointY e = parallel_transport(m, path, 0, 1, q, {}, &st);
    CHECK(std::abs(conic_moment(e) - conic_moment(q)) <= 1e-8);
    CHECK(std::abs(m.v(e) - b) <= 1e-8);
    CHECK(st.max_fiber_residual <= 1e-8);
  }
}

TEST_CASE("transport toward a critical value fails loudly") {
  const Model m = make_model("conic");
  CHECK_THROWS_AS(parallel_transport(m, BasePath::segment(1.0, 0.0), 0, 1, PointY(1.0, 1.0)), Error);
}

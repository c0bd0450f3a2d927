#include <doctest.h>

#include <array>
#include <random>

#include "lgfloer/models.hpp"

using namespace lgf;
using doctest::Approx;

TEST_CASE("catalogue values") {
  const Model conic = make_model("conic");
  CHECK(conic.dim() == 2);
  CHECK(std::abs(conic.v(PointY(1.0, 1.0)) - cplx(1.0)) < 1e-15);
  REQUIRE(conic.critical_values().size() == 1);
  CHECK(std::abs(conic.critical_values()[0]) == 0.0);
  CHECK(make_model("trivial_line").critical_values().empty());
  const Model lq = make_model("lefschetz_quadratic");
  CHECK(std::abs(lq.v(PointY(cplx(1, 1), 2.0)) - (cplx(1, 1) * cplx(1, 1) + 4.0)) < 1e-14);
  CHECK_THROWS_AS(make_model("quartic"), Error);
}

TEST_CASE("describe_model lines") {
  CHECK(describe_model(make_model("conic")) == "conic  dim=2  critv={0}");
  CHECK(describe_model(make_model("trivial_line")) == "trivial_line  dim=1  critv={}");
}

TEST_CASE("omega on the standard form") {
  const Model m = make_model("conic");
  const PointY p(1.0, 1.0);
  auto tv = [&](CVec x) { return TangentVec{p, x}; };
  CHECK(m.omega(p, tv(CVec(1.0, 0.0)), tv(CVec(cplx(0, 1), 0.0))) == Approx(1.0));
  CHECK(m.omega(p, tv(CVec(1.0, 0.0)), tv(CVec(1.0, 0.0))) == Approx(0.0));
  const PointY q(2.0, 3.0);
  CHECK(m.omega(q, {q, CVec(1.0, 0.0)}, {q, CVec(0.0, 1.0)}) == Approx(0.0));
}

TEST_CASE("Omega is the determinant") {
  const Model m = make_model("conic");
  const std::array<CVec, 2> id{CVec(1.0, 0.0), CVec(0.0, 1.0)};
  const std::array<CVec, 2> dep{CVec(1.0, 0.0), CVec(2.0, 0.0)};
  const std::array<CVec, 2> swap{CVec(0.0, 1.0), CVec(1.0, 0.0)};
  CHECK(std::abs(m.Omega(id) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(m.Omega(dep)) < 1e-15);
  CHECK(std::abs(m.Omega(swap) + cplx(1.0)) < 1e-15);
}

TEST_CASE("property: omega(x, Jx) = |x|^2 and dv matches a finite difference") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g;
  auto rc = [&] { return cplx(g(rng), g(rng)); };
  for (const char* id : {"conic", "lefschetz_quadratic"}) {
    const Model m = make_model(id);
    for (int k = 0; k < 50; ++k) {
      const PointY p(rc(), rc());
      const CVec x(rc(), rc());
      CHECK(m.omega(p, {p, x}, {p, Model::J(x)}) == Approx(x.norm2()).epsilon(1e-12));
      const double h = 1e-6;
      const cplx fd = (m.v(p + h * x) - m.v(p - h * x)) / (2.0 * h);
      CHECK(std::abs(fd - m.dv(p, x)) < 1e-6 * (1.0 + std::abs(fd)));
    }
  }
}

TEST_CASE("fiber chart lies in the fiber") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const char* id : {"conic", "lefschetz_quadratic"}) {
    const Model m = make_model(id);
    for (int k = 0; k < 30; ++k) {
      const cplx c(u(rng), u(rng)), w(u(rng) + 2.5, u(rng));
      const PointY p = m.fiber_point(c, w);
      CHECK(std::abs(m.v(p) - c) < 1e-12 * (1.0 + std::abs(c)));
      CHECK(std::abs(m.fiber_coordinate(p) - w) < 1e-10 * std::abs(w));
      CHECK(std::abs(m.dv(p, m.fiber_point_dw(c, w))) < 1e-10);
    }
  }
}

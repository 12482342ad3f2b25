#include <doctest.h>

#include <cmath>
#include <vector>

#include "liftlab/catalog.hpp"
#include "liftlab/error.hpp"
#include "liftlab/models.hpp"
#include "liftlab/sampling.hpp"

using namespace liftlab;

namespace {

MetricModel metric(int n, const std::vector<std::string>& g) {
  MetricModel m{n, 0, {}};
  for (const auto& s : g) m.entries.push_back(expr_field(0, n, s));
  return m;
}

std::vector<double> coeffs(const Semispray& s, std::vector<double> p) {
  return s.coefficients(std::span<const double>(p));
}

LagrangianModel lagrangian(int n, const std::string& l) { return LagrangianModel(n, 1, expr_field(1, n, l)); }

}  // namespace

TEST_CASE("metric sprays") {
  const Semispray id = metric_to_spray(metric(2, {"1", "0", "0", "1"}));
  for (double v : coeffs(id, {0.3, -1, 2, 0.5})) CHECK(v == 0);
  CHECK(id.smooth_at_zero());

  const MetricModel d = metric(2, {"1", "0", "0", "x1^2 + 1"});
  const auto g = coeffs(metric_to_spray(d), {1, 0, 0, 1});
  CHECK(g[0] == doctest::Approx(-0.5));
  CHECK(g[1] == doctest::Approx(0.0));

  // hand Christoffels: 2G1 = -x1 y2^2, 2G2 = 2 x1/(x1^2+1) y1 y2
  const Semispray ds = metric_to_spray(d);
  const Semispray d2 = metric_to_spray(metric(2, {"2", "0", "0", "2*x1^2 + 2"}));
  for (const auto& p : sample_points(1, 2, 30, 1)) {
    const auto c = p.coords();
    const auto v = ds.coefficients(p);
    CHECK(v[0] == doctest::Approx(-c[0] * c[3] * c[3] / 2).epsilon(1e-13));
    CHECK(v[1] == doctest::Approx(c[0] / (c[0] * c[0] + 1) * c[2] * c[3]).epsilon(1e-13));
    const auto w = d2.coefficients(p);
    CHECK(w[0] == doctest::Approx(v[0]).epsilon(1e-14));
    CHECK(w[1] == doctest::Approx(v[1]).epsilon(1e-14));
  }
}

TEST_CASE("complete lift of a metric") {
  const MetricModel id = metric_complete_lift(metric(2, {"1", "0", "0", "1"}));
  REQUIRE(id.m() == 4);
  const double expected[4][4] = {{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}};
  const double p[] = {0.4, 1, -2, 3};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(id(a, b)(std::span<const double>(p)) == expected[a][b]);

  const MetricModel dc = metric_complete_lift(metric(2, {"1", "0", "0", "x1^2 + 1"}));
  const double q[] = {1.5, 0.2, 1, 0};
  CHECK(dc(0, 0)(std::span<const double>(q)) == 0);
  CHECK(dc(1, 1)(std::span<const double>(q)) == 3);
  CHECK(dc(0, 1)(std::span<const double>(q)) == 0);
  CHECK(dc(1, 3)(std::span<const double>(q)) == doctest::Approx(1.5 * 1.5 + 1));
  CHECK_NOTHROW(dc.validate());
}

TEST_CASE("metric validation") {
  CHECK_THROWS_AS(metric(2, {"1", "x1", "0", "1"}).validate(), InputError);
  CHECK_THROWS_AS(metric(2, {"1", "1", "1", "1"}).validate(), SingularMetric);
  CHECK_THROWS_AS(metric_to_spray(metric(1, {"0"})).coefficients(std::vector<double>{0, 1}), SingularMetric);
}

TEST_CASE("Euler-Lagrange semisprays") {
  const Semispray osc = lagrangian_to_semispray(lagrangian(1, "y1^2 - x1^2"));
  for (const auto& p : sample_points(1, 1, 20, 2)) {
    CHECK(osc.coefficients(p)[0] == doctest::Approx(p[0] / 2).epsilon(1e-14));
  }
  const Semispray free = lagrangian_to_semispray(lagrangian(2, "y1*y2"));
  for (double v : coeffs(free, {1, 2, 3, 4})) CHECK(v == 0);

  // L_g reproduces the metric spray
  const MetricModel d = metric(2, {"1", "0", "0", "x1^2 + 1"});
  const Semispray a = lagrangian_to_semispray(metric_lagrangian(d));
  const Semispray b = metric_to_spray(d);
  for (const auto& p : sample_points(1, 2, 50, 3)) {
    const auto u = a.coefficients(p), v = b.coefficients(p);
    for (int i = 0; i < 2; ++i) CHECK(relative_gap(u[i], v[i]) < 1e-10);
  }
}

TEST_CASE("degenerate Lagrangians") {
  const LagrangianModel l = lagrangian(2, "y1^2 + x2");
  CHECK_FALSE(l.certificate.full_rank);
  CHECK_THROWS_AS(lagrangian_to_semispray(l), DegenerateLagrangian);
  CHECK(lagrangian(2, "y1^2 - y2^2").certificate.full_rank);
}

TEST_CASE("complete lift of a Lagrangian") {
  const LagrangianModel l = lagrangian(1, "y1^2");
  const LagrangianModel lc = lagrangian_complete_lift(l);
  CHECK(lc.level == 2);
  CHECK(lc.certificate.full_rank);
  for (const auto& p : sample_points(2, 1, 10, 4)) {
    CHECK(lc.lagrangian(p) == doctest::Approx(2 * p[2] * p[3]).epsilon(1e-14));
    const Jet2 j = lc.lagrangian.jet(p.coords());
    CHECK(j.hess(2, 2) == 0);
    CHECK(j.hess(2, 3) == 2);
    CHECK(j.hess(3, 3) == 0);
  }
  const LagrangianModel osc = lagrangian_complete_lift(lagrangian(1, "y1^2 - x1^2"));
  for (const auto& p : sample_points(2, 1, 10, 5)) {
    CHECK(osc.lagrangian(p) == doctest::Approx(-2 * p[0] * p[1] + 2 * p[2] * p[3]).epsilon(1e-14));
  }
}

TEST_CASE("(L_g)^c is the quadratic form of g^c") {
  for (const auto& g : {metric(2, {"1", "0", "0", "1"}), metric(2, {"1", "0", "0", "x1^2 + 1"}),
                        metric(2, {"exp(x2)", "x1", "x1", "2 + sin(x1)"})}) {
    const LagrangianModel lc = lagrangian_complete_lift(metric_lagrangian(g));
    const LagrangianModel lgc = metric_lagrangian(metric_complete_lift(g));
    for (const auto& p : sample_points(2, 2, 50, 6)) {
      CHECK(relative_gap(lc.lagrangian(p), lgc.lagrangian(p)) < 1e-10);
    }
  }
}

TEST_CASE("connections") {
  AffineConnectionModel zero{2, std::vector<ScalarField>(8, ScalarField::constant(0, 2, 0)), true};
  for (double v : coeffs(connection_to_spray(zero), {1, 2, 3, 4})) CHECK(v == 0);
  for (double v : coeffs(connection_complete_lift_spray(zero), {1, 2, 3, 4, 5, 6, 7, 8})) CHECK(v == 0);

  AffineConnectionModel one{1, {ScalarField::constant(0, 1, 1)}, true};
  const Semispray s = connection_to_spray(one);
  CHECK(coeffs(s, {0.2, 3})[0] == 4.5);
  const auto c = coeffs(connection_complete_lift_spray(one), {0, 1, 2, 3});
  CHECK(c[0] == 2.0);
  CHECK(c[1] == 6.0);
  CHECK(is_spray(connection_complete_lift_spray(one)).pass);

  // Levi-Civita round trip
  const MetricModel d = metric(2, {"1", "0", "0", "x1^2 + 1"});
  const Semispray a = connection_to_spray(levi_civita(d));
  const Semispray b = metric_to_spray(d);
  for (const auto& p : sample_points(1, 2, 30, 7)) {
    const auto u = a.coefficients(p), v = b.coefficients(p);
    for (int i = 0; i < 2; ++i) CHECK(relative_gap(u[i], v[i]) < 1e-14);
  }
}

TEST_CASE("lifted connection spray has the block pattern of a complete lift") {
  const CatalogModel m = catalog_model("diag-metric");
  const Semispray c = connection_complete_lift_spray(*m.connection);
  for (const auto& p : sample_points(2, 2, 20, 8)) {
    // vertical coefficients depend on (x, X) only: perturbing y and Y leaves them fixed
    std::vector<double> q(p.coords().begin(), p.coords().end());
    q[2] += 0.3;
    q[7] -= 0.2;
    const auto u = c.coefficients(p), v = c.coefficients(std::span<const double>(q));
    CHECK(u[0] == v[0]);
    CHECK(u[1] == v[1]);
    // the complete coefficients are quadratic jointly in (X, Y)
    const BundlePoint s2 = scale_fibre(p, 2.0);
    const auto w = c.coefficients(s2);
    for (int i = 0; i < 4; ++i) CHECK(w[i] == doctest::Approx(4 * u[i]).epsilon(1e-12));
  }
}

TEST_CASE("consistency of lifted models") {
  const CatalogModel d = catalog_model("diag-metric");
  const Semispray lhs = complete_lift(metric_to_spray(*d.metric));
  const Semispray rhs = metric_to_spray(metric_complete_lift(*d.metric));
  const Semispray osc = complete_lift(lagrangian_to_semispray(*catalog_model("oscillator").lagrangian));
  const Semispray oscl = lagrangian_to_semispray(lagrangian_complete_lift(*catalog_model("oscillator").lagrangian));
  const Semispray dl = complete_lift(lagrangian_to_semispray(*d.lagrangian));
  const Semispray dlc = lagrangian_to_semispray(lagrangian_complete_lift(*d.lagrangian));
  for (const auto& p : sample_points(2, 2, 100, 9)) {
    const auto u = lhs.coefficients(p), v = rhs.coefficients(p);
    const auto a = dl.coefficients(p), b = dlc.coefficients(p);
    for (int i = 0; i < 4; ++i) {
      CHECK(relative_gap(u[i], v[i]) < 1e-9);
      CHECK(relative_gap(a[i], b[i]) < 1e-8);
    }
  }
  for (const auto& p : sample_points(2, 1, 100, 10)) {
    const auto u = osc.coefficients(p), v = oscl.coefficients(p);
    for (int i = 0; i < 2; ++i) CHECK(relative_gap(u[i], v[i]) < 1e-9);
  }
}

TEST_CASE("dense solve") {
  std::vector<Hyper> a{Hyper(0.0), Hyper(2.0), Hyper(1.0), Hyper(1.0)};
  std::vector<Hyper> b{Hyper(4.0), Hyper(3.0)};
  double pivot = 0;
  REQUIRE(solve_dense(a, b, 2, &pivot));
  CHECK(b[0].value() == doctest::Approx(1.0));
  CHECK(b[1].value() == doctest::Approx(2.0));
  std::vector<Hyper> s{Hyper(1.0), Hyper(2.0), Hyper(2.0), Hyper(4.0)};
  std::vector<Hyper> r{Hyper(1.0), Hyper(1.0)};
  CHECK_FALSE(solve_dense(s, r, 2));
}

#include <doctest.h>

#include <cmath>
#include <vector>

#include "liftlab/error.hpp"
#include "liftlab/hyper.hpp"
#include "liftlab/jet.hpp"

using namespace liftlab;

namespace {

// x + e0 a + e1 b + e0 e1 c
Hyper second_order(double x, double a, double b, double c) {
  const Hyper h0 = perturb(constants(std::vector<double>{x}), std::vector<double>{a})[0];
  std::vector<Hyper> base{h0};
  std::vector<Hyper> dir{Hyper(b)};
  Hyper h = perturb(base, dir)[0];
  h.coeff_ref(3) = c;
  return h;
}

}  // namespace

TEST_CASE("one generator carries the first derivative") {
  const auto x = perturb(constants(std::vector<double>{0.7}), std::vector<double>{1.0});
  CHECK(x[0].order() == 1);
  const Hyper s = sin(x[0]);
  CHECK(s.value() == doctest::Approx(std::sin(0.7)));
  CHECK(s.coeff(1) == doctest::Approx(std::cos(0.7)));
  const Hyper q = x[0] * x[0] * x[0];
  CHECK(q.coeff(1) == doctest::Approx(3 * 0.49));
}

TEST_CASE("nested generators give mixed second derivatives") {
  // f(u) with u = x + e0 + e1: the e0 e1 coefficient is f''(x)
  const Hyper u = second_order(0.4, 1, 1, 0);
  const double x = 0.4;
  CHECK(exp(u).coeff(3) == doctest::Approx(std::exp(x)));
  CHECK(log(u).coeff(3) == doctest::Approx(-1 / (x * x)));
  CHECK(sqrt(u).coeff(3) == doctest::Approx(-0.25 * std::pow(x, -1.5)));
  CHECK(cos(u).coeff(3) == doctest::Approx(-std::cos(x)));
  CHECK(pow(u, 2.5).coeff(3) == doctest::Approx(2.5 * 1.5 * std::pow(x, 0.5)));
  CHECK(pow(u, 3).coeff(3) == doctest::Approx(6 * x));
  CHECK((Hyper(1.0) / u).coeff(3) == doctest::Approx(2 / (x * x * x)));
}

TEST_CASE("base and tangent split by generator") {
  const Hyper h = second_order(2, 3, 5, 7);
  CHECK(h.base(1).value() == 2);
  CHECK(h.base(1).coeff(1) == 3);
  CHECK(h.tangent(1).value() == 5);
  CHECK(h.tangent(1).coeff(1) == 7);
  // generators above the removed one shift down
  CHECK(h.tangent(0).value() == 3);
  CHECK(h.tangent(0).coeff(1) == 7);
  CHECK(h.base(0).coeff(1) == 5);
  const Hyper j = Hyper::join(h.base(1), h.tangent(1));
  for (std::size_t m = 0; m < 4; ++m) CHECK(j.coeff(m) == h.coeff(m));
}

TEST_CASE("binary operations promote lower orders") {
  const Hyper h = second_order(1, 1, 0, 0);
  const Hyper s = h + Hyper(2.0);
  CHECK(s.value() == 3);
  CHECK(s.coeff(1) == 1);
  CHECK(max_order(std::vector<Hyper>{Hyper(1.0), h}) == 2);
}

TEST_CASE("pow with Hyper exponent") {
  // d/dt (t^t) = t^t (log t + 1)
  const auto t = perturb(constants(std::vector<double>{1.7}), std::vector<double>{1.0})[0];
  const Hyper r = pow(t, t);
  CHECK(r.coeff(1) == doctest::Approx(std::pow(1.7, 1.7) * (std::log(1.7) + 1)));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(log(Hyper(0.0)), DomainError);
  CHECK_THROWS_AS(sqrt(Hyper(-1.0)), DomainError);
  const auto z = perturb(constants(std::vector<double>{0.0}), std::vector<double>{1.0})[0];
  CHECK_THROWS_AS(sqrt(z), DomainError);
  CHECK_THROWS_AS(abs_smooth(z, 0.0), NonSmoothError);
  CHECK(abs_smooth(Hyper(-2.0), 0.0).value() == 2.0);
}

TEST_CASE("Jet2 arithmetic obeys the product and chain rules") {
  const Jet2 x = Jet2::variable(0.5, 0, 2), y = Jet2::variable(1.5, 1, 2);
  const Jet2 f = x * y;
  CHECK(f.grad(0) == 1.5);
  CHECK(f.grad(1) == 0.5);
  CHECK(f.hess(0, 1) == 1);
  CHECK(f.hess(0, 0) == 0);
  const Jet2 g = sin(x * y);
  const double c = std::cos(0.75), s = std::sin(0.75);
  CHECK(g.grad(0) == doctest::Approx(c * 1.5));
  CHECK(g.hess(0, 0) == doctest::Approx(-s * 1.5 * 1.5));
  CHECK(g.hess(0, 1) == doctest::Approx(c - s * 0.75));
  const Jet2 k = Jet2(2.0) * x;  // constants broadcast
  CHECK(k.grad(0) == 2);
  CHECK(k.grad(1) == 0);
  CHECK((x / y).hess(1, 1) == doctest::Approx(2 * 0.5 / (1.5 * 1.5 * 1.5)));
}

#pragma once

// Nested first-order dual numbers.
//
// A Hyper of order k is a truncated polynomial in k nilpotent generators
// e_0 .. e_{k-1} with e_i^2 = 0. The coefficient of the product of the
// generators whose indices are set in `mask` is coeff(mask). Generators are
// introduced one at a time (innermost first), so a lift or a directional
// derivative never needs to know how deep its input already is: it appends
// one generator, evaluates, and reads off the top part.
//
// Values of lower order are treated as constant in the missing generators,
// so binary operations promote to the larger order.

#include <boost/container/small_vector.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace liftlab {

class Hyper {
 public:
  static constexpr int kMaxOrder = 10;

  Hyper() : Hyper(0.0) {}
  Hyper(double v) : order_(0), c_{v} {}  // NOLINT: implicit by design of the algebra

  /// Zero of the given order.
  static Hyper zero(int order);

  int order() const noexcept { return order_; }
  double value() const noexcept { return c_[0]; }
  double coeff(std::size_t mask) const { return mask < c_.size() ? c_[mask] : 0.0; }
  double& coeff_ref(std::size_t mask) { return c_[mask]; }
  std::size_t size() const noexcept { return c_.size(); }

  /// Same value viewed at order k >= order().
  Hyper promoted(int k) const;

  /// For x = b + e_g t, the parts b and t (neither depends on e_g). Values
  /// that do not involve generator g have t = 0.
  Hyper base(int g) const;
  Hyper tangent(int g) const;

  /// b + e_k * t where b and t are promoted to a common order k.
  static Hyper join(const Hyper& b, const Hyper& t);

  Hyper operator-() const;
  Hyper& operator+=(const Hyper& o);
  Hyper& operator-=(const Hyper& o);
  Hyper& operator*=(const Hyper& o);
  Hyper& operator/=(const Hyper& o);

  friend Hyper operator+(Hyper a, const Hyper& b) { return a += b; }
  friend Hyper operator-(Hyper a, const Hyper& b) { return a -= b; }
  friend Hyper operator*(const Hyper& a, const Hyper& b);
  friend Hyper operator/(const Hyper& a, const Hyper& b);

  /// f(a) for f given by its Taylor coefficients t[m] = f^(m)(a0)/m!, m = 0..order.
  Hyper compose(std::span<const double> taylor) const;

 private:
  int order_;
  boost::container::small_vector<double, 8> c_;
};

Hyper sin(const Hyper& a);
Hyper cos(const Hyper& a);
Hyper exp(const Hyper& a);
Hyper log(const Hyper& a);
Hyper sqrt(const Hyper& a);
Hyper pow(const Hyper& a, int p);
Hyper pow(const Hyper& a, double p);
Hyper pow(const Hyper& a, const Hyper& p);
Hyper abs_smooth(const Hyper& a, double delta);

/// Largest order among the values (0 for an empty span).
int max_order(std::span<const Hyper> x);

/// x_i + e_g * dir_i with g = max order of x and dir; g is the new generator.
std::vector<Hyper> perturb(std::span<const Hyper> x, std::span<const Hyper> dir);
std::vector<Hyper> perturb(std::span<const Hyper> x, std::span<const double> dir);

/// Plain values as order-0 Hypers.
std::vector<Hyper> constants(std::span<const double> x);

}  // namespace liftlab

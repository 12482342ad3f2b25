#pragma once

// Second-order jets: value, gradient and Hessian of a scalar with respect to
// a fixed list of active variables. The Hessian is stored as its packed upper
// triangle, so it is symmetric by construction.
//
// A jet with no active variables is a plain constant and broadcasts against
// jets of any dimension.

#include <cstddef>
#include <vector>

namespace liftlab {

class Jet2 {
 public:
  Jet2() = default;
  Jet2(double v) : value_(v) {}  // NOLINT: constants convert implicitly

  /// From explicit parts; `hess_upper` is the packed upper triangle.
  Jet2(double v, std::vector<double> grad, std::vector<double> hess_upper);

  /// The active variable `index` (of `dim`) at value v.
  static Jet2 variable(double v, std::size_t index, std::size_t dim);

  double value() const noexcept { return value_; }
  std::size_t dim() const noexcept { return grad_.size(); }
  double grad(std::size_t i) const { return grad_.empty() ? 0.0 : grad_[i]; }
  double hess(std::size_t i, std::size_t j) const;
  const std::vector<double>& gradient() const noexcept { return grad_; }

  /// f(a) given f(a0), f'(a0), f''(a0).
  Jet2 compose(double f0, double f1, double f2) const;

  Jet2 operator-() const;
  friend Jet2 operator+(const Jet2& a, const Jet2& b);
  friend Jet2 operator-(const Jet2& a, const Jet2& b);
  friend Jet2 operator*(const Jet2& a, const Jet2& b);
  friend Jet2 operator/(const Jet2& a, const Jet2& b);

 private:
  static std::size_t packed(std::size_t i, std::size_t j, std::size_t dim);
  void resize(std::size_t dim);

  double value_ = 0.0;
  std::vector<double> grad_;
  std::vector<double> hess_;
};

Jet2 sin(const Jet2& a);
Jet2 cos(const Jet2& a);
Jet2 exp(const Jet2& a);
Jet2 log(const Jet2& a);
Jet2 sqrt(const Jet2& a);
Jet2 pow(const Jet2& a, int p);
Jet2 pow(const Jet2& a, double p);
Jet2 pow(const Jet2& a, const Jet2& p);
Jet2 abs_smooth(const Jet2& a, double delta);

}  // namespace liftlab

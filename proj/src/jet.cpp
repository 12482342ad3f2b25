#include "liftlab/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "liftlab/error.hpp"

namespace liftlab {

namespace {
constexpr double kAbsSmoothCutoff = 1e-12;
}

Jet2::Jet2(double v, std::vector<double> grad, std::vector<double> hess_upper)
    : value_(v), grad_(std::move(grad)), hess_(std::move(hess_upper)) {
  if (hess_.size() != grad_.size() * (grad_.size() + 1) / 2) {
    throw InputError("Jet2: Hessian size does not match gradient length");
  }
}

Jet2 Jet2::variable(double v, std::size_t index, std::size_t dim) {
  Jet2 j(v);
  j.resize(dim);
  j.grad_[index] = 1.0;
  return j;
}

std::size_t Jet2::packed(std::size_t i, std::size_t j, std::size_t dim) {
  if (i > j) std::swap(i, j);
  return i * dim - i * (i + 1) / 2 + j;
}

void Jet2::resize(std::size_t dim) {
  grad_.assign(dim, 0.0);
  hess_.assign(dim * (dim + 1) / 2, 0.0);
}

double Jet2::hess(std::size_t i, std::size_t j) const {
  if (hess_.empty()) return 0.0;
  return hess_[packed(i, j, dim())];
}

Jet2 Jet2::compose(double f0, double f1, double f2) const {
  Jet2 r(f0);
  const std::size_t n = dim();
  if (n == 0) return r;
  r.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.grad_[i] = f1 * grad_[i];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const std::size_t p = packed(i, j, n);
      r.hess_[p] = f1 * hess_[p] + f2 * grad_[i] * grad_[j];
    }
  }
  return r;
}

Jet2 Jet2::operator-() const {
  Jet2 r = *this;
  r.value_ = -value_;
  for (double& g : r.grad_) g = -g;
  for (double& h : r.hess_) h = -h;
  return r;
}

Jet2 operator+(const Jet2& a, const Jet2& b) {
  if (b.dim() == 0) {
    Jet2 r = a;
    r.value_ += b.value_;
    return r;
  }
  if (a.dim() == 0) return b + a;
  Jet2 r = a;
  r.value_ += b.value_;
  for (std::size_t i = 0; i < r.grad_.size(); ++i) r.grad_[i] += b.grad_[i];
  for (std::size_t i = 0; i < r.hess_.size(); ++i) r.hess_[i] += b.hess_[i];
  return r;
}

Jet2 operator-(const Jet2& a, const Jet2& b) { return a + (-b); }

Jet2 operator*(const Jet2& a, const Jet2& b) {
  if (a.dim() == 0 || b.dim() == 0) {
    const Jet2& c = a.dim() == 0 ? a : b;
    const Jet2& j = a.dim() == 0 ? b : a;
    Jet2 r = j;
    r.value_ *= c.value_;
    for (double& g : r.grad_) g *= c.value_;
    for (double& h : r.hess_) h *= c.value_;
    return r;
  }
  const std::size_t n = a.dim();
  Jet2 r(a.value_ * b.value_);
  r.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.grad_[i] = a.value_ * b.grad_[i] + b.value_ * a.grad_[i];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const std::size_t p = Jet2::packed(i, j, n);
      r.hess_[p] = a.value_ * b.hess_[p] + b.value_ * a.hess_[p] + a.grad_[i] * b.grad_[j] +
                   a.grad_[j] * b.grad_[i];
    }
  }
  return r;
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
  const double x = b.value();
  return a * b.compose(1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x));
}

Jet2 sin(const Jet2& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return a.compose(s, c, -s);
}

Jet2 cos(const Jet2& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return a.compose(c, -s, -c);
}

Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.value());
  return a.compose(e, e, e);
}

Jet2 log(const Jet2& a) {
  const double x = a.value();
  if (!(x > 0.0)) throw DomainError("log of non-positive value " + std::to_string(x));
  return a.compose(std::log(x), 1.0 / x, -1.0 / (x * x));
}

Jet2 pow(const Jet2& a, double p) {
  const double x = a.value();
  if (!(x > 0.0)) {
    throw DomainError("non-integer power of non-positive value " + std::to_string(x));
  }
  return a.compose(std::pow(x, p), p * std::pow(x, p - 1), p * (p - 1) * std::pow(x, p - 2));
}

Jet2 sqrt(const Jet2& a) {
  const double x = a.value();
  if (x < 0.0 || (x == 0.0 && a.dim() > 0)) {
    throw DomainError("sqrt of non-positive value " + std::to_string(x));
  }
  if (a.dim() == 0) return Jet2(std::sqrt(x));
  return pow(a, 0.5);
}

Jet2 pow(const Jet2& a, int p) {
  if (p < 0) return Jet2(1.0) / pow(a, -p);
  Jet2 result(1.0);
  Jet2 base = a;
  while (p > 0) {
    if (p & 1) result = result * base;
    p >>= 1;
    if (p > 0) base = base * base;
  }
  return result;
}

Jet2 pow(const Jet2& a, const Jet2& p) {
  if (p.dim() == 0) {
    const double e = p.value();
    if (e == std::nearbyint(e) && std::abs(e) < 1 << 30) return pow(a, static_cast<int>(e));
    return pow(a, e);
  }
  return exp(p * log(a));
}

Jet2 abs_smooth(const Jet2& a, double delta) {
  if (delta > 0.0) return sqrt(a * a + Jet2(delta * delta));
  const double x = a.value();
  if (a.dim() == 0) return Jet2(std::abs(x));
  if (std::abs(x) <= kAbsSmoothCutoff) {
    throw NonSmoothError("abs_smooth differentiated at " + std::to_string(x) +
                         " (within cutoff of 0)");
  }
  return x > 0.0 ? a : -a;
}

}  // namespace liftlab

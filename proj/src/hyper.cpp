#include "liftlab/hyper.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "liftlab/error.hpp"

namespace liftlab {

namespace {

constexpr double kAbsSmoothCutoff = 1e-12;

void check_order(int k) {
  if (k > Hyper::kMaxOrder) {
    throw InputError("Hyper: nesting depth " + std::to_string(k) + " exceeds " +
                     std::to_string(Hyper::kMaxOrder));
  }
}

}  // namespace

Hyper Hyper::zero(int order) {
  check_order(order);
  Hyper h;
  h.order_ = order;
  h.c_.assign(std::size_t{1} << order, 0.0);
  return h;
}

Hyper Hyper::promoted(int k) const {
  if (k <= order_) return *this;
  check_order(k);
  Hyper h = *this;
  h.order_ = k;
  h.c_.resize(std::size_t{1} << k, 0.0);
  return h;
}

namespace {

// Drops bit g from mask m, shifting the higher bits down.
std::size_t squeeze(std::size_t m, int g) {
  const std::size_t low = (std::size_t{1} << g) - 1;
  return (m & low) | ((m >> 1) & ~low);
}

}  // namespace

Hyper Hyper::base(int g) const {
  if (order_ <= g) return *this;
  Hyper h = zero(order_ - 1);
  const std::size_t bit = std::size_t{1} << g;
  for (std::size_t m = 0; m < c_.size(); ++m) {
    if (!(m & bit)) h.c_[squeeze(m, g)] = c_[m];
  }
  return h;
}

Hyper Hyper::tangent(int g) const {
  if (order_ <= g) return Hyper(0.0);
  Hyper h = zero(order_ - 1);
  const std::size_t bit = std::size_t{1} << g;
  for (std::size_t m = 0; m < c_.size(); ++m) {
    if (m & bit) h.c_[squeeze(m, g)] = c_[m];
  }
  return h;
}

Hyper Hyper::join(const Hyper& b, const Hyper& t) {
  const int k = std::max(b.order_, t.order_);
  Hyper h = zero(k + 1);
  const std::size_t half = std::size_t{1} << k;
  for (std::size_t m = 0; m < b.c_.size(); ++m) h.c_[m] = b.c_[m];
  for (std::size_t m = 0; m < t.c_.size(); ++m) h.c_[half + m] = t.c_[m];
  return h;
}

Hyper Hyper::operator-() const {
  Hyper h = *this;
  for (double& v : h.c_) v = -v;
  return h;
}

Hyper& Hyper::operator+=(const Hyper& o) {
  if (o.order_ > order_) *this = promoted(o.order_);
  for (std::size_t m = 0; m < o.c_.size(); ++m) c_[m] += o.c_[m];
  return *this;
}

Hyper& Hyper::operator-=(const Hyper& o) {
  if (o.order_ > order_) *this = promoted(o.order_);
  for (std::size_t m = 0; m < o.c_.size(); ++m) c_[m] -= o.c_[m];
  return *this;
}

Hyper operator*(const Hyper& a, const Hyper& b) {
  if (a.order_ == 0) {
    Hyper h = b;
    for (double& v : h.c_) v *= a.c_[0];
    return h;
  }
  if (b.order_ == 0) {
    Hyper h = a;
    for (double& v : h.c_) v *= b.c_[0];
    return h;
  }
  const int k = std::max(a.order_, b.order_);
  Hyper h = Hyper::zero(k);
  const std::size_t n = h.c_.size();
  for (std::size_t s = 0; s < n; ++s) {
    double acc = 0.0;
    for (std::size_t t = s;; t = (t - 1) & s) {
      acc += a.coeff(t) * b.coeff(s ^ t);
      if (t == 0) break;
    }
    h.c_[s] = acc;
  }
  return h;
}

Hyper& Hyper::operator*=(const Hyper& o) { return *this = *this * o; }

Hyper Hyper::compose(std::span<const double> taylor) const {
  if (order_ == 0) return Hyper(taylor[0]);
  Hyper delta = *this;
  delta.c_[0] = 0.0;
  const int top = std::min<int>(order_, static_cast<int>(taylor.size()) - 1);
  Hyper r(taylor[top]);
  for (int m = top - 1; m >= 0; --m) {
    r = delta * r;
    r.c_[0] += taylor[m];
  }
  return r.promoted(order_);
}

Hyper operator/(const Hyper& a, const Hyper& b) {
  const double b0 = b.value();
  if (b.order_ == 0) {
    Hyper h = a;
    for (double& v : h.c_) v /= b0;
    return h;
  }
  std::vector<double> t(b.order_ + 1);
  double p = 1.0 / b0;
  for (int m = 0; m <= b.order_; ++m) {
    t[m] = (m % 2 == 0 ? p : -p);
    p /= b0;
  }
  return a * b.compose(t);
}

Hyper& Hyper::operator/=(const Hyper& o) { return *this = *this / o; }

Hyper sin(const Hyper& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  std::vector<double> t(a.order() + 1);
  double fact = 1.0;
  for (int m = 0; m <= a.order(); ++m) {
    if (m > 0) fact *= m;
    const double d[] = {s, c, -s, -c};
    t[m] = d[m % 4] / fact;
  }
  return a.compose(t);
}

Hyper cos(const Hyper& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  std::vector<double> t(a.order() + 1);
  double fact = 1.0;
  for (int m = 0; m <= a.order(); ++m) {
    if (m > 0) fact *= m;
    const double d[] = {c, -s, -c, s};
    t[m] = d[m % 4] / fact;
  }
  return a.compose(t);
}

Hyper exp(const Hyper& a) {
  const double e = std::exp(a.value());
  std::vector<double> t(a.order() + 1);
  double fact = 1.0;
  for (int m = 0; m <= a.order(); ++m) {
    if (m > 0) fact *= m;
    t[m] = e / fact;
  }
  return a.compose(t);
}

Hyper log(const Hyper& a) {
  const double x = a.value();
  if (!(x > 0.0)) throw DomainError("log of non-positive value " + std::to_string(x));
  std::vector<double> t(a.order() + 1);
  t[0] = std::log(x);
  double p = 1.0;
  for (int m = 1; m <= a.order(); ++m) {
    p /= x;
    t[m] = (m % 2 == 1 ? p : -p) / m;
  }
  return a.compose(t);
}

Hyper pow(const Hyper& a, double p) {
  const double x = a.value();
  if (!(x > 0.0)) {
    throw DomainError("non-integer power of non-positive value " + std::to_string(x));
  }
  std::vector<double> t(a.order() + 1);
  double binom = 1.0;
  for (int m = 0; m <= a.order(); ++m) {
    if (m > 0) binom *= (p - (m - 1)) / m;
    t[m] = binom * std::pow(x, p - m);
  }
  return a.compose(t);
}

Hyper sqrt(const Hyper& a) {
  const double x = a.value();
  if (x < 0.0 || (x == 0.0 && a.order() > 0)) {
    throw DomainError("sqrt of non-positive value " + std::to_string(x));
  }
  if (a.order() == 0) return Hyper(std::sqrt(x));
  return pow(a, 0.5);
}

Hyper pow(const Hyper& a, int p) {
  if (p < 0) return Hyper(1.0) / pow(a, -p);
  Hyper result(1.0);
  Hyper base = a;
  while (p > 0) {
    if (p & 1) result = result * base;
    p >>= 1;
    if (p > 0) base = base * base;
  }
  return result;
}

Hyper pow(const Hyper& a, const Hyper& p) {
  if (p.order() == 0) {
    const double e = p.value();
    if (e == std::nearbyint(e) && std::abs(e) < 1 << 30) return pow(a, static_cast<int>(e));
    return pow(a, e);
  }
  return exp(p * log(a));
}

Hyper abs_smooth(const Hyper& a, double delta) {
  if (delta > 0.0) return sqrt(a * a + Hyper(delta * delta));
  const double x = a.value();
  if (a.order() == 0) return Hyper(std::abs(x));
  if (std::abs(x) <= kAbsSmoothCutoff) {
    throw NonSmoothError("abs_smooth differentiated at " + std::to_string(x) +
                         " (within cutoff of 0)");
  }
  return x > 0.0 ? a : -a;
}

int max_order(std::span<const Hyper> x) {
  int k = 0;
  for (const auto& v : x) k = std::max(k, v.order());
  return k;
}

std::vector<Hyper> perturb(std::span<const Hyper> x, std::span<const Hyper> dir) {
  const int k = std::max(max_order(x), max_order(dir));
  std::vector<Hyper> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.push_back(Hyper::join(x[i].promoted(k), dir[i].promoted(k)));
  }
  return out;
}

std::vector<Hyper> perturb(std::span<const Hyper> x, std::span<const double> dir) {
  return perturb(x, constants(dir));
}

std::vector<Hyper> constants(std::span<const double> x) {
  return std::vector<Hyper>(x.begin(), x.end());
}

}  // namespace liftlab

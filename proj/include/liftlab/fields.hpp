#pragma once

// Scalar and vector fields on T^r M and their vertical/complete lifts.
//
// A field is an evaluator over Hyper coordinates, so it can be evaluated at
// plain points or differentiated to any order by nesting. Lifted fields are
// closed-form compositions of the base evaluator:
//
//   f^v(xi) = f(b)                 where kappa_{r+1}(xi) = (b, t)
//   f^c(xi) = df_b(t)
//
// and for a vector field with component blocks (A_0, A_1, ...):
//
//   A^v = (0, A_0^v, 0, A_1^v, ...)      A^c = (A_0^v, A_0^c, A_1^v, A_1^c, ...)

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "liftlab/bundle.hpp"
#include "liftlab/expr.hpp"
#include "liftlab/hyper.hpp"
#include "liftlab/jet.hpp"

namespace liftlab {

class ScalarField {
 public:
  using Fn = std::function<Hyper(std::span<const Hyper>)>;

  ScalarField(int level, int n, Fn fn, bool smooth_at_zero = true);

  /// Expression over the coordinate_names(level, n) variables (or any list of
  /// the same length, matched by position).
  static ScalarField from_expr(int level, int n, const Expr& e, bool smooth_at_zero = true);
  static ScalarField constant(int level, int n, double c);
  /// The coordinate function xi -> xi[index].
  static ScalarField coordinate(int level, int n, std::size_t index);

  int level() const noexcept { return level_; }
  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return bundle_size(level_, n_); }
  bool smooth_at_zero() const noexcept { return smooth_at_zero_; }

  Hyper operator()(std::span<const Hyper> xi) const { return fn_(xi); }
  double operator()(std::span<const double> xi) const;
  double operator()(const BundlePoint& p) const { return (*this)(p.coords()); }

  /// df_xi(dir).
  double derivative(std::span<const double> xi, std::span<const double> dir) const;

  /// Value, gradient and Hessian in all coordinates of the level.
  Jet2 jet(std::span<const double> xi) const;

 private:
  int level_;
  int n_;
  Fn fn_;
  bool smooth_at_zero_;
};

class VectorField {
 public:
  using Fn = std::function<std::vector<Hyper>(std::span<const Hyper>)>;

  VectorField(int level, int n, Fn fn, bool smooth_at_zero = true);

  static VectorField from_components(std::vector<ScalarField> components);
  static VectorField zero(int level, int n);

  int level() const noexcept { return level_; }
  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return bundle_size(level_, n_); }
  bool smooth_at_zero() const noexcept { return smooth_at_zero_; }

  std::vector<Hyper> operator()(std::span<const Hyper> xi) const;
  std::vector<double> operator()(std::span<const double> xi) const;
  std::vector<double> operator()(const BundlePoint& p) const { return (*this)(p.coords()); }

  ScalarField component(std::size_t i) const;

 private:
  int level_;
  int n_;
  Fn fn_;
  bool smooth_at_zero_;
};

// Lifts. Scalar lifts accept r <= 2, vector lifts r <= 1; LevelError otherwise.
ScalarField vlift_scalar(const ScalarField& f);
ScalarField clift_scalar(const ScalarField& f);
VectorField vlift_vector(const VectorField& a);
VectorField clift_vector(const VectorField& a);

/// [A, B]^k = A^j d_j B^k - B^j d_j A^k.
VectorField lie_bracket(const VectorField& a, const VectorField& b);

/// Liouville field C_r: zero on the first half, the fibre coordinates on the
/// second half (C_1 = y d/dy, C_2 = X d/dX + Y d/dY). r in {1, 2}.
VectorField liouville(int level, int n);

/// A(f) = df(A).
ScalarField apply(const VectorField& a, const ScalarField& f);

ScalarField operator+(const ScalarField& f, const ScalarField& g);
ScalarField operator-(const ScalarField& f, const ScalarField& g);
ScalarField operator*(const ScalarField& f, const ScalarField& g);
ScalarField operator*(double c, const ScalarField& f);
VectorField operator*(const ScalarField& f, const VectorField& a);
VectorField operator*(double c, const VectorField& a);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);

/// Scales the fibre half of a point: (b, t) -> (b, lambda t).
BundlePoint scale_fibre(const BundlePoint& p, double lambda);

struct HomogeneityReport {
  double degree = 0.0;
  double euler_residual = 0.0;    // max relative |C_r(f) - s f| (or bracket form)
  double scaling_residual = 0.0;  // max relative |f(lambda xi) - lambda^s f(xi)|
  double tolerance = 0.0;
  std::size_t samples = 0;
  bool pass = false;
};

inline constexpr double kScalingFactors[] = {0.5, 2.0, 3.0};

HomogeneityReport check_homogeneous(const ScalarField& f, double degree,
                                    std::span<const BundlePoint> samples, double tol = 1e-9);
/// Vector version: [C_r, A] = (s - 1) A, and base/fibre components scale with
/// lambda^(s-1) and lambda^s.
HomogeneityReport check_homogeneous(const VectorField& a, double degree,
                                    std::span<const BundlePoint> samples, double tol = 1e-9);

}  // namespace liftlab

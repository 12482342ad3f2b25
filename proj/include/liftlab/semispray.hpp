#pragma once

// Semisprays on M (level 1) and on TM (level 2).
//
// A level-r semispray lives on T^r M; with m = 2^(r-1) n its points split into
// a position half q and a velocity half v (each of length m), and as a vector
// field it reads
//
//   S = v^a d/dq^a - 2 G^a(q, v) d/dv^a,
//
// i.e. (y, -2G) at level 1 and (X, Y, -2G, -2H) at level 2. The m coefficient
// functions are stored together because model-derived sprays (metrics,
// Lagrangians) share work across them.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "liftlab/bundle.hpp"
#include "liftlab/fields.hpp"

namespace liftlab {

class Semispray {
 public:
  using CoeffFn = std::function<std::vector<Hyper>(std::span<const Hyper>)>;

  Semispray(int level, int n, CoeffFn coeffs, bool smooth_at_zero = true,
            bool spray_hint = false);

  /// Level-1 semispray from n coefficient fields G^i(x, y).
  static Semispray from_fields(std::vector<ScalarField> g, bool spray_hint = false);
  /// Level-2 semispray from paired coefficients G^i, H^i on (x, y, X, Y).
  static Semispray from_fields(std::vector<ScalarField> g, std::vector<ScalarField> h,
                               bool spray_hint = false);

  int level() const noexcept { return level_; }
  int n() const noexcept { return n_; }
  /// Number of coefficients (n at level 1, 2n at level 2).
  std::size_t m() const noexcept { return bundle_size(level_ - 1, n_); }
  bool smooth_at_zero() const noexcept { return smooth_at_zero_; }
  bool spray_hint() const noexcept { return spray_hint_; }

  std::vector<Hyper> coefficients(std::span<const Hyper> xi) const { return coeffs_(xi); }
  std::vector<double> coefficients(std::span<const double> xi) const;
  std::vector<double> coefficients(const BundlePoint& p) const { return coefficients(p.coords()); }

  /// Coefficient a as a scalar field (G^a, or H^(a-n) at level 2).
  ScalarField coefficient(std::size_t a) const;

  const CoeffFn& coefficient_fn() const noexcept { return coeffs_; }

 private:
  int level_;
  int n_;
  CoeffFn coeffs_;
  bool smooth_at_zero_;
  bool spray_hint_;
};

VectorField as_vector_field(const Semispray& s);

/// Sampling controls shared by the numerical certificates.
struct SampleSpec {
  std::size_t count = 64;
  std::uint64_t seed = 0x5eed;
};

/// True iff D pi o V = id at sampled slashed points (the position half of V
/// equals the velocity half of the point) within 1e-12. V at level 1 or 2.
bool is_semispray(const VectorField& v, SampleSpec samples = {});

/// S^c, with coefficients ((G^i)^v, (G^i)^c).
Semispray complete_lift(const Semispray& s);

/// S^T = kappa_3 o DS, a vector field on TTM that is not a semispray.
VectorField tangent_lift(const Semispray& s);

struct SprayReport {
  double bracket_residual = 0.0;      // max relative |[C_r, S] - S|
  double coefficient_residual = 0.0;  // degree-2 homogeneity of the coefficients
  double tolerance = 0.0;
  bool pass = false;
};

SprayReport is_spray(const Semispray& s, double tol = 1e-9, SampleSpec samples = {});

struct ProjectiveFactor {
  ScalarField p;
  double residual = 0.0;  // max normalized cross residual
  HomogeneityReport homogeneity;
};

/// P with coefficients(S2) = coefficients(S1) + P * (velocity half), if the
/// difference is proportional to the velocity at every sample.
std::optional<ProjectiveFactor> projective_factor(const Semispray& s1, const Semispray& s2,
                                                  double tol = 1e-8, SampleSpec samples = {});

struct RigidityReport {
  bool lifted_related = false;
  double lifted_factor_max_abs = 0.0;  // max |Q| over samples when related
  bool coefficients_equal = false;
  double max_coefficient_gap = 0.0;
  bool pass = false;  // lifted_related == coefficients_equal
};

RigidityReport projective_rigidity_check(const Semispray& s1, const Semispray& s2,
                                         double tol = 1e-8, SampleSpec samples = {});

}  // namespace liftlab

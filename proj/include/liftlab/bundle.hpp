#pragma once

// Iterated tangent bundles T^r M (r <= 3) in one global chart.
//
// A point of T^r M is a flat vector of 2^r * n coordinates. Blocks of length n
// are laid out as
//   r = 1: (x, y)
//   r = 2: (x, y, X, Y)
//   r = 3: (x, y, X, Y, u, v, U, V)
// so that the first half of a level-r point is its projection to level r-1.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace liftlab {

inline constexpr int kMaxLevel = 3;

/// Number of coordinates of a level-r point over an n-dimensional base.
constexpr std::size_t bundle_size(int level, int n) {
  return (std::size_t{1} << level) * static_cast<std::size_t>(n);
}

class BundlePoint {
 public:
  BundlePoint(int level, int n, std::vector<double> coords);

  int level() const noexcept { return level_; }
  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return coords_.size(); }

  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  /// Block `b` (0-based, length n) in the layout described above.
  std::span<const double> block(int b) const;

  friend bool operator==(const BundlePoint&, const BundlePoint&) = default;

 private:
  int level_;
  int n_;
  std::vector<double> coords_;
};

/// Optional axis-aligned box bounding the valid region of the base chart.
struct ChartSpec {
  int n = 1;
  std::optional<std::vector<double>> lower;
  std::optional<std::vector<double>> upper;

  /// Throws InputError unless n >= 1 and the box (if any) is nonempty.
  void validate() const;
  /// True iff the base point x lies strictly inside the box (always true
  /// without bounds).
  bool contains(std::span<const double> x) const;
};

/// Index permutation realizing kappa at the given level: kappa(p)[i] =
/// p[perm[i]]. kappa_1 is the identity.
std::vector<std::size_t> kappa_permutation(int level, int n);

/// kappa_2(x,y,X,Y) = (x,X,y,Y); kappa_3 swaps the (X,Y) and (u,v) pairs.
BundlePoint kappa(const BundlePoint& p);

/// Canonical projection pi_{r-1}: T^r M -> T^{r-1} M (drops the second half).
BundlePoint project(const BundlePoint& p);

/// Tangent of the projection, D pi_{r-2} = pi_{r-1} o kappa_r.
BundlePoint dprojection(const BundlePoint& p);

/// Membership in the slashed bundle: level 1 tests the y-block, level 2 the
/// X-block and level 3 the X-block of the composite projection to TM.
bool in_slashed(const BundlePoint& p, double eps_reg = 1e-12);

/// Generic permutation helper shared by the numeric and jet code paths.
template <class T>
std::vector<T> permute(std::span<const T> values, std::span<const std::size_t> perm) {
  std::vector<T> out;
  out.reserve(perm.size());
  for (std::size_t i : perm) out.push_back(values[i]);
  return out;
}

}  // namespace liftlab

#include "liftlab/bundle.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "liftlab/error.hpp"

namespace liftlab {

namespace {

void require_level(int level, int lo, int hi, const char* op) {
  if (level < lo || level > hi) {
    throw LevelError(std::string(op) + ": level " + std::to_string(level) +
                     " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

double block_norm(std::span<const double> b) {
  double s = 0.0;
  for (double v : b) s += v * v;
  return std::sqrt(s);
}

}  // namespace

BundlePoint::BundlePoint(int level, int n, std::vector<double> coords)
    : level_(level), n_(n), coords_(std::move(coords)) {
  require_level(level, 0, kMaxLevel, "BundlePoint");
  if (n < 1) throw InputError("BundlePoint: base dimension must be >= 1");
  if (coords_.size() != bundle_size(level, n)) {
    throw InputError("BundlePoint: expected " + std::to_string(bundle_size(level, n)) +
                     " coordinates at level " + std::to_string(level) + ", got " +
                     std::to_string(coords_.size()));
  }
}

std::span<const double> BundlePoint::block(int b) const {
  if (b < 0 || static_cast<std::size_t>(b) >= (std::size_t{1} << level_)) {
    throw InputError("BundlePoint::block: index out of range");
  }
  return std::span<const double>(coords_).subspan(static_cast<std::size_t>(b) * n_, n_);
}

void ChartSpec::validate() const {
  if (n < 1) throw InputError("ChartSpec: n must be >= 1");
  if (lower.has_value() != upper.has_value()) {
    throw InputError("ChartSpec: lower and upper bounds must be given together");
  }
  if (!lower) return;
  if (lower->size() != static_cast<std::size_t>(n) || upper->size() != static_cast<std::size_t>(n)) {
    throw InputError("ChartSpec: bound length must equal n");
  }
  for (int i = 0; i < n; ++i) {
    if (!((*lower)[i] < (*upper)[i])) throw InputError("ChartSpec: empty box");
  }
}

bool ChartSpec::contains(std::span<const double> x) const {
  if (!lower) return true;
  for (std::size_t i = 0; i < x.size() && i < lower->size(); ++i) {
    if (!(x[i] > (*lower)[i] && x[i] < (*upper)[i])) return false;
  }
  return true;
}

std::vector<std::size_t> kappa_permutation(int level, int n) {
  require_level(level, 1, kMaxLevel, "kappa");
  // Block-level permutations; kappa_1 is the identity.
  static constexpr std::size_t k2[] = {0, 2, 1, 3};
  static constexpr std::size_t k3[] = {0, 1, 4, 5, 2, 3, 6, 7};
  const std::size_t blocks = std::size_t{1} << level;
  std::vector<std::size_t> perm(blocks * n);
  for (std::size_t b = 0; b < blocks; ++b) {
    std::size_t src = b;
    if (level == 2) src = k2[b];
    if (level == 3) src = k3[b];
    for (int i = 0; i < n; ++i) perm[b * n + i] = src * n + i;
  }
  return perm;
}

BundlePoint kappa(const BundlePoint& p) {
  const auto perm = kappa_permutation(p.level(), p.n());
  return BundlePoint(p.level(), p.n(), permute<double>(p.coords(), perm));
}

BundlePoint project(const BundlePoint& p) {
  require_level(p.level(), 1, kMaxLevel, "project");
  const auto half = p.size() / 2;
  auto c = p.coords();
  return BundlePoint(p.level() - 1, p.n(), std::vector<double>(c.begin(), c.begin() + half));
}

BundlePoint dprojection(const BundlePoint& p) {
  require_level(p.level(), 2, kMaxLevel, "dprojection");
  return project(kappa(p));
}

bool in_slashed(const BundlePoint& p, double eps_reg) {
  switch (p.level()) {
    case 1:
      return block_norm(p.block(1)) > eps_reg;
    case 2:
      return block_norm(p.block(2)) > eps_reg;
    case 3:
      // X-block of D(pi_0 o pi_1)(p) = (x, u).
      return block_norm(p.block(4)) > eps_reg;
    default:
      return false;
  }
}

}  // namespace liftlab

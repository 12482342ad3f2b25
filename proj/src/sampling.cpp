#include "liftlab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace liftlab {

std::vector<BundlePoint> sample_points(int level, int n, std::size_t count, std::uint64_t seed,
                                       double scale, double min_fiber_norm) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-scale, scale);
  std::vector<BundlePoint> out;
  out.reserve(count);
  const std::size_t dim = bundle_size(level, n);
  while (out.size() < count) {
    std::vector<double> c(dim);
    for (double& v : c) v = unif(rng);
    BundlePoint p(level, n, std::move(c));
    if (level == 0 || in_slashed(p, min_fiber_norm)) out.push_back(std::move(p));
  }
  return out;
}

double relative_gap(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace liftlab

#pragma once

#include <cstdint>
#include <vector>

#include "liftlab/bundle.hpp"

namespace liftlab {

/// Deterministic points of T^r M with coordinates uniform in [-scale, scale].
/// At levels >= 1 the designated slashed block has norm at least
/// `min_fiber_norm` (rejection sampling), so the points are well inside the
/// slashed bundle.
std::vector<BundlePoint> sample_points(int level, int n, std::size_t count, std::uint64_t seed,
                                       double scale = 1.5, double min_fiber_norm = 0.1);

/// |a - b| / max(1, |a|, |b|).
double relative_gap(double a, double b);

}  // namespace liftlab

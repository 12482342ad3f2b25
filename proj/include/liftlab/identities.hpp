#pragma once

// Numerical certificates for the coordinate identities of the bundle maps and
// for the algebra of vertical and complete lifts.

#include <cstdint>
#include <string>
#include <vector>

#include "liftlab/bundle.hpp"
#include "liftlab/fields.hpp"

namespace liftlab {

struct IdentityResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// D kappa_r on T^(r+1) M: kappa_r applied to both halves. p.level in {2, 3}.
BundlePoint dkappa(const BundlePoint& p);

/// DD pi_0 : T^3 M -> TTM, (x,y,X,Y,u,v,U,V) -> (x,X,u,U).
BundlePoint ddprojection(const BundlePoint& p);

/// kappa involution, kappa_1 = id, the commutation rules and the level-3
/// identity, each checked bit-exactly (tolerance 0) at `count` points per level.
std::vector<IdentityResult> bundle_identities(int n, std::size_t count, std::uint64_t seed);

/// The ten lift formulas for f, g and A, B on TM, at points of TTM; residual
/// is the max relative gap per component.
std::vector<IdentityResult> lift_algebra_identities(const ScalarField& f, const ScalarField& g,
                                                    const VectorField& a, const VectorField& b,
                                                    std::span<const BundlePoint> samples,
                                                    double tol = 1e-10);

}  // namespace liftlab

#pragma once

// Semisprays induced by semi-Riemannian metrics, regular Lagrangians and
// affine connections, together with the complete lifts of those objects.
//
// Every model lives on a "configuration level": level 0 for objects on M,
// level 1 for lifted objects on TM. With m = 2^level n configuration
// coordinates q, the induced semispray lives one level higher, on (q, v).

#include <cstdint>
#include <vector>

#include "liftlab/fields.hpp"
#include "liftlab/semispray.hpp"

namespace liftlab {

/// Pivot threshold for the dense solves below.
inline constexpr double kSingularPivot = 1e-12;

struct MetricModel {
  int n = 1;
  int level = 0;  // 0: metric on M; 1: metric on TM (e.g. a complete lift)
  /// m x m entries, row-major, each a field at `level`.
  std::vector<ScalarField> entries;

  std::size_t m() const { return bundle_size(level, n); }
  const ScalarField& operator()(std::size_t a, std::size_t b) const { return entries[a * m() + b]; }

  /// Checks symmetry and |det| > 1e-12 at seeded sample points; throws
  /// InputError / SingularMetric.
  void validate(std::size_t samples = 32, std::uint64_t seed = 0x6d65) const;
};

struct RegularityCertificate {
  std::size_t samples = 0;
  double min_abs_pivot = 0.0;  // smallest pivot of the fibre Hessian over samples
  bool full_rank = false;
};

struct LagrangianModel {
  int n = 1;
  int level = 1;  // 1: L on TM; 2: L on TTM (e.g. a complete lift)
  ScalarField lagrangian;
  RegularityCertificate certificate;

  /// Runs certify_regularity on construction.
  LagrangianModel(int n, int level, ScalarField l);
};

/// Fibre Hessian rank check of 1/2 d^2L/dv dv at seeded samples.
RegularityCertificate certify_regularity(const ScalarField& l, std::size_t samples = 32,
                                         std::uint64_t seed = 0x4c61);

struct AffineConnectionModel {
  int n = 1;
  /// gamma^i_jk at index (i * n + j) * n + k, fields on M.
  std::vector<ScalarField> gamma;
  bool symmetric = true;

  const ScalarField& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return gamma[(i * n + j) * n + k];
  }
};

/// Geodesic spray: 2 G^a = Gamma^a_bc v^b v^c (dense solve with the metric).
Semispray metric_to_spray(const MetricModel& g);

/// g^c = [[(g_ij)^c, (g_ij)^v], [(g_ij)^v, 0]].
MetricModel metric_complete_lift(const MetricModel& g);

/// Christoffel symbols of the Levi-Civita connection as a connection model.
AffineConnectionModel levi_civita(const MetricModel& g);

/// Euler-Lagrange semispray: H(q, v) (-2G) = dL/dq - d^2L/dv dq . v, with H
/// the fibre Hessian of L. Throws DegenerateLagrangian if the certificate
/// failed, or on a failed pivot during evaluation.
Semispray lagrangian_to_semispray(const LagrangianModel& l);

/// L^c(x, y, X, Y) = dL/dx(x, X) y + dL/dy(x, X) Y, with a fresh certificate.
LagrangianModel lagrangian_complete_lift(const LagrangianModel& l);

/// L_g(q, v) = g_q(v, v).
LagrangianModel metric_lagrangian(const MetricModel& g);

/// Affine spray 2 G^i = gamma^i_jk y^j y^k.
Semispray connection_to_spray(const AffineConnectionModel& gamma);

/// (S_nabla)^c, realized as complete_lift(connection_to_spray(gamma)).
Semispray connection_complete_lift_spray(const AffineConnectionModel& gamma);

/// Solves A x = b in place by partial-pivot elimination on the values.
/// Returns false if a pivot falls below kSingularPivot.
bool solve_dense(std::vector<Hyper>& a, std::vector<Hyper>& b, std::size_t m,
                 double* min_pivot = nullptr);

}  // namespace liftlab

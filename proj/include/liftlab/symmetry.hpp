#pragma once

// Constants of motion and Lie symmetries of semisprays and of their complete
// lifts, plus the energy conservation suite along Jacobi fields.

#include <optional>
#include <span>
#include <utility>

#include "liftlab/dynamics.hpp"
#include "liftlab/models.hpp"

namespace liftlab {

struct ConservationReport {
  double residual_pointwise = 0.0;  // max |S(f)| over samples
  double drift_along_flow = 0.0;    // max |f(traj(t)) - f(traj(0))|
  double tol_pointwise = 1e-9;
  double tol_drift = 1e-6;
  Status flow_status = Status::Completed;
  bool pass = false;
};

struct SymmetryReport {
  double bracket_residual = 0.0;  // max |component| of the bracket over samples
  double tolerance = 1e-9;
  bool pass = false;
};

struct ConstantOptions {
  double tol = 1e-9;
  double drift_tol = 1e-6;
  /// Flow used for the drift when no trajectory is supplied; it starts at the
  /// first sample.
  IntegratorConfig flow = IntegratorConfig::over(0.0, 10.0);
};

/// Default sample set for symmetry checks: slashed points at the level.
std::vector<BundlePoint> symmetry_samples(int level, int n, std::size_t count = 64);

ConservationReport check_constant(const Semispray& s, const ScalarField& f,
                                  std::span<const BundlePoint> samples,
                                  const std::optional<Trajectory>& traj = std::nullopt,
                                  const ConstantOptions& opts = {});

/// [S, A^c] for a level-1 semispray and a base field A.
SymmetryReport check_lie_symmetry(const Semispray& s, const VectorField& a,
                                  std::span<const BundlePoint> samples, double tol = 1e-9);

/// check_constant(S^c, f^v) and check_constant(S^c, f^c). Samples are on TTM.
std::pair<ConservationReport, ConservationReport> lift_constant(
    const Semispray& s, const ScalarField& f, std::span<const BundlePoint> samples,
    const ConstantOptions& opts = {});

/// [S^c, (A^c)^v] and [S^c, (A^c)^c] at samples on TTM.
std::pair<SymmetryReport, SymmetryReport> lift_symmetry(const Semispray& s, const VectorField& a,
                                                        std::span<const BundlePoint> samples,
                                                        double tol = 1e-9);

/// E_L = C_r(L) - L for L on TM (r = 1) or TTM (r = 2).
ScalarField energy(const ScalarField& l);
inline ScalarField energy(const LagrangianModel& l) { return energy(l.lagrangian); }

struct JacobiConservationReport {
  double drift_ev = 0.0;   // (E_L)^v
  double drift_ec = 0.0;   // (E_L)^c
  double drift_elc = 0.0;  // E_{L^c}
  double identity_residual = 0.0;  // max |(E_L)^c - E_{L^c}| at samples and along the flow
  double drift_tol = 1e-6;
  double identity_tol = 1e-10;
  Status flow_status = Status::Completed;
  bool pass = false;
};

/// Integrates S_L^c from xi0 (a Jacobi field of S_L) and tracks the three
/// lifted energies; also compares (E_L)^c and E_{L^c} at `identity_samples`
/// seeded points.
JacobiConservationReport jacobi_conservation_suite(const LagrangianModel& l, const BundlePoint& xi0,
                                                   const IntegratorConfig& cfg,
                                                   double drift_tol = 1e-6,
                                                   double identity_tol = 1e-10,
                                                   std::size_t identity_samples = 100);

}  // namespace liftlab

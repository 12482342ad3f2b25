#pragma once

// Fixed-step RK4 integration of vector fields and semisprays, geodesics,
// Jacobi fields along geodesics (directly and through the complete lift),
// finite-difference geodesic variations and the flow/pushforward check for
// complete lifts.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "liftlab/bundle.hpp"
#include "liftlab/fields.hpp"
#include "liftlab/semispray.hpp"

namespace liftlab {

enum class Method { RK4, RK4HalfStep };

struct IntegratorConfig {
  Method method = Method::RK4;
  double h = 1e-3;
  double t0 = 0.0;
  double t1 = 1.0;
  double eps_reg = 1e-12;
  double blowup_bound = 1e8;
  /// Optional box for the base position block.
  std::optional<ChartSpec> chart;

  /// Throws InputError on h <= 0, t1 <= t0, eps_reg <= 0 or blowup_bound <= 0.
  static IntegratorConfig over(double t0, double t1, double h = 1e-3) {
    IntegratorConfig c;
    c.t0 = t0;
    c.t1 = t1;
    c.h = h;
    return c;
  }

  void validate() const;
  std::size_t steps() const;
};

enum class Status { Completed, RegularityLost, BlowUp, LeftChart };

std::string to_string(Status s);

struct Trajectory {
  int level = 0;
  int n = 1;
  std::vector<double> times;
  std::vector<BundlePoint> points;
  Status status = Status::Completed;
  double status_time = 0.0;  // time of termination (t1 when completed)
  /// Accumulated half-step error estimate (RK4HalfStep only).
  std::optional<double> error_estimate;

  bool completed() const { return status == Status::Completed; }
  const BundlePoint& back() const { return points.back(); }
};

/// Integral curve of a vector field. When `regular_block` is set, the
/// trajectory stops with RegularityLost once that block's norm drops to
/// eps_reg (checked before each sample is recorded).
Trajectory integrate(const VectorField& field, const BundlePoint& init, const IntegratorConfig& cfg,
                     std::optional<int> regular_block = std::nullopt);

/// Integral curve of a semispray; regularity is tracked on the y-block at
/// level 1 and the X-block at level 2.
Trajectory integrate(const Semispray& s, const BundlePoint& init, const IntegratorConfig& cfg);

/// Base projection of the integral curve of a level-1 semispray.
Trajectory geodesic(const Semispray& s, std::span<const double> x0, std::span<const double> v0,
                    const IntegratorConfig& cfg);

/// Jacobi field along the geodesic (x0, v0): integrates the geodesic and
/// variational equations together from per-coordinate partials of G.
/// Samples are level-1 points (x(t), J(t)).
Trajectory jacobi_direct(const Semispray& s, std::span<const double> x0,
                         std::span<const double> v0, std::span<const double> j0,
                         std::span<const double> jdot0, const IntegratorConfig& cfg);

/// Jacobi field as pi_1 of the S^c integral curve from xi0 = (x, J, v, Jdot).
Trajectory jacobi_via_lift(const Semispray& s, const BundlePoint& xi0, const IntegratorConfig& cfg);

enum class Stencil { Central2, Central4 };

struct VariationConfig {
  double s_offset = 1e-4;
  Stencil stencil = Stencil::Central2;
  void validate() const;
};

/// d/ds at s = 0 of pi_0 of the geodesics from w(s) = (x + s y, X + s Y),
/// with xi0 = (x, y, X, Y). Samples are level-1 points (x(t), dV/ds(t)).
/// Throws VariationBlowUp if any member of the family terminates early.
Trajectory variation_field(const Semispray& s, const BundlePoint& xi0, const VariationConfig& vcfg,
                           const IntegratorConfig& cfg);

struct FlowCheckReport {
  double t = 0.0;
  double residual = 0.0;  // max |lifted flow - kappa o D phi_t o kappa|
  Status lifted_status = Status::Completed;
  double lifted_status_time = 0.0;
  Status base_status = Status::Completed;
  double base_status_time = 0.0;
  bool domains_consistent = false;  // both flows survive to t, or both fail
  std::optional<BundlePoint> lifted_end;
  std::optional<BundlePoint> pushforward_end;
  double tolerance = 1e-6;
  bool pass = false;
};

inline constexpr double kPushforwardStep = 1e-6;

/// Compares the A^c flow of xi (level r+1) at time t with kappa(phi_t(b),
/// D phi_t(b) v) where kappa(xi) = (b, v) and D phi_t comes from central
/// differences. Throws FlowEscaped if a flow leaves the chart.
FlowCheckReport flow_pushforward_check(const VectorField& a, double t, const BundlePoint& xi,
                                       const IntegratorConfig& cfg, double tol = 1e-6);

/// Max absolute coordinate difference over the common samples.
double max_difference(const Trajectory& a, const Trajectory& b);

// Export. Floats use the shortest round-trip decimal form.
std::string format_double(double v);
void write_csv(const Trajectory& traj, std::ostream& out,
               const std::vector<std::string>& names = {});

}  // namespace liftlab

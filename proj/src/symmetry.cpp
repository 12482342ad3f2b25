#include "liftlab/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "liftlab/error.hpp"
#include "liftlab/sampling.hpp"

namespace liftlab {

namespace {

double max_abs_component(const VectorField& v, std::span<const BundlePoint> samples) {
  double r = 0.0;
  for (const auto& p : samples) {
    for (double c : v(p)) r = std::max(r, std::abs(c));
  }
  return r;
}

double drift(const ScalarField& f, const Trajectory& traj) {
  if (traj.points.empty()) return 0.0;
  const double f0 = f(traj.points.front());
  double d = 0.0;
  for (const auto& p : traj.points) d = std::max(d, std::abs(f(p) - f0));
  return d;
}

}  // namespace

std::vector<BundlePoint> symmetry_samples(int level, int n, std::size_t count) {
  return sample_points(level, n, count, 0x5e3d);
}

ConservationReport check_constant(const Semispray& s, const ScalarField& f,
                                  std::span<const BundlePoint> samples,
                                  const std::optional<Trajectory>& traj,
                                  const ConstantOptions& opts) {
  if (f.level() != s.level() || f.n() != s.n()) {
    throw LevelMismatch("check_constant: f and S live on different bundles");
  }
  if (samples.empty()) throw InputError("check_constant: no sample points");
  ConservationReport rep;
  rep.tol_pointwise = opts.tol;
  rep.tol_drift = opts.drift_tol;
  const ScalarField sf = apply(as_vector_field(s), f);
  for (const auto& p : samples) rep.residual_pointwise = std::max(rep.residual_pointwise, std::abs(sf(p)));
  const Trajectory flow = traj ? *traj : integrate(s, samples.front(), opts.flow);
  rep.flow_status = flow.status;
  rep.drift_along_flow = drift(f, flow);
  rep.pass = rep.residual_pointwise <= opts.tol && rep.drift_along_flow <= opts.drift_tol;
  return rep;
}

SymmetryReport check_lie_symmetry(const Semispray& s, const VectorField& a,
                                  std::span<const BundlePoint> samples, double tol) {
  if (s.level() != 1 || a.level() != 0) {
    throw LevelError("check_lie_symmetry: expects S on TM and A on M");
  }
  SymmetryReport rep;
  rep.tolerance = tol;
  rep.bracket_residual = max_abs_component(lie_bracket(as_vector_field(s), clift_vector(a)), samples);
  rep.pass = rep.bracket_residual <= tol;
  return rep;
}

std::pair<ConservationReport, ConservationReport> lift_constant(
    const Semispray& s, const ScalarField& f, std::span<const BundlePoint> samples,
    const ConstantOptions& opts) {
  const Semispray sc = complete_lift(s);
  std::optional<Trajectory> flow;
  if (!samples.empty()) flow = integrate(sc, samples.front(), opts.flow);
  return {check_constant(sc, vlift_scalar(f), samples, flow, opts),
          check_constant(sc, clift_scalar(f), samples, flow, opts)};
}

std::pair<SymmetryReport, SymmetryReport> lift_symmetry(const Semispray& s, const VectorField& a,
                                                        std::span<const BundlePoint> samples,
                                                        double tol) {
  if (s.level() != 1 || a.level() != 0) {
    throw LevelError("lift_symmetry: expects S on TM and A on M");
  }
  const VectorField sc = as_vector_field(complete_lift(s));
  const VectorField ac = clift_vector(a);
  SymmetryReport v, c;
  v.tolerance = c.tolerance = tol;
  v.bracket_residual = max_abs_component(lie_bracket(sc, vlift_vector(ac)), samples);
  c.bracket_residual = max_abs_component(lie_bracket(sc, clift_vector(ac)), samples);
  v.pass = v.bracket_residual <= tol;
  c.pass = c.bracket_residual <= tol;
  return {v, c};
}

ScalarField energy(const ScalarField& l) {
  if (l.level() != 1 && l.level() != 2) throw LevelError("energy: L must live on TM or TTM");
  return apply(liouville(l.level(), l.n()), l) - l;
}

JacobiConservationReport jacobi_conservation_suite(const LagrangianModel& l, const BundlePoint& xi0,
                                                   const IntegratorConfig& cfg, double drift_tol,
                                                   double identity_tol,
                                                   std::size_t identity_samples) {
  if (l.level != 1) throw LevelError("jacobi_conservation_suite: expects L on TM");
  if (xi0.level() != 2 || xi0.n() != l.n) {
    throw LevelMismatch("jacobi_conservation_suite: xi0 must be a point of TTM");
  }
  JacobiConservationReport rep;
  rep.drift_tol = drift_tol;
  rep.identity_tol = identity_tol;
  const ScalarField e = energy(l);
  const ScalarField ev = vlift_scalar(e), ec = clift_scalar(e);
  const ScalarField elc = energy(lagrangian_complete_lift(l));

  const Trajectory flow = integrate(complete_lift(lagrangian_to_semispray(l)), xi0, cfg);
  rep.flow_status = flow.status;
  rep.drift_ev = drift(ev, flow);
  rep.drift_ec = drift(ec, flow);
  rep.drift_elc = drift(elc, flow);

  auto gap = [&](const BundlePoint& p) { return std::abs(ec(p) - elc(p)); };
  for (const auto& p : sample_points(2, l.n, identity_samples, 0xe1c)) {
    rep.identity_residual = std::max(rep.identity_residual, gap(p));
  }
  for (const auto& p : flow.points) rep.identity_residual = std::max(rep.identity_residual, gap(p));
  rep.pass = flow.completed() && rep.drift_ev <= drift_tol && rep.drift_ec <= drift_tol &&
             rep.drift_elc <= drift_tol && rep.identity_residual <= identity_tol;
  return rep;
}

}  // namespace liftlab

#include "liftlab/dynamics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "liftlab/error.hpp"
#include "liftlab/expr.hpp"

namespace liftlab {

namespace {

using Rhs = std::function<std::vector<double>(std::span<const double>)>;
using State = std::vector<double>;

State axpy(const State& y, double a, const State& k) {
  State out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + a * k[i];
  return out;
}

State rk4_step(const Rhs& f, const State& y, double h) {
  const State k1 = f(y);
  const State k2 = f(axpy(y, h / 2, k1));
  const State k3 = f(axpy(y, h / 2, k2));
  const State k4 = f(axpy(y, h, k3));
  State out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    out[i] = y[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return out;
}

double block_norm(std::span<const double> y, int block, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += y[block * n + i] * y[block * n + i];
  return std::sqrt(s);
}

Trajectory run(const Rhs& f, int level, int n, State y, const IntegratorConfig& cfg,
               std::optional<int> regular_block) {
  cfg.validate();
  Trajectory traj;
  traj.level = level;
  traj.n = n;
  if (cfg.method == Method::RK4HalfStep) traj.error_estimate = 0.0;
  const std::size_t steps = cfg.steps();
  for (std::size_t i = 0;; ++i) {
    const double t = cfg.t0 + static_cast<double>(i) * cfg.h;
    std::optional<Status> stop;
    for (double c : y) {
      if (!std::isfinite(c) || std::abs(c) > cfg.blowup_bound) {
        stop = Status::BlowUp;
        break;
      }
    }
    if (!stop && cfg.chart && !cfg.chart->contains(std::span<const double>(y).subspan(0, n))) {
      stop = Status::LeftChart;
    }
    if (!stop && regular_block && block_norm(y, *regular_block, n) <= cfg.eps_reg) {
      stop = Status::RegularityLost;
    }
    if (stop) {
      traj.status = *stop;
      traj.status_time = t;
      return traj;
    }
    traj.times.push_back(t);
    traj.points.emplace_back(level, n, y);
    if (i == steps) break;
    if (cfg.method == Method::RK4) {
      y = rk4_step(f, y, cfg.h);
    } else {
      const State full = rk4_step(f, y, cfg.h);
      y = rk4_step(f, rk4_step(f, y, cfg.h / 2), cfg.h / 2);
      double local = 0.0;
      for (std::size_t k = 0; k < y.size(); ++k) local = std::max(local, std::abs(y[k] - full[k]));
      *traj.error_estimate += local / 15.0;
    }
  }
  traj.status = Status::Completed;
  traj.status_time = traj.times.back();
  return traj;
}

Rhs semispray_rhs(const Semispray& s) {
  return [s](std::span<const double> xi) {
    const std::size_t m = s.m();
    const auto g = s.coefficients(xi);
    State out(2 * m);
    for (std::size_t a = 0; a < m; ++a) {
      out[a] = xi[m + a];
      out[m + a] = -2.0 * g[a];
    }
    return out;
  };
}

Trajectory slice(const Trajectory& full, int level, std::size_t offset) {
  Trajectory out;
  out.level = level;
  out.n = full.n;
  out.times = full.times;
  out.status = full.status;
  out.status_time = full.status_time;
  out.error_estimate = full.error_estimate;
  const std::size_t len = bundle_size(level, full.n);
  for (const auto& p : full.points) {
    const auto c = p.coords().subspan(offset, len);
    out.points.emplace_back(level, full.n, std::vector<double>(c.begin(), c.end()));
  }
  return out;
}

void require_len(std::span<const double> v, int n, const char* what) {
  if (v.size() != static_cast<std::size_t>(n)) {
    throw InputError(std::string(what) + ": expected " + std::to_string(n) + " components");
  }
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(h > 0.0)) throw InputError("integrator: step h must be positive");
  if (!(t1 > t0)) throw InputError("integrator: t_span must satisfy t1 > t0");
  if (!(eps_reg > 0.0)) throw InputError("integrator: eps_reg must be positive");
  if (!(blowup_bound > 0.0)) throw InputError("integrator: blowup_bound must be positive");
  if (chart) chart->validate();
}

std::size_t IntegratorConfig::steps() const {
  return static_cast<std::size_t>(std::floor((t1 - t0) / h + 1e-9));
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Completed: return "completed";
    case Status::RegularityLost: return "regularity_lost";
    case Status::BlowUp: return "blow_up";
    case Status::LeftChart: return "left_chart";
  }
  return "unknown";
}

Trajectory integrate(const VectorField& field, const BundlePoint& init, const IntegratorConfig& cfg,
                     std::optional<int> regular_block) {
  if (init.level() != field.level() || init.n() != field.n()) {
    throw LevelMismatch("integrate: initial point and field live on different bundles");
  }
  if (!field.smooth_at_zero() && !in_slashed(init, cfg.eps_reg)) {
    throw InputError("integrate: initial point is outside the slashed bundle");
  }
  Rhs f = [field](std::span<const double> y) { return field(y); };
  State y(init.coords().begin(), init.coords().end());
  return run(f, init.level(), init.n(), std::move(y), cfg, regular_block);
}

Trajectory integrate(const Semispray& s, const BundlePoint& init, const IntegratorConfig& cfg) {
  if (init.level() != s.level() || init.n() != s.n()) {
    throw LevelMismatch("integrate: initial point and semispray live on different bundles");
  }
  if (!s.smooth_at_zero() && !in_slashed(init, cfg.eps_reg)) {
    throw InputError("integrate: initial point is outside the slashed bundle");
  }
  State y(init.coords().begin(), init.coords().end());
  return run(semispray_rhs(s), s.level(), s.n(), std::move(y), cfg, s.level() == 1 ? 1 : 2);
}

Trajectory geodesic(const Semispray& s, std::span<const double> x0, std::span<const double> v0,
                    const IntegratorConfig& cfg) {
  if (s.level() != 1) throw LevelError("geodesic: expects a semispray on TM");
  require_len(x0, s.n(), "geodesic x0");
  require_len(v0, s.n(), "geodesic v0");
  std::vector<double> c(x0.begin(), x0.end());
  c.insert(c.end(), v0.begin(), v0.end());
  if (block_norm(c, 1, s.n()) <= cfg.eps_reg) throw InputError("geodesic: |v0| <= eps_reg");
  return slice(integrate(s, BundlePoint(1, s.n(), c), cfg), 0, 0);
}

Trajectory jacobi_direct(const Semispray& s, std::span<const double> x0,
                         std::span<const double> v0, std::span<const double> j0,
                         std::span<const double> jdot0, const IntegratorConfig& cfg) {
  if (s.level() != 1) throw LevelError("jacobi_direct: expects a semispray on TM");
  const int n = s.n();
  require_len(x0, n, "jacobi x0");
  require_len(v0, n, "jacobi v0");
  require_len(j0, n, "jacobi J0");
  require_len(jdot0, n, "jacobi Jdot0");
  const std::size_t un = static_cast<std::size_t>(n);
  // State (x, J, v, Jdot), the layout of a level-2 point.
  State y;
  for (auto part : {x0, j0, v0, jdot0}) y.insert(y.end(), part.begin(), part.end());
  if (block_norm(y, 2, n) <= cfg.eps_reg) throw InputError("jacobi_direct: |v0| <= eps_reg");
  const auto coeffs = s.coefficient_fn();
  Rhs f = [coeffs, un](std::span<const double> st) {
    const auto x = st.subspan(0, un), j = st.subspan(un, un);
    const auto v = st.subspan(2 * un, un), jd = st.subspan(3 * un, un);
    std::vector<Hyper> q;
    for (double c : x) q.emplace_back(c);
    for (double c : v) q.emplace_back(c);
    State out(4 * un, 0.0);
    for (std::size_t i = 0; i < un; ++i) {
      out[i] = v[i];
      out[un + i] = jd[i];
    }
    // dq = (J, Jdot) contracted against dG/dx and dG/dv.
    for (std::size_t c = 0; c < 2 * un; ++c) {
      const double dq = c < un ? j[c] : jd[c - un];
      std::vector<Hyper> e(2 * un, Hyper(0.0));
      e[c] = Hyper(1.0);
      const auto g = coeffs(perturb(q, e));
      for (std::size_t i = 0; i < un; ++i) {
        if (c == 0) out[2 * un + i] = -2.0 * g[i].value();
        out[3 * un + i] -= 2.0 * g[i].coeff(1) * dq;
      }
    }
    return out;
  };
  return slice(run(f, 2, n, std::move(y), cfg, 2), 1, 0);
}

Trajectory jacobi_via_lift(const Semispray& s, const BundlePoint& xi0, const IntegratorConfig& cfg) {
  if (s.level() != 1) throw LevelError("jacobi_via_lift: expects a semispray on TM");
  if (xi0.level() != 2) throw LevelError("jacobi_via_lift: initial data must be a level-2 point");
  if (!in_slashed(xi0, cfg.eps_reg)) throw InputError("jacobi_via_lift: X-block is zero");
  return slice(integrate(complete_lift(s), xi0, cfg), 1, 0);
}

void VariationConfig::validate() const {
  if (!(s_offset > 0.0)) throw InputError("variation: s_offset must be positive");
}

Trajectory variation_field(const Semispray& s, const BundlePoint& xi0, const VariationConfig& vcfg,
                           const IntegratorConfig& cfg) {
  vcfg.validate();
  if (s.level() != 1) throw LevelError("variation_field: expects a semispray on TM");
  if (xi0.level() != 2 || xi0.n() != s.n()) throw LevelMismatch("variation_field: xi0 must be on TTM");
  const int n = s.n();
  const auto x = xi0.block(0), y = xi0.block(1), bx = xi0.block(2), by = xi0.block(3);
  auto member = [&](double off) {
    std::vector<double> w;
    for (int i = 0; i < n; ++i) w.push_back(x[i] + off * y[i]);
    for (int i = 0; i < n; ++i) w.push_back(bx[i] + off * by[i]);
    Trajectory t = integrate(s, BundlePoint(1, n, w), cfg);
    if (!t.completed()) {
      throw VariationBlowUp("variation_field: member s = " + format_double(off) + " ended with " +
                            to_string(t.status) + " at t = " + format_double(t.status_time));
    }
    return t;
  };
  const double h = vcfg.s_offset;
  std::vector<std::pair<double, Trajectory>> family;
  if (vcfg.stencil == Stencil::Central2) {
    for (double w : {-1.0, 1.0}) family.emplace_back(w / (2 * h), member(w * h));
  } else {
    const double d = 12 * h;
    family.emplace_back(1.0 / d, member(-2 * h));
    family.emplace_back(-8.0 / d, member(-h));
    family.emplace_back(8.0 / d, member(h));
    family.emplace_back(-1.0 / d, member(2 * h));
  }
  const Trajectory center = member(0.0);
  Trajectory out;
  out.level = 1;
  out.n = n;
  out.times = center.times;
  out.status = Status::Completed;
  out.status_time = center.status_time;
  for (std::size_t k = 0; k < center.points.size(); ++k) {
    std::vector<double> c(2 * n, 0.0);
    for (int i = 0; i < n; ++i) c[i] = center.points[k][i];
    for (const auto& [w, traj] : family) {
      for (int i = 0; i < n; ++i) c[n + i] += w * traj.points[k][i];
    }
    out.points.emplace_back(1, n, std::move(c));
  }
  return out;
}

FlowCheckReport flow_pushforward_check(const VectorField& a, double t, const BundlePoint& xi,
                                       const IntegratorConfig& cfg, double tol) {
  if (xi.level() != a.level() + 1 || xi.n() != a.n()) {
    throw LevelMismatch("flow_pushforward_check: xi must live one level above A");
  }
  IntegratorConfig run_cfg = cfg;
  run_cfg.t1 = cfg.t0 + t;
  FlowCheckReport rep;
  rep.t = t;
  rep.tolerance = tol;

  const Trajectory lifted = integrate(clift_vector(a), xi, run_cfg);
  rep.lifted_status = lifted.status;
  rep.lifted_status_time = lifted.status_time;

  const BundlePoint k = kappa(xi);
  const std::size_t len = k.size() / 2;
  const std::vector<double> b(k.coords().begin(), k.coords().begin() + len);
  const std::vector<double> v(k.coords().begin() + len, k.coords().end());
  auto base_flow = [&](const std::vector<double>& start) {
    Trajectory tr = integrate(a, BundlePoint(a.level(), a.n(), start), run_cfg);
    if (!tr.completed() && (rep.base_status == Status::Completed ||
                            tr.status_time < rep.base_status_time)) {
      rep.base_status = tr.status;
      rep.base_status_time = tr.status_time;
    }
    return tr;
  };
  const Trajectory centre = base_flow(b);
  std::vector<double> push(len, 0.0);
  bool base_ok = centre.completed();
  for (std::size_t j = 0; j < len && base_ok; ++j) {
    if (v[j] == 0.0) continue;
    auto plus = b, minus = b;
    plus[j] += kPushforwardStep;
    minus[j] -= kPushforwardStep;
    const Trajectory tp = base_flow(plus), tm = base_flow(minus);
    if (!tp.completed() || !tm.completed()) {
      base_ok = false;
      break;
    }
    for (std::size_t i = 0; i < len; ++i) {
      push[i] += (tp.back()[i] - tm.back()[i]) / (2 * kPushforwardStep) * v[j];
    }
  }
  if (base_ok) rep.base_status_time = centre.status_time;

  if (rep.lifted_status == Status::LeftChart || rep.base_status == Status::LeftChart) {
    throw FlowEscaped("flow_pushforward_check: a flow left the chart before t = " +
                      format_double(t));
  }
  rep.domains_consistent = lifted.completed() == base_ok;
  if (lifted.completed() && base_ok) {
    std::vector<double> c(centre.back().coords().begin(), centre.back().coords().end());
    c.insert(c.end(), push.begin(), push.end());
    rep.pushforward_end = kappa(BundlePoint(xi.level(), xi.n(), c));
    rep.lifted_end = lifted.back();
    for (std::size_t i = 0; i < c.size(); ++i) {
      rep.residual = std::max(rep.residual, std::abs((*rep.lifted_end)[i] - (*rep.pushforward_end)[i]));
    }
  }
  rep.pass = rep.domains_consistent && rep.residual <= tol;
  return rep;
}

double max_difference(const Trajectory& a, const Trajectory& b) {
  double d = 0.0;
  const std::size_t k = std::min(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < k; ++i) {
    const auto& p = a.points[i];
    const auto& q = b.points[i];
    if (p.size() != q.size()) throw LevelMismatch("max_difference: point sizes differ");
    for (std::size_t j = 0; j < p.size(); ++j) d = std::max(d, std::abs(p[j] - q[j]));
  }
  return d;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(const Trajectory& traj, std::ostream& out, const std::vector<std::string>& names) {
  const auto cols = names.empty() ? coordinate_names(traj.level, traj.n) : names;
  out << "t";
  for (const auto& c : cols) out << ',' << c;
  out << '\n';
  for (std::size_t i = 0; i < traj.points.size(); ++i) {
    out << format_double(traj.times[i]);
    for (double c : traj.points[i].coords()) out << ',' << format_double(c);
    out << '\n';
  }
}

}  // namespace liftlab

#include "liftlab/suite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "liftlab/catalog.hpp"
#include "liftlab/dynamics.hpp"
#include "liftlab/error.hpp"
#include "liftlab/expr.hpp"
#include "liftlab/identities.hpp"
#include "liftlab/sampling.hpp"
#include "liftlab/symmetry.hpp"

namespace liftlab {

namespace {

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

CriterionResult bundle_maps() {
  std::size_t checked = 0, failed = 0;
  for (int n = 1; n <= 3; ++n) {
    for (const auto& r : bundle_identities(n, 1000, 0xb0 + n)) {
      ++checked;
      if (!r.pass) ++failed;
    }
  }
  const bool k2 = kappa(BundlePoint(2, 1, {1, 2, 3, 4})) == BundlePoint(2, 1, {1, 3, 2, 4});
  const bool k3 = kappa(BundlePoint(3, 1, {1, 2, 3, 4, 5, 6, 7, 8})) ==
                  BundlePoint(3, 1, {1, 2, 5, 6, 3, 4, 7, 8});
  return {1, "", failed == 0 && k2 && k3,
          std::to_string(checked) + " identity groups, " + std::to_string(failed) + " failing"};
}

struct FieldFamily {
  std::vector<std::string> f, g, a, b;
};

FieldFamily family(int n) {
  FieldFamily ff;
  auto x = [](int i) { return "x" + std::to_string(i % 3 + 1); };
  auto y = [](int i) { return "y" + std::to_string(i % 3 + 1); };
  const int m = n;
  auto X = [&](int i) { return x(i % m); };
  auto Y = [&](int i) { return y(i % m); };
  ff.f = {"sin(" + X(0) + ")*" + Y(1) + " + " + X(1) + "^2*" + Y(0)};
  ff.g = {"exp(0.3*" + X(1) + ")*" + Y(0) + "^2 - cos(" + Y(1) + ")"};
  for (int i = 0; i < 2 * n; ++i) {
    ff.a.push_back(X(i) + "*" + Y(i + 1) + " + sin(" + X(i + 2) + ")");
    ff.b.push_back("cos(" + Y(i) + ") + " + X(i + 1) + "^2*" + Y(i + 2));
  }
  return ff;
}

CriterionResult lift_algebra() {
  double worst = 0.0;
  bool ok = true;
  for (int n = 1; n <= 3; ++n) {
    const FieldFamily ff = family(n);
    std::vector<ScalarField> ac, bc;
    for (const auto& s : ff.a) ac.push_back(expr_field(1, n, s));
    for (const auto& s : ff.b) bc.push_back(expr_field(1, n, s));
    const auto res = lift_algebra_identities(
        expr_field(1, n, ff.f[0]), expr_field(1, n, ff.g[0]), VectorField::from_components(ac),
        VectorField::from_components(bc), sample_points(2, n, 100, 0xa1 + n));
    for (const auto& r : res) {
      worst = std::max(worst, r.residual);
      ok = ok && r.pass;
    }
  }
  return {2, "", ok, "max relative residual " + sci(worst)};
}

BundlePoint jacobi_start(const CatalogModel& m, const BundlePoint& p) {
  std::vector<double> c(p.coords().begin(), p.coords().end());
  // log-affine geodesics with negative speed blow up at t = -1/v
  if (m.name == "log-affine") {
    for (int i = 0; i < m.n; ++i) c[2 * m.n + i] = std::abs(c[2 * m.n + i]);
  }
  return BundlePoint(2, m.n, c);
}

CriterionResult route_equivalence() {
  IntegratorConfig cfg = IntegratorConfig::over(0.0, 5.0);
  double worst = 0.0;
  bool ok = true;
  for (const auto& name : catalog_names()) {
    const CatalogModel m = catalog_model(name);
    const int n = m.n;
    for (const auto& p0 : sample_points(2, n, 20, 0x3a, 1.0, 0.3)) {
      const BundlePoint p = jacobi_start(m, p0);
      const auto c = p.coords();
      const auto d = jacobi_direct(m.spray, c.subspan(0, n), c.subspan(2 * n, n),
                                   c.subspan(n, n), c.subspan(3 * n, n), cfg);
      const auto l = jacobi_via_lift(m.spray, p, cfg);
      ok = ok && d.completed() && l.completed();
      worst = std::max(worst, max_difference(d, l));
    }
  }
  return {3, "", ok && worst < 1e-7, "sup difference " + sci(worst)};
}

CriterionResult variation_convergence() {
  IntegratorConfig cfg = IntegratorConfig::over(0.0, 3.0);
  double worst = 0.0;
  std::string detail;
  for (const char* name : {"oscillator", "euclidean", "diag-metric"}) {
    const CatalogModel m = catalog_model(name);
    const int n = m.n;
    const BundlePoint xi = sample_points(2, n, 1, 0x4b, 1.0, 0.3).front();
    const auto c = xi.coords();
    const auto ref = jacobi_direct(m.spray, c.subspan(0, n), c.subspan(2 * n, n), c.subspan(n, n),
                                   c.subspan(3 * n, n), cfg);
    worst = std::max(worst, max_difference(variation_field(m.spray, xi, {1e-4}, cfg), ref));
  }
  // ratio in the truncation-dominated range of s
  const CatalogModel dm = catalog_model("diag-metric");
  const BundlePoint xi = sample_points(2, 2, 1, 0x4b, 1.0, 0.3).front();
  const auto c = xi.coords();
  const auto ref = jacobi_direct(dm.spray, c.subspan(0, 2), c.subspan(4, 2), c.subspan(2, 2),
                                 c.subspan(6, 2), cfg);
  const double e1 = max_difference(variation_field(dm.spray, xi, {1e-3}, cfg), ref);
  const double e2 = max_difference(variation_field(dm.spray, xi, {5e-4}, cfg), ref);
  const double ratio = e1 / e2;
  return {4, "", worst < 1e-6 && ratio >= 3.5 && ratio <= 4.5,
          "sup error " + sci(worst) + " at s=1e-4, ratio " + std::to_string(ratio)};
}

CriterionResult flow_identity() {
  IntegratorConfig cfg = IntegratorConfig::over(0.0, 1.0);
  cfg.blowup_bound = 1e6;
  const VectorField translation(0, 1, [](std::span<const Hyper>) { return std::vector<Hyper>{Hyper(1.0)}; });
  const VectorField linear(0, 1, [](std::span<const Hyper> q) { return std::vector<Hyper>{q[0]}; });
  const VectorField rotation(0, 2, [](std::span<const Hyper> q) {
    return std::vector<Hyper>{q[1], -q[0]};
  });
  double worst = 0.0;
  bool ok = true;
  for (double t : {0.1, 1.0}) {
    for (const auto* a : {&translation, &linear, &rotation}) {
      const auto xi = sample_points(1, a->n(), 1, 0x5c).front();
      const auto r = flow_pushforward_check(*a, t, xi, cfg);
      ok = ok && r.pass;
      worst = std::max(worst, r.residual);
    }
  }
  const VectorField quad(0, 1, [](std::span<const Hyper> q) { return std::vector<Hyper>{q[0] * q[0]}; });
  const double x0 = 1.0;
  const auto r = flow_pushforward_check(quad, 2.0, BundlePoint(1, 1, {x0, 0.5}), cfg);
  const double window = 10 * cfg.h;
  const bool blow = r.lifted_status == Status::BlowUp && r.base_status == Status::BlowUp &&
                    std::abs(r.lifted_status_time - 1 / x0) <= window &&
                    std::abs(r.base_status_time - 1 / x0) <= window;
  return {5, "", ok && blow,
          "max residual " + sci(worst) + ", blow-up at " + std::to_string(r.lifted_status_time) +
              " / " + std::to_string(r.base_status_time)};
}

double coefficient_gap(const Semispray& a, const Semispray& b, std::span<const BundlePoint> pts) {
  double g = 0.0;
  for (const auto& p : pts) {
    const auto ca = a.coefficients(p), cb = b.coefficients(p);
    for (std::size_t i = 0; i < ca.size(); ++i) g = std::max(g, relative_gap(ca[i], cb[i]));
  }
  return g;
}

CriterionResult model_identities() {
  const auto pts = sample_points(2, 2, 100, 0x6d, 1.0, 0.2);
  const CatalogModel dm = catalog_model("diag-metric");
  const double gm = coefficient_gap(complete_lift(metric_to_spray(*dm.metric)),
                                    metric_to_spray(metric_complete_lift(*dm.metric)), pts);
  const CatalogModel osc = catalog_model("oscillator");
  const auto pts1 = sample_points(2, 1, 100, 0x6e, 1.0, 0.2);
  const double gl = coefficient_gap(complete_lift(lagrangian_to_semispray(*osc.lagrangian)),
                                    lagrangian_to_semispray(lagrangian_complete_lift(*osc.lagrangian)),
                                    pts1);
  const bool spray = is_spray(connection_complete_lift_spray(*dm.connection)).pass;
  return {6, "", gm < 1e-9 && gl < 1e-9 && spray,
          "metric gap " + sci(gm) + ", Lagrangian gap " + sci(gl) +
              ", connection lift spray " + (spray ? "yes" : "no")};
}

CriterionResult homogeneity() {
  const CatalogModel f = catalog_model("funk-like");
  const Semispray sc = complete_lift(f.spray);
  const auto base = is_spray(f.spray), lifted = is_spray(sc);
  const auto pts = sample_points(2, 2, 64, 0x7f);
  double worst = 0.0;
  bool ok = true;
  for (std::size_t a = 0; a < sc.m(); ++a) {
    const auto r = check_homogeneous(sc.coefficient(a), 2.0, pts);
    ok = ok && r.pass;
    worst = std::max({worst, r.euler_residual, r.scaling_residual});
  }
  return {7, "", base.pass && lifted.pass && ok,
          "lifted coefficient residual " + sci(worst)};
}

CriterionResult projective() {
  const Semispray e = catalog_model("euclidean").spray;
  const Semispray f = catalog_model("funk-like").spray;
  const auto pf = projective_factor(e, f);
  const double p = pf ? pf->p(BundlePoint(1, 2, {0, 0, 3, 4})) : std::nan("");
  const bool lifted_none = !projective_factor(complete_lift(e), complete_lift(f)).has_value();
  const auto same = projective_rigidity_check(f, f);
  const bool same_ok = same.lifted_related && same.lifted_factor_max_abs < 1e-10;
  return {8, "", pf && std::abs(p - 5) < 1e-9 && lifted_none && same_ok,
          "P((0,0),(3,4)) = " + format_double(p) + ", lifted factor " +
              (lifted_none ? "none" : "found") + ", self factor " + sci(same.lifted_factor_max_abs)};
}

CriterionResult conservation() {
  const CatalogModel osc = catalog_model("oscillator");
  const Semispray s = osc.spray;
  const ScalarField e = energy(*osc.lagrangian);
  const auto pts = sample_points(1, 1, 100, 0x9a);
  ConstantOptions opts;
  opts.flow.t1 = 10.0;
  const auto c = check_constant(s, e, pts, std::nullopt, opts);
  const auto rep = jacobi_conservation_suite(*osc.lagrangian, BundlePoint(2, 1, {0.3, -0.2, 1.0, 0.4}),
                                             IntegratorConfig::over(0.0, 10.0));
  const CatalogModel eu = catalog_model("euclidean");
  const auto neg = check_constant(eu.spray, expr_field(1, 2, "x1"), sample_points(1, 2, 32, 0x9b));
  const auto neg_l = lift_constant(eu.spray, expr_field(1, 2, "x1"), sample_points(2, 2, 32, 0x9c));
  const bool controls = !neg.pass && !neg_l.first.pass && !neg_l.second.pass;
  return {9, "", c.residual_pointwise < 1e-9 && rep.pass && controls,
          "S(E) " + sci(c.residual_pointwise) + ", drifts " + sci(rep.drift_ev) + "/" +
              sci(rep.drift_ec) + "/" + sci(rep.drift_elc) + ", identity " +
              sci(rep.identity_residual) + ", negative controls " + (controls ? "fail" : "PASS")};
}

CriterionResult closed_forms() {
  IntegratorConfig cfg = IntegratorConfig::over(0.0, 1.0);
  const auto osc = integrate(catalog_model("oscillator").spray, BundlePoint(1, 1, {0, 1}), cfg);
  const double eo = std::max(std::abs(osc.back()[0] - std::sin(1.0)), std::abs(osc.back()[1] - std::cos(1.0)));
  const auto la = integrate(catalog_model("log-affine").spray, BundlePoint(1, 1, {0, 1}), cfg);
  const double el = std::abs(la.back()[0] - std::log(2.0));
  const auto eu = integrate(catalog_model("euclidean").spray, BundlePoint(1, 2, {0, 0, 1, 0}), cfg);
  const double ee = std::max(std::abs(eu.back()[0] - 1.0), std::abs(eu.back()[1]));
  return {10, "", eo < 1e-9 && el < 1e-8 && ee < 1e-12,
          "oscillator " + sci(eo) + ", log " + sci(el) + ", euclidean " + sci(ee)};
}

struct ParseCase {
  const char* source;
  bool accept;
  double value;        // at x1 = 0.5, y1 = 2 when accepted
  std::size_t offset;  // error offset when rejected
};

CriterionResult parser() {
  static const ParseCase cases[] = {
      {"1", true, 1, 0},          {"x1", true, 0.5, 0},       {"x1 + y1", true, 2.5, 0},
      {"x1*y1", true, 1, 0},      {"y1/x1", true, 4, 0},      {"-x1", true, -0.5, 0},
      {"+y1", true, 2, 0},        {"y1^2", true, 4, 0},       {"2^3^2", true, 512, 0},
      {"-y1^2", true, -4, 0},     {"(x1+y1)*2", true, 5, 0},  {"sin(0)", true, 0, 0},
      {"cos(0)", true, 1, 0},     {"exp(0)", true, 1, 0},     {"log(y1)", true, std::log(2.0), 0},
      {"sqrt(y1*8)", true, 4, 0}, {"abs_smooth(-y1)", true, 2, 0}, {"1.5e1", true, 15, 0},
      {".5", true, 0.5, 0},       {"y1^0.5", true, std::sqrt(2.0), 0},
      {"", false, 0, 0},          {"x1 +", false, 0, 4},      {"(x1", false, 0, 3},
      {"x1)", false, 0, 2},       {"x1 y1", false, 0, 3},     {"z1 + 1", false, 0, 0},
      {"x1 + foo(2)", false, 0, 5}, {"2 * * 3", false, 0, 4}, {"sin x1", false, 0, 4},
      {"1e+", false, 0, 3},       {"x1 # 2", false, 0, 3},    {"()", false, 0, 1},
  };
  const std::vector<std::string> vars = {"x1", "y1"};
  const double pt[] = {0.5, 2.0};
  std::size_t good = 0;
  for (const auto& c : cases) {
    try {
      const Expr e = parse(c.source, vars);
      if (c.accept && std::abs(e.eval(pt) - c.value) <= 1e-12 * std::max(1.0, std::abs(c.value))) ++good;
    } catch (const ParseError& e) {
      if (!c.accept && e.offset() == c.offset) ++good;
    } catch (const UnknownVariable& e) {
      if (!c.accept && e.offset() == c.offset) ++good;
    } catch (const UnknownFunction& e) {
      if (!c.accept && e.offset() == c.offset) ++good;
    }
  }
  // jets of every built-in against central differences
  static const char* jets[] = {"sin(x1*y1)", "cos(x1-y1)", "exp(x1*y1)", "log(x1+y1^2)",
                               "sqrt(x1^2+y1)", "abs_smooth(x1-y1)", "y1^2.5*x1", "x1^y1"};
  double gerr = 0.0, herr = 0.0;
  const std::size_t active[] = {0, 1};
  for (const char* src : jets) {
    const Expr e = parse(src, vars);
    const Jet2 j = e.eval_jet(pt, active);
    for (std::size_t i = 0; i < 2; ++i) {
      const double step = 1e-6;
      double p[2] = {pt[0], pt[1]}, m[2] = {pt[0], pt[1]};
      p[i] += step;
      m[i] -= step;
      gerr = std::max(gerr, relative_gap(j.grad(i), (e.eval(p) - e.eval(m)) / (2 * step)));
      for (std::size_t k = 0; k < 2; ++k) {
        const double hs = 1e-4;
        double pp[2] = {pt[0], pt[1]}, pm[2] = {pt[0], pt[1]}, mp[2] = {pt[0], pt[1]},
               mm[2] = {pt[0], pt[1]};
        pp[i] += hs; pp[k] += hs;
        pm[i] += hs; pm[k] -= hs;
        mp[i] -= hs; mp[k] += hs;
        mm[i] -= hs; mm[k] -= hs;
        const double fd = (e.eval(pp) - e.eval(pm) - e.eval(mp) + e.eval(mm)) / (4 * hs * hs);
        herr = std::max(herr, relative_gap(j.hess(i, k), fd));
      }
    }
  }
  const std::size_t total = std::size(cases);
  return {11, "", good == total && gerr < 1e-6 && herr < 1e-4,
          std::to_string(good) + "/" + std::to_string(total) + " corpus cases, jet gaps " +
              sci(gerr) + " / " + sci(herr)};
}

}  // namespace

const std::vector<Criterion>& suite_criteria() {
  static const std::vector<Criterion> all = {
      {1, "bundle map identities", bundle_maps},
      {2, "lift algebra", lift_algebra},
      {3, "Jacobi route equivalence", route_equivalence},
      {4, "geodesic variation convergence", variation_convergence},
      {5, "complete lift flow identity", flow_identity},
      {6, "model lift consistency", model_identities},
      {7, "spray homogeneity", homogeneity},
      {8, "projective rigidity", projective},
      {9, "conservation along Jacobi fields", conservation},
      {10, "closed-form trajectories", closed_forms},
      {11, "expression parser and jets", parser},
  };
  return all;
}

std::vector<CriterionResult> run_suite(const std::vector<int>& ids) {
  std::vector<CriterionResult> out;
  for (const auto& c : suite_criteria()) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end()) continue;
    CriterionResult r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {c.id, "", false, std::string("exception: ") + e.what()};
    }
    r.id = c.id;
    r.title = c.title;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace liftlab

// Acceptance battery: one PASS/FAIL line per criterion. Every expected value
// is computed here from closed forms or finite differences.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "liftlab/bundle.hpp"
#include "liftlab/catalog.hpp"
#include "liftlab/dynamics.hpp"
#include "liftlab/error.hpp"
#include "liftlab/expr.hpp"
#include "liftlab/fields.hpp"
#include "liftlab/identities.hpp"
#include "liftlab/models.hpp"
#include "liftlab/semispray.hpp"
#include "liftlab/symmetry.hpp"

using namespace liftlab;

namespace {

using Vec = std::vector<double>;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "failed: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

double rel(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g_); }
  Vec vec(std::size_t k, double scale = 1.5) {
    Vec v(k);
    for (auto& x : v) x = uniform(-scale, scale);
    return v;
  }

 private:
  std::mt19937_64 g_;
};

double norm(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Points of T^r M whose slashed block has norm >= 0.2.
std::vector<BundlePoint> points(int level, int n, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<BundlePoint> out;
  const int block = level == 1 ? 1 : 2;
  while (out.size() < count) {
    Vec c = rng.vec(bundle_size(level, n));
    if (level >= 1 && norm(std::span<const double>(c).subspan(block * n, n)) < 0.2) continue;
    out.emplace_back(level, n, std::move(c));
  }
  return out;
}

Vec concat(std::initializer_list<Vec> parts) {
  Vec out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// kappa by block moves: level 2 swaps blocks 1 and 2, level 3 swaps the
// pairs (2,3) and (4,5).
Vec kappa_oracle(const Vec& p, int level, int n) {
  static const int k2[] = {0, 2, 1, 3};
  static const int k3[] = {0, 1, 4, 5, 2, 3, 6, 7};
  if (level <= 1) return p;
  const int* map = level == 2 ? k2 : k3;
  Vec out;
  for (int b = 0; b < (1 << level); ++b) {
    out.insert(out.end(), p.begin() + map[b] * n, p.begin() + (map[b] + 1) * n);
  }
  return out;
}

Vec coords(const BundlePoint& p) { return Vec(p.coords().begin(), p.coords().end()); }

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  std::size_t checked = 0;
  for (int n = 1; n <= 3; ++n) {
    Rng rng(100 + n);
    for (int level = 1; level <= 3; ++level) {
      for (int i = 0; i < 1000; ++i) {
        const Vec c = rng.vec(bundle_size(level, n));
        const BundlePoint p(level, n, c);
        const Vec k = kappa_oracle(c, level, n);
        bool ok = coords(kappa(p)) == k && kappa(kappa(p)) == p;
        if (level >= 2) {
          // D pi = pi o kappa, and pi o kappa o kappa = pi
          ok = ok && coords(dprojection(p)) == Vec(k.begin(), k.begin() + k.size() / 2);
          ok = ok && project(kappa(kappa(p))) == project(p);
        }
        if (level == 3) {
          // D kappa_2 acts blockwise on both halves; kappa_3 D kappa_2 kappa_3 = D kappa_2 kappa_3 D kappa_2
          const std::size_t h = c.size() / 2;
          const Vec lo = kappa_oracle(Vec(c.begin(), c.begin() + h), 2, n);
          const Vec hi = kappa_oracle(Vec(c.begin() + h, c.end()), 2, n);
          ok = ok && coords(dkappa(p)) == concat({lo, hi});
          ok = ok && kappa(dkappa(kappa(p))) == dkappa(kappa(dkappa(p)));
          // DD pi_0 keeps x, X, u, U
          ok = ok && coords(ddprojection(p)) ==
                         concat({Vec(c.begin(), c.begin() + n), Vec(c.begin() + 2 * n, c.begin() + 3 * n),
                                 Vec(c.begin() + 4 * n, c.begin() + 5 * n),
                                 Vec(c.begin() + 6 * n, c.begin() + 7 * n)});
        }
        o.require(ok, "identity at level " + std::to_string(level) + ", n = " + std::to_string(n));
        if (!ok) return o;
        ++checked;
      }
    }
    for (const auto& r : bundle_identities(n, 1000, 7 + n)) o.require(r.pass, r.name);
  }
  o.detail << checked << " points bit-exact";
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion2() {
  Outcome o;
  double worst = 0;
  double anchor = 0;
  for (int n = 1; n <= 3; ++n) {
    auto field = [&](const std::string& s) { return expr_field(1, n, s); };
    const std::string last = std::to_string(n);
    const ScalarField f = field("sin(x1)*y" + last + "^2 + exp(x" + last + ")");
    const ScalarField g = field("log(2 + x1^2)*y1 - x" + last + "*y" + last);
    std::vector<ScalarField> ac, bc;
    for (int i = 1; i <= 2 * n; ++i) {
      const std::string k = std::to_string((i - 1) % n + 1);
      ac.push_back(field("cos(x" + k + "*y1) + y" + k + "*x1"));
      bc.push_back(field("x" + last + "*y" + k + "^2 - sin(x" + k + ")"));
    }
    const VectorField a = VectorField::from_components(ac);
    const VectorField b = VectorField::from_components(bc);

    const ScalarField fv = vlift_scalar(f), fc = clift_scalar(f);
    const ScalarField gv = vlift_scalar(g), gc = clift_scalar(g);
    const VectorField av = vlift_vector(a), acl = clift_vector(a);
    const VectorField bv = vlift_vector(b), bcl = clift_vector(b);
    const ScalarField fg_v = vlift_scalar(f * g), fg_c = clift_scalar(f * g);
    const VectorField ab_c = clift_vector(lie_bracket(a, b)), ab_v = vlift_vector(lie_bracket(a, b));
    const VectorField acbc = lie_bracket(acl, bcl), acbv = lie_bracket(acl, bv), avbv = lie_bracket(av, bv);
    const VectorField fa_c = clift_vector(f * a), fa_v = vlift_vector(f * a);
    const VectorField fa_c_rhs = fc * av + fv * acl, fa_v_rhs = fv * av;
    const ScalarField afc = clift_scalar(apply(a, f)), afv = vlift_scalar(apply(a, f));
    const ScalarField acfc = apply(acl, fc), acfv = apply(acl, fv), avfc = apply(av, fc), avfv = apply(av, fv);

    for (const auto& p : points(2, n, 100, 200 + n)) {
      auto upd = [&](double x, double y) { worst = std::max(worst, rel(x, y)); };
      auto updv = [&](const Vec& x, const Vec& y) {
        for (std::size_t i = 0; i < x.size(); ++i) upd(x[i], y[i]);
      };
      const Vec zero(p.size(), 0.0);
      upd(fg_v(p), fv(p) * gv(p));
      upd(fg_c(p), fv(p) * gc(p) + fc(p) * gv(p));
      updv(acbc(p), ab_c(p));
      updv(acbv(p), ab_v(p));
      updv(avbv(p), zero);
      updv(fa_c(p), fa_c_rhs(p));
      updv(fa_v(p), fa_v_rhs(p));
      upd(afc(p), acfc(p));
      upd(afv(p), acfv(p));
      upd(afv(p), avfc(p));
      upd(avfv(p), 0.0);

      // anchor the complete lift itself: f^c = df_(x,X)(y, Y) by central differences
      const Vec c = coords(p);
      Vec base = concat({Vec(c.begin(), c.begin() + n), Vec(c.begin() + 2 * n, c.begin() + 3 * n)});
      Vec dir = concat({Vec(c.begin() + n, c.begin() + 2 * n), Vec(c.begin() + 3 * n, c.end())});
      const double h = 1e-6;
      Vec bp = base, bm = base;
      for (std::size_t i = 0; i < base.size(); ++i) {
        bp[i] += h * dir[i];
        bm[i] -= h * dir[i];
      }
      const double fd = (f(std::span<const double>(bp)) - f(std::span<const double>(bm))) / (2 * h);
      anchor = std::max(anchor, rel(fc(p), fd));
      upd(fv(p), f(std::span<const double>(base)));
    }
    for (const auto& r : lift_algebra_identities(f, g, a, b, points(2, n, 100, 300 + n))) {
      o.require(r.pass, r.name + " (n = " + std::to_string(n) + ")");
    }
  }
  o.require(worst < 1e-10, "max relative residual " + format_double(worst));
  o.require(anchor < 1e-7, "complete lift vs finite differences " + format_double(anchor));
  o.detail << "max relative residual " << format_double(worst) << ", f^c vs FD " << format_double(anchor);
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion3() {
  Outcome o;
  const auto cfg = IntegratorConfig::over(0, 5);
  double worst = 0;
  int runs = 0;
  for (const auto& name : catalog_names()) {
    const Semispray s = catalog_model(name).spray;
    const int n = s.n();
    Rng rng(0xC3 + name.size());
    for (int k = 0; k < 20; ++k) {
      Vec x = rng.vec(n, 1.0), j = rng.vec(n, 1.0), v = rng.vec(n, 1.0), jd = rng.vec(n, 1.0);
      if (norm(v) < 0.2) v[0] += 0.5;
      // log-affine geodesics x' = v / (1 + v t) exist on [0, 5] for v > 0
      if (name == "log-affine") v[0] = std::abs(v[0]);
      const Trajectory d = jacobi_direct(s, x, v, j, jd, cfg);
      const Trajectory l = jacobi_via_lift(s, BundlePoint(2, n, concat({x, j, v, jd})), cfg);
      o.require(d.completed() && l.completed(), name + " run " + std::to_string(k) + " did not complete");
      worst = std::max(worst, max_difference(d, l));
      ++runs;
    }
  }
  o.require(worst < 1e-7, "sup difference " + format_double(worst));
  o.detail << runs << " runs, sup difference " << format_double(worst);
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion4() {
  Outcome o;
  const double pi = std::numbers::pi;
  // oscillator: J = J0 cos t + Jd0 sin t
  {
    const BundlePoint xi(2, 1, {0.2, 0.4, 0.9, -0.3});
    const auto cfg = IntegratorConfig::over(0, pi);
    const Trajectory v = variation_field(catalog_model("oscillator").spray, xi, VariationConfig{1e-4}, cfg);
    double err = 0;
    for (std::size_t k = 0; k < v.points.size(); ++k) {
      const double t = v.times[k];
      err = std::max(err, std::abs(v.points[k][1] - (0.4 * std::cos(t) - 0.3 * std::sin(t))));
    }
    o.require(err < 1e-6, "oscillator error " + format_double(err));
    o.detail << "oscillator " << format_double(err);
  }
  // Euclidean: J = J0 + t Jd0
  {
    const BundlePoint xi(2, 2, {0.1, -0.2, 0.5, 0.3, 1.0, 0.4, -0.6, 0.2});
    const auto cfg = IntegratorConfig::over(0, 5);
    const Trajectory v = variation_field(catalog_model("euclidean").spray, xi, VariationConfig{1e-4}, cfg);
    double err = 0;
    for (std::size_t k = 0; k < v.points.size(); ++k) {
      const double t = v.times[k];
      err = std::max({err, std::abs(v.points[k][2] - (0.5 - 0.6 * t)), std::abs(v.points[k][3] - (0.3 + 0.2 * t))});
    }
    o.require(err < 1e-6, "euclidean error " + format_double(err));
    o.detail << ", euclidean " << format_double(err);
  }
  // diag-metric against the lifted Jacobi field, plus the Richardson ratio
  {
    const Semispray s = catalog_model("diag-metric").spray;
    const BundlePoint xi(2, 2, {0.3, -0.2, 0.5, 0.4, 1.0, 0.5, -0.3, 0.2});
    const auto cfg = IntegratorConfig::over(0, 5);
    const Trajectory j = jacobi_via_lift(s, xi, cfg);
    const double err = max_difference(variation_field(s, xi, VariationConfig{1e-4}, cfg), j);
    o.require(err < 1e-6, "diag-metric error " + format_double(err));
    const double e1 = max_difference(variation_field(s, xi, VariationConfig{1e-3}, cfg), j);
    const double e2 = max_difference(variation_field(s, xi, VariationConfig{5e-4}, cfg), j);
    const double ratio = e1 / e2;
    o.require(ratio >= 3.5 && ratio <= 4.5, "Richardson ratio " + format_double(ratio));
    o.detail << ", diag-metric " << format_double(err) << ", ratio " << format_double(ratio);
  }
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion5() {
  Outcome o;
  const auto cfg = IntegratorConfig::over(0, 1);
  struct Case {
    const char* name;
    VectorField a;
    BundlePoint xi;
    std::function<Vec(double)> exact;  // closed-form A^c flow of xi
  };
  const BundlePoint p1(1, 1, {0.5, 2.0});
  const BundlePoint p2(1, 2, {1.0, -0.5, 0.3, 0.7});
  std::vector<Case> cases;
  cases.push_back({"translation", VectorField::from_components({ScalarField::constant(0, 1, 1)}), p1,
                   [](double t) { return Vec{0.5 + t, 2.0}; }});
  cases.push_back({"linear", VectorField::from_components({expr_field(0, 1, "x1")}), p1,
                   [](double t) { return Vec{0.5 * std::exp(t), 2.0 * std::exp(t)}; }});
  // x' = x2, x2' = -x1 rotates clockwise; the lift rotates y the same way
  cases.push_back({"rotation", VectorField::from_components({expr_field(0, 2, "x2"), expr_field(0, 2, "-x1")}), p2,
                   [](double t) {
                     const double c = std::cos(t), s = std::sin(t);
                     return Vec{c * 1.0 + s * -0.5, -s * 1.0 + c * -0.5, c * 0.3 + s * 0.7, -s * 0.3 + c * 0.7};
                   }});
  double worst = 0, worst_exact = 0;
  for (const auto& c : cases) {
    for (double t : {0.1, 1.0}) {
      const FlowCheckReport r = flow_pushforward_check(c.a, t, c.xi, cfg);
      o.require(r.pass && r.domains_consistent, std::string(c.name) + " at t = " + format_double(t));
      worst = std::max(worst, r.residual);
      if (r.lifted_end && r.pushforward_end) {
        const Vec e = c.exact(t);
        for (std::size_t i = 0; i < e.size(); ++i) {
          worst_exact = std::max({worst_exact, std::abs((*r.lifted_end)[i] - e[i]),
                                  std::abs((*r.pushforward_end)[i] - e[i])});
        }
      } else {
        o.require(false, std::string(c.name) + " missing endpoints");
      }
    }
  }
  o.require(worst < 1e-6, "residual " + format_double(worst));
  o.require(worst_exact < 1e-6, "closed-form gap " + format_double(worst_exact));

  // x' = x^2 blows up at 1/x0
  const VectorField sq = VectorField::from_components({expr_field(0, 1, "x1^2")});
  const auto bcfg = IntegratorConfig::over(0, 3);
  double window = 0;
  for (double x0 : {0.5, 1.0, 2.0}) {
    const FlowCheckReport r = flow_pushforward_check(sq, 3.0, BundlePoint(1, 1, {x0, 0.7}), bcfg);
    const bool both = r.base_status == Status::BlowUp && r.lifted_status == Status::BlowUp;
    o.require(both && r.domains_consistent, "blow-up co-occurrence at x0 = " + format_double(x0));
    window = std::max({window, std::abs(r.base_status_time - 1 / x0), std::abs(r.lifted_status_time - 1 / x0)});
  }
  o.require(window <= 10 * bcfg.h, "blow-up time off by " + format_double(window));
  o.detail << "residual " << format_double(worst) << ", closed-form gap " << format_double(worst_exact)
           << ", blow-up offset " << format_double(window);
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion6() {
  Outcome o;
  const CatalogModel d = catalog_model("diag-metric");
  const Semispray sgc = complete_lift(metric_to_spray(*d.metric));
  const Semispray sg_c = metric_to_spray(metric_complete_lift(*d.metric));
  double gap_g = 0, gap_hand = 0;
  for (const auto& p : points(2, 2, 100, 600)) {
    const auto a = sgc.coefficients(p), b = sg_c.coefficients(p);
    for (int i = 0; i < 4; ++i) gap_g = std::max(gap_g, rel(a[i], b[i]));
    // hand lift of G1 = -x1 y2^2 / 2, G2 = x1 y1 y2 / (x1^2 + 1) at (x, X) along (y, Y)
    const double x1 = p[0], y1 = p[2], X1 = p[4], X2 = p[5], Y1 = p[6], Y2 = p[7];
    const double q = x1 * x1 + 1;
    const double g1v = -x1 * X2 * X2 / 2, g2v = x1 * X1 * X2 / q;
    const double g1c = -y1 * X2 * X2 / 2 - x1 * X2 * Y2;
    const double g2c = (1 - x1 * x1) / (q * q) * y1 * X1 * X2 + x1 / q * (Y1 * X2 + X1 * Y2);
    gap_hand = std::max({gap_hand, rel(a[0], g1v), rel(a[1], g2v), rel(a[2], g1c), rel(a[3], g2c)});
  }
  const LagrangianModel l = *catalog_model("oscillator").lagrangian;
  const Semispray slc = complete_lift(lagrangian_to_semispray(l));
  const Semispray sl_c = lagrangian_to_semispray(lagrangian_complete_lift(l));
  double gap_l = 0;
  for (const auto& p : points(2, 1, 100, 601)) {
    const auto a = slc.coefficients(p), b = sl_c.coefficients(p);
    for (int i = 0; i < 2; ++i) gap_l = std::max(gap_l, rel(a[i], b[i]));
    gap_hand = std::max({gap_hand, rel(a[0], p[0] / 2), rel(a[1], p[1] / 2)});  // G = x/2
  }
  const bool nabla = is_spray(connection_complete_lift_spray(*d.connection)).pass &&
                     is_spray(connection_complete_lift_spray(*catalog_model("log-affine").connection)).pass;
  o.require(gap_g < 1e-9, "metric gap " + format_double(gap_g));
  o.require(gap_l < 1e-9, "Lagrangian gap " + format_double(gap_l));
  o.require(gap_hand < 1e-12, "hand lift gap " + format_double(gap_hand));
  o.require(nabla, "lifted connection spray is not a spray");
  o.detail << "metric gap " << format_double(gap_g) << ", Lagrangian gap " << format_double(gap_l)
           << ", hand gap " << format_double(gap_hand);
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion7() {
  Outcome o;
  const Semispray s = catalog_model("funk-like").spray;
  const Semispray sc = complete_lift(s);
  const SprayReport base = is_spray(s), lifted = is_spray(sc);
  o.require(base.pass, "base spray check");
  o.require(lifted.pass, "lifted spray check");
  double worst = 0, hand = 0;
  for (const auto& p : points(2, 2, 100, 700)) {
    const Vec c = coords(p);
    const double X1 = c[4], X2 = c[5], Y1 = c[6], Y2 = c[7];
    const double nx = std::hypot(X1, X2), dot = X1 * Y1 + X2 * Y2;
    // G^v = |X| X, G^c = (X.Y / |X|) X + |X| Y
    const Vec expected{nx * X1, nx * X2, dot / nx * X1 + nx * Y1, dot / nx * X2 + nx * Y2};
    const auto g = sc.coefficients(p);
    for (int i = 0; i < 4; ++i) hand = std::max(hand, rel(g[i], expected[i]));
    for (double lam : {0.5, 2.0, 3.0}) {
      const auto gl = sc.coefficients(scale_fibre(p, lam));
      for (int i = 0; i < 4; ++i) worst = std::max(worst, rel(gl[i], lam * lam * g[i]));
    }
  }
  o.require(worst < 1e-9, "degree-2 residual " + format_double(worst));
  o.require(hand < 1e-12, "hand lift gap " + format_double(hand));
  for (std::size_t a = 0; a < sc.m(); ++a) {
    const auto r = check_homogeneous(sc.coefficient(a), 2.0, points(2, 2, 64, 701));
    o.require(r.pass, "coefficient " + std::to_string(a) + " homogeneity");
    worst = std::max({worst, r.euler_residual, r.scaling_residual});
  }
  o.detail << "bracket residual " << format_double(lifted.bracket_residual) << ", degree-2 residual "
           << format_double(worst);
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion8() {
  Outcome o;
  const Semispray e = catalog_model("euclidean").spray;
  const Semispray f = catalog_model("funk-like").spray;
  const auto pf = projective_factor(e, f);
  o.require(pf.has_value(), "no factor between S1 and S2");
  double p5 = 1, pgap = 0;
  if (pf) {
    p5 = std::abs(pf->p(std::vector<double>{0, 0, 3, 4}) - 5);
    for (const auto& p : points(1, 2, 50, 800)) pgap = std::max(pgap, rel(pf->p(p), std::hypot(p[2], p[3])));
  }
  o.require(p5 < 1e-9, "|P - 5| = " + format_double(p5));
  o.require(pgap < 1e-12, "P vs |y| gap " + format_double(pgap));
  o.require(!projective_factor(complete_lift(e), complete_lift(f)).has_value(), "lifted sprays related");
  const auto same = projective_factor(complete_lift(f), complete_lift(f));
  double same_max = 1;
  if (same) {
    same_max = 0;
    for (const auto& p : points(2, 2, 50, 801)) same_max = std::max(same_max, std::abs(same->p(p)));
  }
  o.require(same.has_value() && same_max < 1e-10, "self factor " + format_double(same_max));
  o.detail << "|P - 5| = " << format_double(p5) << ", self factor " << format_double(same_max);
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion9() {
  Outcome o;
  const LagrangianModel l = *catalog_model("oscillator").lagrangian;
  const Semispray s = lagrangian_to_semispray(l);
  const ScalarField e = energy(l);

  // S(E) with E = x^2 + y^2 checked against the hand energy
  double pointwise = 0, hand = 0;
  const ScalarField se = apply(as_vector_field(s), e);
  for (const auto& p : points(1, 1, 100, 900)) {
    pointwise = std::max(pointwise, std::abs(se(p)));
    hand = std::max(hand, rel(e(p), p[0] * p[0] + p[1] * p[1]));
  }
  o.require(pointwise < 1e-9, "S(E_L) = " + format_double(pointwise));
  o.require(hand < 1e-14, "E_L vs x^2 + y^2 " + format_double(hand));

  // drifts of E^v = x^2 + X^2, E^c = 2xy + 2XY and E_{L^c} along the S^c curve
  const auto cfg = IntegratorConfig::over(0, 10);
  const BundlePoint xi(2, 1, {0.3, -0.2, 1.0, 0.4});
  const Trajectory t = integrate(complete_lift(s), xi, cfg);
  o.require(t.completed(), "Jacobi lift did not complete");
  const ScalarField elc = energy(lagrangian_complete_lift(l));
  auto ev = [](const BundlePoint& p) { return p[0] * p[0] + p[2] * p[2]; };
  auto ec = [](const BundlePoint& p) { return 2 * p[0] * p[1] + 2 * p[2] * p[3]; };
  double dv = 0, dc = 0, dl = 0;
  for (const auto& p : t.points) {
    dv = std::max(dv, std::abs(ev(p) - ev(t.points[0])));
    dc = std::max(dc, std::abs(ec(p) - ec(t.points[0])));
    dl = std::max(dl, std::abs(elc(p) - elc(t.points[0])));
  }
  o.require(std::max({dv, dc, dl}) < 1e-6, "drifts " + format_double(dv) + ", " + format_double(dc) + ", " +
                                               format_double(dl));
  const JacobiConservationReport jr = jacobi_conservation_suite(l, xi, cfg);
  o.require(jr.pass, "library conservation suite");

  // (E_L)^c = E_{L^c}
  const ScalarField ecl = clift_scalar(e);
  double ident = 0;
  for (const auto& p : points(2, 1, 100, 901)) ident = std::max(ident, std::abs(ecl(p) - elc(p)));
  o.require(ident < 1e-10, "(E_L)^c - E_{L^c} = " + format_double(ident));

  // negative controls
  const auto nc = check_constant(s, expr_field(1, 1, "x1*y1"), points(1, 1, 32, 902));
  o.require(!nc.pass, "x y reported conserved");
  const auto [nv, ncl] = lift_constant(s, expr_field(1, 1, "x1*y1"), points(2, 1, 32, 903));
  o.require(!nv.pass && !ncl.pass, "lifts of x y reported conserved");
  const auto ex = check_constant(catalog_model("euclidean").spray, expr_field(1, 2, "x1"), points(1, 2, 32, 904));
  o.require(!ex.pass, "x1 reported conserved by free motion");
  o.require(!check_lie_symmetry(s, VectorField::from_components({ScalarField::constant(0, 1, 1)}),
                                points(1, 1, 32, 905))
                 .pass,
            "d/dx reported as an oscillator symmetry");
  o.detail << "S(E) " << format_double(pointwise) << ", drifts " << format_double(dv) << "/" << format_double(dc)
           << "/" << format_double(dl) << ", identity " << format_double(ident);
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion10() {
  Outcome o;
  const auto cfg = IntegratorConfig::over(0, 1);
  const Trajectory osc = integrate(catalog_model("oscillator").spray, BundlePoint(1, 1, {0, 1}), cfg);
  const double eo = std::max(std::abs(osc.back()[0] - std::sin(1.0)), std::abs(osc.back()[1] - std::cos(1.0)));
  const Trajectory aff = geodesic(catalog_model("log-affine").spray, Vec{0}, Vec{1}, cfg);
  const double ea = std::abs(aff.back()[0] - std::log(2.0));
  const Trajectory euc = integrate(catalog_model("euclidean").spray, BundlePoint(1, 2, {0, 0, 1, 0}), cfg);
  const double ee = std::max({std::abs(euc.back()[0] - 1), std::abs(euc.back()[1]), std::abs(euc.back()[2] - 1),
                              std::abs(euc.back()[3])});
  o.require(osc.completed() && aff.completed() && euc.completed(), "trajectory did not complete");
  o.require(std::abs(osc.times.back() - 1) < 1e-12, "final time");
  o.require(eo < 1e-9, "oscillator " + format_double(eo));
  o.require(ea < 1e-8, "log-affine " + format_double(ea));
  o.require(ee < 1e-12, "euclidean " + format_double(ee));
  o.detail << "oscillator " << format_double(eo) << ", log-affine " << format_double(ea) << ", euclidean "
           << format_double(ee);
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion11() {
  Outcome o;
  const std::vector<std::string> vars = {"x1", "y1"};
  struct Good {
    const char* src;
    double value;  // at x1 = 0.5, y1 = 2
  };
  const Good good[] = {
      {"x1", 0.5},
      {"x1 + y1 * 3", 6.5},
      {"(x1 + y1) * 3", 7.5},
      {"-x1^2", -0.25},
      {"2^3^2", 512},
      {"y1 / x1 / 2", 2},
      {"x1 - y1 - 1", -2.5},
      {"sin(x1)", std::sin(0.5)},
      {"cos(y1)", std::cos(2.0)},
      {"exp(x1*y1)", std::exp(1.0)},
      {"log(y1)", std::log(2.0)},
      {"sqrt(y1 + x1)", std::sqrt(2.5)},
      {"abs_smooth(x1 - y1)", 1.5},
      {"1e-3 + 2.5E2", 250.001},
      {".25*y1", 0.5},
      {"+x1", 0.5},
      {"y1^x1", std::sqrt(2.0)},
  };
  struct Bad {
    const char* src;
    std::size_t offset;
  };
  const Bad bad[] = {
      {"", 0},          {"2*(", 3},       {"x1 +", 4},        {"(x1 + y1", 8},   {"x1 y1", 3},
      {"z1", 0},        {"x1 * w", 5},    {"foo(x1)", 0},     {"sin x1", 4},     {"x1 $ 2", 3},
      {")", 0},         {"x1 ^ ", 5},     {"cos()", 4},       {"1 + (2))", 7},
  };
  std::size_t accepted = 0, rejected = 0;
  for (const auto& g : good) {
    try {
      const Expr e = parse(g.src, vars);
      const double pt[] = {0.5, 2.0};
      const double v = e.eval(pt);
      const bool ok = rel(v, g.value) < 1e-14 && parse(e.to_string(), vars).structurally_equal(e);
      o.require(ok, std::string("value of '") + g.src + "'");
      accepted += ok;
    } catch (const Error& ex) {
      o.require(false, std::string("'") + g.src + "' rejected: " + ex.what());
    }
  }
  for (const auto& b : bad) {
    std::optional<std::size_t> at;
    try {
      parse(b.src, vars);
    } catch (const ParseError& e) {
      at = e.offset();
    } catch (const UnknownVariable& e) {
      at = e.offset();
    } catch (const UnknownFunction& e) {
      at = e.offset();
    }
    const bool ok = at && *at == b.offset;
    o.require(ok, std::string("offset for '") + b.src + "'");
    rejected += ok;
  }
  o.require(std::size(good) + std::size(bad) >= 30, "corpus too small");

  // jets on every built-in against central differences
  const char* builtins[] = {"sin(x1*y1)", "cos(x1 + y1^2)", "exp(x1 - y1)", "log(1 + x1^2*y1^2)",
                            "sqrt(2 + x1*y1)", "abs_smooth(x1 - y1)", "(x1 + 2)^y1", "x1^3/y1"};
  const double pts[][2] = {{0.5, 2.0}, {-0.7, 1.1}, {1.3, -0.4}};
  const std::size_t active[] = {0, 1};
  double gworst = 0, hworst = 0;
  for (const char* src : builtins) {
    const Expr e = parse(src, vars);
    for (const auto& p : pts) {
      const Jet2 j = e.eval_jet(p, active);
      auto f = [&](double dx, double dy) {
        const double q[] = {p[0] + dx, p[1] + dy};
        return e.eval(q);
      };
      const double h = 1e-6, k = 1e-4;
      const double gx = (f(h, 0) - f(-h, 0)) / (2 * h), gy = (f(0, h) - f(0, -h)) / (2 * h);
      const double hxx = (f(k, 0) - 2 * f(0, 0) + f(-k, 0)) / (k * k);
      const double hyy = (f(0, k) - 2 * f(0, 0) + f(0, -k)) / (k * k);
      const double hxy = (f(k, k) - f(k, -k) - f(-k, k) + f(-k, -k)) / (4 * k * k);
      gworst = std::max({gworst, rel(j.grad(0), gx), rel(j.grad(1), gy)});
      hworst = std::max({hworst, rel(j.hess(0, 0), hxx), rel(j.hess(1, 1), hyy), rel(j.hess(0, 1), hxy)});
    }
  }
  o.require(gworst < 1e-6, "gradient gap " + format_double(gworst));
  o.require(hworst < 1e-4, "Hessian gap " + format_double(hworst));
  o.detail << accepted << " accepted, " << rejected << " rejected at the right offset, gradient gap "
           << format_double(gworst) << ", Hessian gap " << format_double(hworst);
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"involution and projection identities", criterion1},
      {"lift algebra", criterion2},
      {"Jacobi route equivalence", criterion3},
      {"variation convergence", criterion4},
      {"complete lift flows", criterion5},
      {"lifted model identities", criterion6},
      {"homogeneity of lifted sprays", criterion7},
      {"projective rigidity", criterion8},
      {"conservation along Jacobi fields", criterion9},
      {"closed-form trajectories", criterion10},
      {"expression parser", criterion11},
  };
  int failed = 0;
  int id = 0;
  for (const auto& [title, run] : criteria) {
    ++id;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    std::printf("criterion %2d %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.str().c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %d criteria passed\n", id - failed, id);
  return failed == 0 ? 0 : 1;
}

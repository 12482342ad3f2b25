#include "liftlab/semispray.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "liftlab/error.hpp"
#include "liftlab/sampling.hpp"

namespace liftlab {

namespace {

void require_semispray_level(int level, const char* op) {
  if (level != 1 && level != 2) {
    throw LevelError(std::string(op) + ": semisprays live at level 1 or 2, got " +
                     std::to_string(level));
  }
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

Semispray::Semispray(int level, int n, CoeffFn coeffs, bool smooth_at_zero, bool spray_hint)
    : level_(level),
      n_(n),
      coeffs_(std::move(coeffs)),
      smooth_at_zero_(smooth_at_zero),
      spray_hint_(spray_hint) {
  require_semispray_level(level, "Semispray");
  if (n < 1) throw InputError("Semispray: n must be >= 1");
}

Semispray Semispray::from_fields(std::vector<ScalarField> g, bool spray_hint) {
  if (g.empty()) throw InputError("Semispray: no coefficients");
  const int n = g.front().n();
  if (g.size() != static_cast<std::size_t>(n)) {
    throw InputError("Semispray: expected n coefficient fields");
  }
  bool smooth = true;
  for (const auto& f : g) {
    if (f.level() != 1 || f.n() != n) throw LevelMismatch("Semispray: G must live on TM");
    smooth = smooth && f.smooth_at_zero();
  }
  return Semispray(
      1, n,
      [g = std::move(g)](std::span<const Hyper> xi) {
        std::vector<Hyper> out;
        out.reserve(g.size());
        for (const auto& f : g) out.push_back(f(xi));
        return out;
      },
      smooth, spray_hint);
}

Semispray Semispray::from_fields(std::vector<ScalarField> g, std::vector<ScalarField> h,
                                 bool spray_hint) {
  if (g.empty() || g.size() != h.size()) throw InputError("Semispray: need n pairs (G, H)");
  const int n = g.front().n();
  if (g.size() != static_cast<std::size_t>(n)) {
    throw InputError("Semispray: expected n coefficient pairs");
  }
  bool smooth = true;
  std::vector<ScalarField> all = std::move(g);
  for (auto& f : h) all.push_back(std::move(f));
  for (const auto& f : all) {
    if (f.level() != 2 || f.n() != n) throw LevelMismatch("Semispray: (G, H) must live on TTM");
    smooth = smooth && f.smooth_at_zero();
  }
  return Semispray(
      2, n,
      [all = std::move(all)](std::span<const Hyper> xi) {
        std::vector<Hyper> out;
        out.reserve(all.size());
        for (const auto& f : all) out.push_back(f(xi));
        return out;
      },
      smooth, spray_hint);
}

std::vector<double> Semispray::coefficients(std::span<const double> xi) const {
  const auto r = coeffs_(constants(xi));
  std::vector<double> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i].value();
  return out;
}

ScalarField Semispray::coefficient(std::size_t a) const {
  if (a >= m()) throw InputError("Semispray::coefficient: index out of range");
  return ScalarField(
      level_, n_, [fn = coeffs_, a](std::span<const Hyper> xi) { return fn(xi)[a]; },
      smooth_at_zero_);
}

VectorField as_vector_field(const Semispray& s) {
  return VectorField(
      s.level(), s.n(),
      [fn = s.coefficient_fn()](std::span<const Hyper> xi) {
        const std::size_t m = xi.size() / 2;
        const auto g = fn(xi);
        std::vector<Hyper> out(xi.size());
        for (std::size_t a = 0; a < m; ++a) {
          out[a] = xi[m + a];
          out[m + a] = Hyper(-2.0) * g[a];
        }
        return out;
      },
      s.smooth_at_zero());
}

bool is_semispray(const VectorField& v, SampleSpec samples) {
  if (v.level() != 1 && v.level() != 2) return false;
  for (const auto& p : sample_points(v.level(), v.n(), samples.count, samples.seed)) {
    const auto comps = v(p);
    const std::size_t m = comps.size() / 2;
    for (std::size_t a = 0; a < m; ++a) {
      const double expect = p[m + a];
      if (std::abs(comps[a] - expect) > 1e-12 * std::max(1.0, std::abs(expect))) return false;
    }
  }
  return true;
}

Semispray complete_lift(const Semispray& s) {
  if (s.level() != 1) throw LevelError("complete_lift: expects a semispray on M (level 1)");
  const int n = s.n();
  return Semispray(
      2, n,
      [fn = s.coefficient_fn(), n](std::span<const Hyper> xi) {
        // kappa_2(x, y, X, Y) = (x, X, y, Y): evaluate G along (x, X) + e (y, Y).
        const std::size_t un = static_cast<std::size_t>(n);
        std::vector<Hyper> base, tangent;
        base.reserve(2 * un);
        tangent.reserve(2 * un);
        for (std::size_t i = 0; i < un; ++i) base.push_back(xi[i]);
        for (std::size_t i = 0; i < un; ++i) base.push_back(xi[2 * un + i]);
        for (std::size_t i = 0; i < un; ++i) tangent.push_back(xi[un + i]);
        for (std::size_t i = 0; i < un; ++i) tangent.push_back(xi[3 * un + i]);
        const int g = std::max(max_order(base), max_order(tangent));
        const auto coeffs = fn(perturb(base, tangent));
        std::vector<Hyper> out(2 * un);
        for (std::size_t i = 0; i < un; ++i) {
          out[i] = coeffs[i].base(g);
          out[un + i] = coeffs[i].tangent(g);
        }
        return out;
      },
      s.smooth_at_zero(), s.spray_hint());
}

VectorField tangent_lift(const Semispray& s) {
  if (s.level() != 1) throw LevelError("tangent_lift: expects a semispray on M (level 1)");
  const int n = s.n();
  const VectorField sv = as_vector_field(s);
  return VectorField(
      2, n,
      [sv, n](std::span<const Hyper> xi) {
        // DS(x, y, X, Y) = (x, y, S(x, y), X, Y, dS(X, Y)) in TTTM, then kappa_3.
        const std::size_t half = xi.size() / 2;
        std::vector<Hyper> base(xi.begin(), xi.begin() + half);
        std::vector<Hyper> dir(xi.begin() + half, xi.end());
        const int g = std::max(max_order(base), max_order(dir));
        const auto s_jet = sv(perturb(base, dir));
        std::vector<Hyper> ds;
        ds.reserve(2 * xi.size());
        for (const auto& b : base) ds.push_back(b);
        for (const auto& c : s_jet) ds.push_back(c.base(g));
        for (const auto& d : dir) ds.push_back(d);
        for (const auto& c : s_jet) ds.push_back(c.tangent(g));
        const auto perm = kappa_permutation(3, n);
        const auto permuted = permute<Hyper>(ds, perm);
        return std::vector<Hyper>(permuted.begin() + xi.size(), permuted.end());
      },
      s.smooth_at_zero());
}

SprayReport is_spray(const Semispray& s, double tol, SampleSpec samples) {
  SprayReport rep;
  rep.tolerance = tol;
  const VectorField sv = as_vector_field(s);
  const VectorField bracket = lie_bracket(liouville(s.level(), s.n()), sv);
  const auto pts = sample_points(s.level(), s.n(), samples.count, samples.seed);
  for (const auto& p : pts) {
    const auto a = sv(p);
    const auto b = bracket(p);
    for (std::size_t k = 0; k < a.size(); ++k) {
      rep.bracket_residual = std::max(rep.bracket_residual, relative_gap(b[k], a[k]));
    }
  }
  for (std::size_t a = 0; a < s.m(); ++a) {
    const auto h = check_homogeneous(s.coefficient(a), 2.0, pts, tol);
    rep.coefficient_residual =
        std::max({rep.coefficient_residual, h.euler_residual, h.scaling_residual});
  }
  rep.pass = rep.bracket_residual < tol && rep.coefficient_residual < tol;
  return rep;
}

std::optional<ProjectiveFactor> projective_factor(const Semispray& s1, const Semispray& s2,
                                                  double tol, SampleSpec samples) {
  if (s1.level() != s2.level() || s1.n() != s2.n()) {
    throw InputError("projective_factor: semisprays live on different bundles");
  }
  const auto pts = sample_points(s1.level(), s1.n(), samples.count, samples.seed);
  double worst = 0.0;
  for (const auto& p : pts) {
    const auto g1 = s1.coefficients(p);
    const auto g2 = s2.coefficients(p);
    const std::size_t m = g1.size();
    std::vector<double> delta(m);
    for (std::size_t a = 0; a < m; ++a) delta[a] = g2[a] - g1[a];
    const auto w = p.coords().subspan(m);
    const double scale = norm(delta) * norm(w);
    double cross = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        cross = std::max(cross, std::abs(delta[i] * w[j] - delta[j] * w[i]));
      }
    }
    if (cross > tol * scale) return std::nullopt;
    if (scale > 0.0) worst = std::max(worst, cross / scale);
  }
  ScalarField factor(
      s1.level(), s1.n(),
      [f1 = s1.coefficient_fn(), f2 = s2.coefficient_fn()](std::span<const Hyper> xi) {
        const std::size_t m = xi.size() / 2;
        std::size_t k = 0;
        for (std::size_t a = 1; a < m; ++a) {
          if (std::abs(xi[m + a].value()) > std::abs(xi[m + k].value())) k = a;
        }
        return (f2(xi)[k] - f1(xi)[k]) / xi[m + k];
      },
      s1.smooth_at_zero() && s2.smooth_at_zero());
  auto hom = check_homogeneous(factor, 1.0, pts);
  if (!hom.pass) return std::nullopt;
  return ProjectiveFactor{std::move(factor), worst, hom};
}

RigidityReport projective_rigidity_check(const Semispray& s1, const Semispray& s2, double tol,
                                         SampleSpec samples) {
  RigidityReport rep;
  const auto lifted = projective_factor(complete_lift(s1), complete_lift(s2), tol, samples);
  rep.lifted_related = lifted.has_value();
  if (lifted) {
    for (const auto& p : sample_points(2, s1.n(), samples.count, samples.seed)) {
      rep.lifted_factor_max_abs = std::max(rep.lifted_factor_max_abs, std::abs(lifted->p(p)));
    }
  }
  for (const auto& p : sample_points(1, s1.n(), samples.count, samples.seed)) {
    const auto g1 = s1.coefficients(p);
    const auto g2 = s2.coefficients(p);
    for (std::size_t a = 0; a < g1.size(); ++a) {
      rep.max_coefficient_gap = std::max(rep.max_coefficient_gap, relative_gap(g1[a], g2[a]));
    }
  }
  rep.coefficients_equal = rep.max_coefficient_gap < tol;
  rep.pass = rep.lifted_related == rep.coefficients_equal;
  return rep;
}

}  // namespace liftlab

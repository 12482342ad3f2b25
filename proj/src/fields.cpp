#include "liftlab/fields.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "liftlab/error.hpp"
#include "liftlab/sampling.hpp"

namespace liftlab {

namespace {

void require_lift_level(int level, int max_level, const char* op) {
  if (level < 0 || level > max_level) {
    throw LevelError(std::string(op) + ": cannot lift from level " + std::to_string(level));
  }
}

void require_same(int la, int na, int lb, int nb, const char* op) {
  if (la != lb || na != nb) {
    throw LevelMismatch(std::string(op) + ": operands live on different bundles");
  }
}

// Splits kappa_{r+1}(xi) into its base half b and tangent half t.
struct Split {
  std::vector<Hyper> base;
  std::vector<Hyper> tangent;
};

Split split_kappa(std::span<const Hyper> xi, int lifted_level, int n) {
  const auto perm = kappa_permutation(lifted_level, n);
  const std::size_t half = xi.size() / 2;
  Split s;
  s.base.reserve(half);
  s.tangent.reserve(half);
  for (std::size_t i = 0; i < half; ++i) s.base.push_back(xi[perm[i]]);
  for (std::size_t i = half; i < xi.size(); ++i) s.tangent.push_back(xi[perm[i]]);
  return s;
}

}  // namespace

// ---- ScalarField -----------------------------------------------------------

ScalarField::ScalarField(int level, int n, Fn fn, bool smooth_at_zero)
    : level_(level), n_(n), fn_(std::move(fn)), smooth_at_zero_(smooth_at_zero) {
  if (level < 0 || level > kMaxLevel) throw LevelError("ScalarField: unsupported level");
  if (n < 1) throw InputError("ScalarField: n must be >= 1");
}

ScalarField ScalarField::from_expr(int level, int n, const Expr& e, bool smooth_at_zero) {
  if (e.variables().size() != bundle_size(level, n)) {
    throw InputError("ScalarField::from_expr: expression declares " +
                     std::to_string(e.variables().size()) + " variables, level " +
                     std::to_string(level) + " needs " + std::to_string(bundle_size(level, n)));
  }
  return ScalarField(
      level, n, [e](std::span<const Hyper> xi) { return e.eval(xi); }, smooth_at_zero);
}

ScalarField ScalarField::constant(int level, int n, double c) {
  return ScalarField(level, n, [c](std::span<const Hyper>) { return Hyper(c); });
}

ScalarField ScalarField::coordinate(int level, int n, std::size_t index) {
  if (index >= bundle_size(level, n)) throw InputError("ScalarField::coordinate: bad index");
  return ScalarField(level, n, [index](std::span<const Hyper> xi) { return xi[index]; });
}

double ScalarField::operator()(std::span<const double> xi) const {
  const auto h = constants(xi);
  return fn_(h).value();
}

double ScalarField::derivative(std::span<const double> xi, std::span<const double> dir) const {
  const auto h = constants(xi);
  const auto p = perturb(h, dir);
  return fn_(p).coeff(1);
}

Jet2 ScalarField::jet(std::span<const double> xi) const {
  const std::size_t d = xi.size();
  const auto h = constants(xi);
  std::vector<double> grad(d, 0.0);
  std::vector<double> hess(d * (d + 1) / 2, 0.0);
  std::vector<double> ei(d, 0.0), ej(d, 0.0);
  double value = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < d; ++i) {
    ei.assign(d, 0.0);
    ei[i] = 1.0;
    const auto pi = perturb(h, ei);
    for (std::size_t j = i; j < d; ++j) {
      ej.assign(d, 0.0);
      ej[j] = 1.0;
      const Hyper r = fn_(perturb(pi, ej));
      if (i == 0 && j == 0) value = r.value();
      if (j == i) grad[i] = r.coeff(1);
      hess[k++] = r.coeff(3);
    }
  }
  if (d == 0) value = fn_(h).value();
  return Jet2(value, std::move(grad), std::move(hess));
}

// ---- VectorField -----------------------------------------------------------

VectorField::VectorField(int level, int n, Fn fn, bool smooth_at_zero)
    : level_(level), n_(n), fn_(std::move(fn)), smooth_at_zero_(smooth_at_zero) {
  if (level < 0 || level > kMaxLevel) throw LevelError("VectorField: unsupported level");
  if (n < 1) throw InputError("VectorField: n must be >= 1");
}

VectorField VectorField::from_components(std::vector<ScalarField> components) {
  if (components.empty()) throw InputError("VectorField: no components");
  const int level = components.front().level();
  const int n = components.front().n();
  if (components.size() != bundle_size(level, n)) {
    throw InputError("VectorField: component count does not match level");
  }
  bool smooth = true;
  for (const auto& c : components) {
    require_same(level, n, c.level(), c.n(), "VectorField::from_components");
    smooth = smooth && c.smooth_at_zero();
  }
  return VectorField(
      level, n,
      [components = std::move(components)](std::span<const Hyper> xi) {
        std::vector<Hyper> out;
        out.reserve(components.size());
        for (const auto& c : components) out.push_back(c(xi));
        return out;
      },
      smooth);
}

VectorField VectorField::zero(int level, int n) {
  const std::size_t d = bundle_size(level, n);
  return VectorField(level, n,
                     [d](std::span<const Hyper>) { return std::vector<Hyper>(d, Hyper(0.0)); });
}

std::vector<Hyper> VectorField::operator()(std::span<const Hyper> xi) const { return fn_(xi); }

std::vector<double> VectorField::operator()(std::span<const double> xi) const {
  const auto h = constants(xi);
  const auto r = fn_(h);
  std::vector<double> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i].value();
  return out;
}

ScalarField VectorField::component(std::size_t i) const {
  if (i >= size()) throw InputError("VectorField::component: index out of range");
  return ScalarField(
      level_, n_, [fn = fn_, i](std::span<const Hyper> xi) { return fn(xi)[i]; },
      smooth_at_zero_);
}

// ---- lifts -----------------------------------------------------------------

ScalarField vlift_scalar(const ScalarField& f) {
  require_lift_level(f.level(), 2, "vlift_scalar");
  const int lifted = f.level() + 1;
  const int n = f.n();
  return ScalarField(
      lifted, n,
      [f, lifted, n](std::span<const Hyper> xi) { return f(split_kappa(xi, lifted, n).base); },
      f.smooth_at_zero());
}

ScalarField clift_scalar(const ScalarField& f) {
  require_lift_level(f.level(), 2, "clift_scalar");
  const int lifted = f.level() + 1;
  const int n = f.n();
  return ScalarField(
      lifted, n,
      [f, lifted, n](std::span<const Hyper> xi) {
        const Split s = split_kappa(xi, lifted, n);
        const int g = std::max(max_order(s.base), max_order(s.tangent));
        return f(perturb(s.base, s.tangent)).tangent(g);
      },
      f.smooth_at_zero());
}

VectorField vlift_vector(const VectorField& a) {
  require_lift_level(a.level(), 1, "vlift_vector");
  const int lifted = a.level() + 1;
  const int n = a.n();
  const std::size_t blocks = std::size_t{1} << a.level();
  return VectorField(
      lifted, n,
      [a, lifted, n, blocks](std::span<const Hyper> xi) {
        const auto comps = a(split_kappa(xi, lifted, n).base);
        std::vector<Hyper> out(2 * comps.size(), Hyper(0.0));
        for (std::size_t b = 0; b < blocks; ++b) {
          for (int i = 0; i < n; ++i) out[(2 * b + 1) * n + i] = comps[b * n + i];
        }
        return out;
      },
      a.smooth_at_zero());
}

VectorField clift_vector(const VectorField& a) {
  require_lift_level(a.level(), 1, "clift_vector");
  const int lifted = a.level() + 1;
  const int n = a.n();
  const std::size_t blocks = std::size_t{1} << a.level();
  return VectorField(
      lifted, n,
      [a, lifted, n, blocks](std::span<const Hyper> xi) {
        const Split s = split_kappa(xi, lifted, n);
        const int g = std::max(max_order(s.base), max_order(s.tangent));
        const auto comps = a(perturb(s.base, s.tangent));
        std::vector<Hyper> out(2 * comps.size());
        for (std::size_t b = 0; b < blocks; ++b) {
          for (int i = 0; i < n; ++i) {
            const Hyper& c = comps[b * n + i];
            out[2 * b * n + i] = c.base(g);
            out[(2 * b + 1) * n + i] = c.tangent(g);
          }
        }
        return out;
      },
      a.smooth_at_zero());
}

// ---- algebra ---------------------------------------------------------------

VectorField lie_bracket(const VectorField& a, const VectorField& b) {
  require_same(a.level(), a.n(), b.level(), b.n(), "lie_bracket");
  return VectorField(
      a.level(), a.n(),
      [a, b](std::span<const Hyper> xi) {
        const auto av = a(xi);
        const auto bv = b(xi);
        const int g = std::max({max_order(xi), max_order(av), max_order(bv)});
        auto promote = [g](std::span<const Hyper> v) {
          std::vector<Hyper> out;
          out.reserve(v.size());
          for (const auto& h : v) out.push_back(h.promoted(g));
          return out;
        };
        const auto base = promote(xi);
        const auto db = b(perturb(base, promote(av)));  // D_A B
        const auto da = a(perturb(base, promote(bv)));  // D_B A
        std::vector<Hyper> out(xi.size());
        for (std::size_t k = 0; k < xi.size(); ++k) out[k] = db[k].tangent(g) - da[k].tangent(g);
        return out;
      },
      a.smooth_at_zero() && b.smooth_at_zero());
}

VectorField liouville(int level, int n) {
  if (level != 1 && level != 2) {
    throw LevelError("liouville: defined for levels 1 and 2, got " + std::to_string(level));
  }
  return VectorField(level, n, [](std::span<const Hyper> xi) {
    const std::size_t half = xi.size() / 2;
    std::vector<Hyper> out(xi.size(), Hyper(0.0));
    for (std::size_t i = half; i < xi.size(); ++i) out[i] = xi[i];
    return out;
  });
}

ScalarField apply(const VectorField& a, const ScalarField& f) {
  require_same(a.level(), a.n(), f.level(), f.n(), "apply");
  return ScalarField(
      f.level(), f.n(),
      [a, f](std::span<const Hyper> xi) {
        const auto av = a(xi);
        const int g = std::max(max_order(xi), max_order(av));
        std::vector<Hyper> base(xi.begin(), xi.end());
        for (auto& h : base) h = h.promoted(g);
        std::vector<Hyper> dir(av.begin(), av.end());
        for (auto& h : dir) h = h.promoted(g);
        return f(perturb(base, dir)).tangent(g);
      },
      a.smooth_at_zero() && f.smooth_at_zero());
}

ScalarField operator+(const ScalarField& f, const ScalarField& g) {
  require_same(f.level(), f.n(), g.level(), g.n(), "operator+");
  return ScalarField(
      f.level(), f.n(), [f, g](std::span<const Hyper> xi) { return f(xi) + g(xi); },
      f.smooth_at_zero() && g.smooth_at_zero());
}

ScalarField operator-(const ScalarField& f, const ScalarField& g) {
  require_same(f.level(), f.n(), g.level(), g.n(), "operator-");
  return ScalarField(
      f.level(), f.n(), [f, g](std::span<const Hyper> xi) { return f(xi) - g(xi); },
      f.smooth_at_zero() && g.smooth_at_zero());
}

ScalarField operator*(const ScalarField& f, const ScalarField& g) {
  require_same(f.level(), f.n(), g.level(), g.n(), "operator*");
  return ScalarField(
      f.level(), f.n(), [f, g](std::span<const Hyper> xi) { return f(xi) * g(xi); },
      f.smooth_at_zero() && g.smooth_at_zero());
}

ScalarField operator*(double c, const ScalarField& f) {
  return ScalarField(
      f.level(), f.n(), [f, c](std::span<const Hyper> xi) { return Hyper(c) * f(xi); },
      f.smooth_at_zero());
}

VectorField operator*(const ScalarField& f, const VectorField& a) {
  require_same(f.level(), f.n(), a.level(), a.n(), "operator*");
  return VectorField(
      a.level(), a.n(),
      [f, a](std::span<const Hyper> xi) {
        const Hyper s = f(xi);
        auto v = a(xi);
        for (auto& h : v) h = s * h;
        return v;
      },
      f.smooth_at_zero() && a.smooth_at_zero());
}

VectorField operator*(double c, const VectorField& a) {
  return VectorField(
      a.level(), a.n(),
      [a, c](std::span<const Hyper> xi) {
        auto v = a(xi);
        for (auto& h : v) h = Hyper(c) * h;
        return v;
      },
      a.smooth_at_zero());
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  require_same(a.level(), a.n(), b.level(), b.n(), "operator+");
  return VectorField(
      a.level(), a.n(),
      [a, b](std::span<const Hyper> xi) {
        auto v = a(xi);
        const auto w = b(xi);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[i];
        return v;
      },
      a.smooth_at_zero() && b.smooth_at_zero());
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  return a + (-1.0) * b;
}

// ---- homogeneity -----------------------------------------------------------

BundlePoint scale_fibre(const BundlePoint& p, double lambda) {
  if (p.level() < 1) throw LevelError("scale_fibre: level 0 has no fibre");
  std::vector<double> c(p.coords().begin(), p.coords().end());
  for (std::size_t i = c.size() / 2; i < c.size(); ++i) c[i] *= lambda;
  return BundlePoint(p.level(), p.n(), std::move(c));
}

HomogeneityReport check_homogeneous(const ScalarField& f, double degree,
                                    std::span<const BundlePoint> samples, double tol) {
  HomogeneityReport rep;
  rep.degree = degree;
  rep.tolerance = tol;
  rep.samples = samples.size();
  const ScalarField euler = apply(liouville(f.level(), f.n()), f);
  for (const auto& p : samples) {
    const double fv = f(p);
    rep.euler_residual = std::max(rep.euler_residual, relative_gap(euler(p), degree * fv));
    for (double lambda : kScalingFactors) {
      const double scaled = f(scale_fibre(p, lambda));
      rep.scaling_residual =
          std::max(rep.scaling_residual, relative_gap(scaled, std::pow(lambda, degree) * fv));
    }
  }
  rep.pass = rep.euler_residual < tol && rep.scaling_residual < tol;
  return rep;
}

HomogeneityReport check_homogeneous(const VectorField& a, double degree,
                                    std::span<const BundlePoint> samples, double tol) {
  HomogeneityReport rep;
  rep.degree = degree;
  rep.tolerance = tol;
  rep.samples = samples.size();
  const VectorField bracket = lie_bracket(liouville(a.level(), a.n()), a);
  for (const auto& p : samples) {
    const auto av = a(p);
    const auto bv = bracket(p);
    for (std::size_t k = 0; k < av.size(); ++k) {
      rep.euler_residual = std::max(rep.euler_residual, relative_gap(bv[k], (degree - 1) * av[k]));
    }
    const std::size_t half = av.size() / 2;
    for (double lambda : kScalingFactors) {
      const auto sv = a(scale_fibre(p, lambda));
      for (std::size_t k = 0; k < av.size(); ++k) {
        const double s = k < half ? degree - 1 : degree;
        rep.scaling_residual =
            std::max(rep.scaling_residual, relative_gap(sv[k], std::pow(lambda, s) * av[k]));
      }
    }
  }
  rep.pass = rep.euler_residual < tol && rep.scaling_residual < tol;
  return rep;
}

}  // namespace liftlab

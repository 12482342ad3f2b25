#include "liftlab/identities.hpp"

#include <algorithm>
#include <cmath>

#include "liftlab/error.hpp"
#include "liftlab/sampling.hpp"

namespace liftlab {

BundlePoint dkappa(const BundlePoint& p) {
  if (p.level() < 2) throw LevelError("dkappa: needs a point of level >= 2");
  const BundlePoint base = project(p);
  const std::size_t half = base.size();
  const BundlePoint fib(base.level(), p.n(),
                        std::vector<double>(p.coords().begin() + half, p.coords().end()));
  const BundlePoint kb = kappa(base);
  std::vector<double> c(kb.coords().begin(), kb.coords().end());
  const BundlePoint kf = kappa(fib);
  c.insert(c.end(), kf.coords().begin(), kf.coords().end());
  return BundlePoint(p.level(), p.n(), std::move(c));
}

BundlePoint ddprojection(const BundlePoint& p) {
  if (p.level() != 3) throw LevelError("ddprojection: needs a point of T^3 M");
  std::vector<double> c;
  for (int b : {0, 2, 4, 6}) {
    const auto blk = p.block(b);
    c.insert(c.end(), blk.begin(), blk.end());
  }
  return BundlePoint(2, p.n(), std::move(c));
}

std::vector<IdentityResult> bundle_identities(int n, std::size_t count, std::uint64_t seed) {
  std::vector<IdentityResult> out;
  auto add = [&](std::string name, std::size_t failures) {
    out.push_back({std::move(name), static_cast<double>(failures), 0.0, failures == 0});
  };
  for (int level = 1; level <= kMaxLevel; ++level) {
    const auto pts = sample_points(level, n, count, seed + level);
    std::size_t inv = 0, com = 0, kr = 0, k3 = 0, sl = 0;
    for (const auto& p : pts) {
      if (!(kappa(kappa(p)) == p)) ++inv;
      if (level == 1 && !(kappa(p) == p)) ++inv;
      if (level >= 2 && !(dprojection(p) == project(kappa(p)))) ++com;
      if (level == 3) {
        if (!(project(dkappa(p)) == kappa(project(p)))) ++kr;
        if (!(ddprojection(kappa(p)) == kappa(ddprojection(p)))) ++k3;
        if (in_slashed(p) && !in_slashed(dprojection(p))) ++sl;
      }
    }
    const std::string tag = "level" + std::to_string(level) + "/";
    add(tag + "kappa_involution", inv);
    if (level >= 2) add(tag + "dprojection_is_project_kappa", com);
    if (level == 3) {
      add(tag + "project_dkappa", kr);
      add(tag + "ddprojection_kappa", k3);
      add(tag + "slashed_preserved", sl);
    }
  }
  return out;
}

namespace {

double gap(const std::vector<double>& a, const std::vector<double>& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, relative_gap(a[i], b[i]));
  return r;
}

}  // namespace

std::vector<IdentityResult> lift_algebra_identities(const ScalarField& f, const ScalarField& g,
                                                    const VectorField& a, const VectorField& b,
                                                    std::span<const BundlePoint> samples,
                                                    double tol) {
  const auto fv = vlift_scalar(f), fc = clift_scalar(f);
  const auto gv = vlift_scalar(g), gc = clift_scalar(g);
  const auto av = vlift_vector(a), ac = clift_vector(a);
  const auto bv = vlift_vector(b), bc = clift_vector(b);
  const auto ab = lie_bracket(a, b);

  using Pair = std::pair<ScalarField, ScalarField>;
  using VPair = std::pair<VectorField, VectorField>;
  struct Scalar { const char* name; Pair sides; };
  struct Vector { const char* name; VPair sides; };
  const std::vector<Scalar> scalars = {
      {"(fg)^v = f^v g^v", {vlift_scalar(f * g), fv * gv}},
      {"(fg)^c = f^v g^c + f^c g^v", {clift_scalar(f * g), fv * gc + fc * gv}},
      {"(Af)^c = A^c f^c", {clift_scalar(apply(a, f)), apply(ac, fc)}},
      {"(Af)^v = A^c f^v", {vlift_scalar(apply(a, f)), apply(ac, fv)}},
      {"(Af)^v = A^v f^c", {vlift_scalar(apply(a, f)), apply(av, fc)}},
      {"A^v f^v = 0", {apply(av, fv), ScalarField::constant(2, f.n(), 0.0)}},
  };
  const std::vector<Vector> vectors = {
      {"[A^c,B^c] = [A,B]^c", {lie_bracket(ac, bc), clift_vector(ab)}},
      {"[A^c,B^v] = [A,B]^v", {lie_bracket(ac, bv), vlift_vector(ab)}},
      {"[A^v,B^v] = 0", {lie_bracket(av, bv), VectorField::zero(2, a.n())}},
      {"(fA)^c = f^c A^v + f^v A^c", {clift_vector(f * a), fc * av + fv * ac}},
      {"(fA)^v = f^v A^v", {vlift_vector(f * a), fv * av}},
  };
  std::vector<IdentityResult> out;
  for (const auto& s : scalars) {
    double r = 0.0;
    for (const auto& p : samples) r = std::max(r, relative_gap(s.sides.first(p), s.sides.second(p)));
    out.push_back({s.name, r, tol, r < tol});
  }
  for (const auto& v : vectors) {
    double r = 0.0;
    for (const auto& p : samples) r = std::max(r, gap(v.sides.first(p), v.sides.second(p)));
    out.push_back({v.name, r, tol, r < tol});
  }
  return out;
}

}  // namespace liftlab

#include "liftlab/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "liftlab/error.hpp"
#include "liftlab/sampling.hpp"

namespace liftlab {

namespace {

std::vector<Hyper> promote_all(std::span<const Hyper> v, int k) {
  std::vector<Hyper> out;
  out.reserve(v.size());
  for (const auto& h : v) out.push_back(h.promoted(k));
  return out;
}

std::vector<Hyper> unit(std::size_t dim, std::size_t i) {
  std::vector<Hyper> e(dim, Hyper(0.0));
  e[i] = Hyper(1.0);
  return e;
}

std::vector<Hyper> eval_entries(const MetricModel& g, std::span<const Hyper> q) {
  std::vector<Hyper> out;
  out.reserve(g.entries.size());
  for (const auto& e : g.entries) out.push_back(e(q));
  return out;
}

// Entries of g and their derivatives dg_ab/dq_c, evaluated at q.
struct MetricJet {
  std::vector<Hyper> g;
  std::vector<std::vector<Hyper>> dg;  // dg[c][a * m + b]
};

MetricJet metric_jet(const MetricModel& model, std::span<const Hyper> q) {
  MetricJet j;
  j.g = eval_entries(model, q);
  const int k = max_order(q);
  const auto base = promote_all(q, k);
  for (std::size_t c = 0; c < q.size(); ++c) {
    auto d = eval_entries(model, perturb(base, unit(q.size(), c)));
    for (auto& h : d) h = h.tangent(k);
    j.dg.push_back(std::move(d));
  }
  return j;
}

// Gamma_{l b c} = 1/2 (d_b g_lc + d_c g_lb - d_l g_bc).
Hyper christoffel_first(const MetricJet& j, std::size_t m, std::size_t l, std::size_t b,
                        std::size_t c) {
  return Hyper(0.5) * (j.dg[b][l * m + c] + j.dg[c][l * m + b] - j.dg[l][b * m + c]);
}

}  // namespace

bool solve_dense(std::vector<Hyper>& a, std::vector<Hyper>& b, std::size_t m, double* min_pivot) {
  double smallest = std::numeric_limits<double>::infinity();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::abs(a[r * m + col].value()) > std::abs(a[piv * m + col].value())) piv = r;
    }
    const double pv = std::abs(a[piv * m + col].value());
    smallest = std::min(smallest, pv);
    if (min_pivot) *min_pivot = smallest;
    if (pv < kSingularPivot) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < m; ++c) std::swap(a[col * m + c], a[piv * m + c]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < m; ++r) {
      const Hyper f = a[r * m + col] / a[col * m + col];
      for (std::size_t c = col; c < m; ++c) a[r * m + c] -= f * a[col * m + c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t r = m; r-- > 0;) {
    Hyper acc = b[r];
    for (std::size_t c = r + 1; c < m; ++c) acc -= a[r * m + c] * b[c];
    b[r] = acc / a[r * m + r];
  }
  return true;
}

void MetricModel::validate(std::size_t samples, std::uint64_t seed) const {
  const std::size_t mm = m();
  if (entries.size() != mm * mm) throw InputError("MetricModel: expected m*m entries");
  for (const auto& e : entries) {
    if (e.level() != level || e.n() != n) throw LevelMismatch("MetricModel: entry level mismatch");
  }
  for (const auto& p : sample_points(level, n, samples, seed)) {
    std::vector<Hyper> a, b(mm, Hyper(0.0));
    for (const auto& e : entries) a.push_back(Hyper(e(p)));
    for (std::size_t i = 0; i < mm; ++i) {
      for (std::size_t j = i + 1; j < mm; ++j) {
        if (relative_gap(a[i * mm + j].value(), a[j * mm + i].value()) > 1e-12) {
          throw InputError("MetricModel: metric is not symmetric");
        }
      }
    }
    if (!solve_dense(a, b, mm)) throw SingularMetric("MetricModel: singular at a sample point");
  }
}

LagrangianModel::LagrangianModel(int n_, int level_, ScalarField l)
    : n(n_), level(level_), lagrangian(std::move(l)) {
  if (level != 1 && level != 2) throw LevelError("LagrangianModel: level must be 1 or 2");
  if (lagrangian.level() != level || lagrangian.n() != n) {
    throw LevelMismatch("LagrangianModel: L lives on a different bundle");
  }
  certificate = certify_regularity(lagrangian);
}

namespace {

// 1/2 d^2 L / dv_i dv_j as a dense m x m matrix of Hypers.
std::vector<Hyper> fibre_hessian(const ScalarField& l, std::span<const Hyper> xi) {
  const std::size_t dim = xi.size();
  const std::size_t m = dim / 2;
  const int k = max_order(xi);
  const auto base = promote_all(xi, k);
  std::vector<Hyper> h(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto p1 = perturb(base, unit(dim, m + i));
    for (std::size_t j = i; j < m; ++j) {
      const Hyper r = l(perturb(p1, unit(dim, m + j)));
      h[i * m + j] = h[j * m + i] = Hyper(0.5) * r.tangent(k + 1).tangent(k);
    }
  }
  return h;
}

}  // namespace

RegularityCertificate certify_regularity(const ScalarField& l, std::size_t samples,
                                         std::uint64_t seed) {
  RegularityCertificate cert;
  cert.samples = samples;
  cert.min_abs_pivot = std::numeric_limits<double>::infinity();
  cert.full_rank = true;
  for (const auto& p : sample_points(l.level(), l.n(), samples, seed)) {
    const auto xi = constants(p.coords());
    auto h = fibre_hessian(l, xi);
    const std::size_t m = xi.size() / 2;
    std::vector<Hyper> rhs(m, Hyper(0.0));
    double pivot = 0.0;
    if (!solve_dense(h, rhs, m, &pivot)) cert.full_rank = false;
    cert.min_abs_pivot = std::min(cert.min_abs_pivot, pivot);
  }
  return cert;
}

Semispray metric_to_spray(const MetricModel& g) {
  const std::size_t m = g.m();
  if (g.entries.size() != m * m) throw InputError("metric_to_spray: expected m*m entries");
  return Semispray(
      g.level + 1, g.n,
      [g, m](std::span<const Hyper> xi) {
        const std::span<const Hyper> q = xi.subspan(0, m);
        const std::span<const Hyper> v = xi.subspan(m, m);
        const MetricJet j = metric_jet(g, q);
        std::vector<Hyper> rhs(m, Hyper(0.0));
        for (std::size_t l = 0; l < m; ++l) {
          for (std::size_t b = 0; b < m; ++b) {
            for (std::size_t c = 0; c < m; ++c) {
              rhs[l] += christoffel_first(j, m, l, b, c) * v[b] * v[c];
            }
          }
        }
        auto a = j.g;
        if (!solve_dense(a, rhs, m)) throw SingularMetric("metric_to_spray: singular metric");
        for (auto& r : rhs) r = Hyper(0.5) * r;
        return rhs;
      },
      true, true);
}

MetricModel metric_complete_lift(const MetricModel& g) {
  if (g.level != 0) throw LevelError("metric_complete_lift: expects a metric on M");
  const std::size_t n = static_cast<std::size_t>(g.n);
  MetricModel out;
  out.n = g.n;
  out.level = 1;
  const ScalarField zero = ScalarField::constant(1, g.n, 0.0);
  for (std::size_t a = 0; a < 2 * n; ++a) {
    for (std::size_t b = 0; b < 2 * n; ++b) {
      const ScalarField& gij = g(a % n, b % n);
      const bool upper = a < n, left = b < n;
      if (upper && left) {
        out.entries.push_back(clift_scalar(gij));
      } else if (upper != left) {
        out.entries.push_back(vlift_scalar(gij));
      } else {
        out.entries.push_back(zero);
      }
    }
  }
  return out;
}

AffineConnectionModel levi_civita(const MetricModel& g) {
  if (g.level != 0) throw LevelError("levi_civita: expects a metric on M");
  const std::size_t n = static_cast<std::size_t>(g.n);
  AffineConnectionModel out;
  out.n = g.n;
  out.symmetric = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        out.gamma.emplace_back(0, g.n, [g, n, i, j, k](std::span<const Hyper> q) {
          const MetricJet jet = metric_jet(g, q);
          std::vector<Hyper> rhs(n);
          for (std::size_t l = 0; l < n; ++l) rhs[l] = christoffel_first(jet, n, l, j, k);
          auto a = jet.g;
          if (!solve_dense(a, rhs, n)) throw SingularMetric("levi_civita: singular metric");
          return rhs[i];
        });
      }
    }
  }
  return out;
}

Semispray lagrangian_to_semispray(const LagrangianModel& model) {
  if (!model.certificate.full_rank) {
    throw DegenerateLagrangian("lagrangian_to_semispray: fibre Hessian is singular at a sample point");
  }
  const ScalarField l = model.lagrangian;
  return Semispray(
      model.level, model.n,
      [l](std::span<const Hyper> xi) {
        const std::size_t dim = xi.size();
        const std::size_t m = dim / 2;
        const int k = max_order(xi);
        const auto base = promote_all(xi, k);
        // rhs_i = dL/dq_i - sum_j d^2L/dv_i dq_j v_j
        std::vector<Hyper> rhs(m);
        for (std::size_t i = 0; i < m; ++i) rhs[i] = l(perturb(base, unit(dim, i))).tangent(k);
        std::vector<Hyper> along_v(dim, Hyper(0.0));
        for (std::size_t j = 0; j < m; ++j) along_v[j] = base[m + j];
        const auto pv = perturb(base, along_v);
        for (std::size_t i = 0; i < m; ++i) {
          const Hyper r = l(perturb(pv, unit(dim, m + i)));
          rhs[i] -= r.tangent(k + 1).tangent(k);
        }
        auto h = fibre_hessian(l, base);
        for (auto& e : h) e = Hyper(2.0) * e;  // full Hessian d^2L/dv dv
        if (!solve_dense(h, rhs, m)) {
          throw DegenerateLagrangian("lagrangian_to_semispray: fibre Hessian is rank deficient");
        }
        for (auto& r : rhs) r = Hyper(-0.5) * r;
        return rhs;
      },
      model.lagrangian.smooth_at_zero());
}

LagrangianModel lagrangian_complete_lift(const LagrangianModel& l) {
  if (l.level != 1) throw LevelError("lagrangian_complete_lift: expects L on TM");
  return LagrangianModel(l.n, 2, clift_scalar(l.lagrangian));
}

LagrangianModel metric_lagrangian(const MetricModel& g) {
  const std::size_t m = g.m();
  ScalarField l(g.level + 1, g.n, [g, m](std::span<const Hyper> xi) {
    const auto q = xi.subspan(0, m);
    const auto v = xi.subspan(m, m);
    const auto e = eval_entries(g, q);
    Hyper acc(0.0);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) acc += e[a * m + b] * v[a] * v[b];
    }
    return acc;
  });
  return LagrangianModel(g.n, g.level + 1, std::move(l));
}

Semispray connection_to_spray(const AffineConnectionModel& gamma) {
  const std::size_t n = static_cast<std::size_t>(gamma.n);
  if (gamma.gamma.size() != n * n * n) throw InputError("connection_to_spray: expected n^3 symbols");
  return Semispray(
      1, gamma.n,
      [gamma, n](std::span<const Hyper> xi) {
        const auto x = xi.subspan(0, n);
        const auto y = xi.subspan(n, n);
        std::vector<Hyper> out(n, Hyper(0.0));
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) out[i] += gamma(i, j, k)(x) * y[j] * y[k];
          }
          out[i] = Hyper(0.5) * out[i];
        }
        return out;
      },
      true, true);
}

Semispray connection_complete_lift_spray(const AffineConnectionModel& gamma) {
  return complete_lift(connection_to_spray(gamma));
}

}  // namespace liftlab

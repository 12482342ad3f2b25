#include "liftlab/catalog.hpp"

#include "liftlab/error.hpp"
#include "liftlab/expr.hpp"

namespace liftlab {

ScalarField expr_field(int level, int n, const std::string& source, ParseOptions opts) {
  return ScalarField::from_expr(level, n, parse(source, coordinate_names(level, n), opts));
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"euclidean", "oscillator", "funk-like",
                                                 "diag-metric", "log-affine"};
  return names;
}

namespace {

MetricModel diagonal_metric(int n, const std::vector<std::string>& diag) {
  MetricModel g;
  g.n = n;
  g.level = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g.entries.push_back(i == j ? expr_field(0, n, diag[i]) : ScalarField::constant(0, n, 0.0));
    }
  }
  return g;
}

AffineConnectionModel constant_connection(int n, const std::vector<double>& gamma) {
  AffineConnectionModel c;
  c.n = n;
  for (double v : gamma) c.gamma.push_back(ScalarField::constant(0, n, v));
  return c;
}

}  // namespace

CatalogModel catalog_model(const std::string& name) {
  if (name == "euclidean") {
    auto g = diagonal_metric(2, {"1", "1"});
    auto l = metric_lagrangian(g);
    return {name, 2, Semispray(1, 2, [](std::span<const Hyper>) {
                       return std::vector<Hyper>(2, Hyper(0.0));
                     }, true, true),
            g, l, constant_connection(2, std::vector<double>(8, 0.0))};
  }
  if (name == "oscillator") {
    LagrangianModel l(1, 1, expr_field(1, 1, "y1^2 - x1^2"));
    return {name, 1, Semispray::from_fields({expr_field(1, 1, "x1/2")}), std::nullopt, l,
            std::nullopt};
  }
  if (name == "funk-like") {
    const char* norm = "sqrt(y1^2 + y2^2)";
    std::vector<ScalarField> g;
    for (const char* y : {"y1", "y2"}) g.push_back(expr_field(1, 2, std::string(norm) + "*" + y));
    Semispray s(
        1, 2,
        [g](std::span<const Hyper> xi) { return std::vector<Hyper>{g[0](xi), g[1](xi)}; },
        false, true);
    return {name, 2, s, std::nullopt, std::nullopt, std::nullopt};
  }
  if (name == "diag-metric") {
    auto g = diagonal_metric(2, {"1", "x1^2 + 1"});
    return {name, 2, metric_to_spray(g), g, metric_lagrangian(g), levi_civita(g)};
  }
  if (name == "log-affine") {
    auto c = constant_connection(1, {1.0});
    return {name, 1, connection_to_spray(c), std::nullopt, std::nullopt, c};
  }
  throw InputError("unknown catalog model '" + name + "'");
}

}  // namespace liftlab

#pragma once

// Built-in models:
//   euclidean   n = 2, G = 0 (metric delta, L = |y|^2, zero connection)
//   oscillator  n = 1, L = y^2 - x^2, G = x/2
//   funk-like   n = 2, G^i = |y| y^i (a spray, smooth only off the zero section)
//   diag-metric n = 2, g = diag(1, x1^2 + 1)
//   log-affine  n = 1, gamma^1_11 = 1, G = y^2/2

#include <optional>
#include <string>
#include <vector>

#include "liftlab/models.hpp"
#include "liftlab/semispray.hpp"

namespace liftlab {

struct CatalogModel {
  std::string name;
  int n = 1;
  Semispray spray;
  std::optional<MetricModel> metric;
  std::optional<LagrangianModel> lagrangian;
  std::optional<AffineConnectionModel> connection;
};

const std::vector<std::string>& catalog_names();

/// Throws InputError for an unknown name.
CatalogModel catalog_model(const std::string& name);

/// Field from an expression over coordinate_names(level, n).
ScalarField expr_field(int level, int n, const std::string& source, ParseOptions opts = {});

}  // namespace liftlab

#include "liftlab/config.hpp"

#include <fstream>
#include <sstream>

#include <toml.hpp>

#include "liftlab/expr.hpp"

namespace liftlab {

namespace {

std::string join_key(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const Json& empty_object() {
  static const Json e = Json::object();
  return e;
}


}  // namespace

const Json& RunConfig::section(const std::string& name) const {
  auto it = raw.find(name);
  return it == raw.end() ? empty_object() : *it;
}

Json load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open configuration file");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const bool is_toml = path.size() >= 5 && path.compare(path.size() - 5, 5, ".toml") == 0;
  const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  if (is_toml) {
    try {
      const toml::table tbl = toml::parse(text, path);
      std::stringstream js;
      js << toml::json_formatter{tbl};
      return Json::parse(js.str());
    } catch (const toml::parse_error& e) {
      const auto& where = e.source().begin;
      throw ConfigError("", "TOML syntax error at line " + std::to_string(where.line) +
                                  ", column " + std::to_string(where.column) + ": " +
                                  std::string(e.description()));
    }
  }
  if (is_json) {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ConfigError("", std::string("JSON syntax error: ") + e.what());
    }
  }
  throw ConfigError("", "unknown configuration format (expected .toml or .json)");
}

double get_double(const Json& obj, const std::string& key, const std::string& path,
                  std::optional<double> fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (fallback) return *fallback;
    throw ConfigError(join_key(path, key), "missing required number");
  }
  if (!it->is_number()) throw ConfigError(join_key(path, key), "expected a number");
  return it->get<double>();
}

std::vector<double> get_vector(const Json& obj, const std::string& key, const std::string& path,
                               std::optional<std::size_t> length) {
  auto it = obj.find(key);
  const std::string where = join_key(path, key);
  if (it == obj.end()) throw ConfigError(where, "missing required array");
  if (!it->is_array()) throw ConfigError(where, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : *it) {
    if (!v.is_number()) throw ConfigError(where, "expected an array of numbers");
    out.push_back(v.get<double>());
  }
  if (length && out.size() != *length) {
    throw ConfigError(where, "expected " + std::to_string(*length) + " entries, got " +
                                 std::to_string(out.size()));
  }
  return out;
}

std::string get_string(const Json& obj, const std::string& key, const std::string& path,
                       std::optional<std::string> fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (fallback) return *fallback;
    throw ConfigError(join_key(path, key), "missing required string");
  }
  if (!it->is_string()) throw ConfigError(join_key(path, key), "expected a string");
  return it->get<std::string>();
}

ScalarField get_field(const Json& value, int level, int n, const std::string& path,
                      ParseOptions opts) {
  if (value.is_number()) return ScalarField::constant(level, n, value.get<double>());
  if (!value.is_string()) throw ConfigError(path, "expected an expression string or a number");
  try {
    return ScalarField::from_expr(level, n,
                                  parse(value.get<std::string>(), coordinate_names(level, n), opts));
  } catch (const ParseError& e) {
    throw ConfigError(path, e.what());
  } catch (const UnknownVariable& e) {
    throw ConfigError(path, e.what());
  } catch (const UnknownFunction& e) {
    throw ConfigError(path, e.what());
  }
}

namespace {

std::vector<ScalarField> field_list(const Json& sec, const std::string& key, const std::string& path,
                                    std::size_t count, int level, int n, ParseOptions opts) {
  auto it = sec.find(key);
  const std::string where = join_key(path, key);
  if (it == sec.end()) throw ConfigError(where, "missing required expression list");
  if (!it->is_array() || it->size() != count) {
    throw ConfigError(where, "expected a list of " + std::to_string(count) + " expressions");
  }
  std::vector<ScalarField> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(get_field((*it)[i], level, n, where + "[" + std::to_string(i) + "]", opts));
  }
  return out;
}

}  // namespace

CatalogModel build_model(const Json& sec, const std::string& key) {
  if (!sec.is_object()) throw ConfigError(key, "expected a table");
  const std::string kind = get_string(sec, "kind", key);
  if (kind == "catalog") {
    const std::string name = get_string(sec, "name", key);
    try {
      return catalog_model(name);
    } catch (const InputError& e) {
      throw ConfigError(key + ".name", e.what());
    }
  }
  const double nd = get_double(sec, "n", key);
  if (nd < 1 || nd > 8 || nd != static_cast<int>(nd)) {
    throw ConfigError(key + ".n", "expected an integer between 1 and 8");
  }
  const int n = static_cast<int>(nd);
  const std::size_t un = static_cast<std::size_t>(n);
  ParseOptions opts;
  opts.abs_delta = get_double(sec, "abs_delta", key, 0.0);
  const std::string name = get_string(sec, "name", key, kind);

  if (kind == "semispray") {
    const bool smooth = sec.value("smooth_at_zero", true);
    if (sec.contains("H")) {
      auto g = field_list(sec, "G", key, un, 2, n, opts);
      auto h = field_list(sec, "H", key, un, 2, n, opts);
      Semispray s = Semispray::from_fields(std::move(g), std::move(h));
      return {name, n, Semispray(2, n, s.coefficient_fn(), smooth), std::nullopt, std::nullopt,
              std::nullopt};
    }
    auto g = field_list(sec, "G", key, un, 1, n, opts);
    Semispray s = Semispray::from_fields(std::move(g));
    return {name, n, Semispray(1, n, s.coefficient_fn(), smooth), std::nullopt, std::nullopt,
            std::nullopt};
  }
  if (kind == "metric") {
    auto it = sec.find("g");
    if (it == sec.end() || !it->is_array() || it->size() != un) {
      throw ConfigError(key + ".g", "expected " + std::to_string(n) + " rows of expressions");
    }
    MetricModel g;
    g.n = n;
    g.level = 0;
    for (std::size_t i = 0; i < un; ++i) {
      const auto& row = (*it)[i];
      const std::string rk = key + ".g[" + std::to_string(i) + "]";
      if (!row.is_array() || row.size() != un) {
        throw ConfigError(rk, "expected a row of " + std::to_string(n) + " expressions");
      }
      for (std::size_t j = 0; j < un; ++j) {
        g.entries.push_back(get_field(row[j], 0, n, rk + "[" + std::to_string(j) + "]", opts));
      }
    }
    g.validate();
    return {name, n, metric_to_spray(g), g, metric_lagrangian(g), levi_civita(g)};
  }
  if (kind == "lagrangian") {
    auto lit = sec.find("L");
    if (lit == sec.end()) throw ConfigError(key + ".L", "missing required expression");
    LagrangianModel l(n, 1, get_field(*lit, 1, n, key + ".L", opts));
    if (!l.certificate.full_rank) {
      throw DegenerateLagrangian(key + ".L: fibre Hessian is rank deficient (min pivot " +
                                 format_double(l.certificate.min_abs_pivot) + ")");
    }
    return {name, n, lagrangian_to_semispray(l), std::nullopt, l, std::nullopt};
  }
  if (kind == "connection") {
    AffineConnectionModel c;
    c.n = n;
    c.gamma = field_list(sec, "gamma", key, un * un * un, 0, n, opts);
    return {name, n, connection_to_spray(c), std::nullopt, std::nullopt, c};
  }
  throw ConfigError(key + ".kind",
                    "unknown model kind '" + kind +
                        "' (expected catalog, semispray, metric, lagrangian or connection)");
}

RunConfig read_config(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("<root>", "expected a table");
  RunConfig cfg;
  cfg.raw = doc;
  if (doc.contains("model")) cfg.model = build_model(doc["model"], "model");
  if (doc.contains("model2")) cfg.model2 = build_model(doc["model2"], "model2");

  const Json& in = cfg.section("integrator");
  IntegratorConfig& ic = cfg.integrator;
  ic.h = get_double(in, "h", "integrator", ic.h);
  if (in.contains("t_span")) {
    const auto span = get_vector(in, "t_span", "integrator", 2);
    ic.t0 = span[0];
    ic.t1 = span[1];
  }
  ic.eps_reg = get_double(in, "eps_reg", "integrator", ic.eps_reg);
  ic.blowup_bound = get_double(in, "blowup_bound", "integrator", ic.blowup_bound);
  const std::string method = get_string(in, "method", "integrator", "rk4");
  if (method == "rk4") {
    ic.method = Method::RK4;
  } else if (method == "rk4-half-step") {
    ic.method = Method::RK4HalfStep;
  } else {
    throw ConfigError("integrator.method", "expected rk4 or rk4-half-step");
  }
  if (in.contains("chart")) {
    const Json& ch = in["chart"];
    ChartSpec chart;
    chart.n = cfg.model ? cfg.model->n : 1;
    if (ch.contains("lower")) chart.lower = get_vector(ch, "lower", "integrator.chart", chart.n);
    if (ch.contains("upper")) chart.upper = get_vector(ch, "upper", "integrator.chart", chart.n);
    ic.chart = chart;
  }
  try {
    ic.validate();
  } catch (const InputError& e) {
    throw ConfigError("integrator", e.what());
  }

  const Json& var = cfg.section("variation");
  cfg.variation.s_offset = get_double(var, "s_offset", "variation", cfg.variation.s_offset);
  const std::string stencil = get_string(var, "stencil", "variation", "central-2");
  if (stencil == "central-2") {
    cfg.variation.stencil = Stencil::Central2;
  } else if (stencil == "central-4") {
    cfg.variation.stencil = Stencil::Central4;
  } else {
    throw ConfigError("variation.stencil", "expected central-2 or central-4");
  }
  if (!(cfg.variation.s_offset > 0)) throw ConfigError("variation.s_offset", "must be positive");

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer() || doc["seed"].get<long long>() < 0) {
      throw ConfigError("seed", "expected a non-negative integer");
    }
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  const Json& out = cfg.section("output");
  if (out.contains("path")) cfg.output.path = get_string(out, "path", "output");
  cfg.output.format = get_string(out, "format", "output", "csv");
  if (cfg.output.format != "csv" && cfg.output.format != "json") {
    throw ConfigError("output.format", "expected csv or json");
  }
  return cfg;
}

}  // namespace liftlab

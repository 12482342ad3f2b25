#include "liftlab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "liftlab/identities.hpp"
#include "liftlab/sampling.hpp"
#include "liftlab/suite.hpp"
#include "liftlab/symmetry.hpp"
#include "liftlab/version.hpp"

namespace liftlab {

namespace {

class CheckFailed : public std::exception {};

class IoError : public Error {
 public:
  using Error::Error;
};

Json status_json(const Trajectory& t) {
  return Json{{"kind", to_string(t.status)}, {"time", t.status_time}, {"samples", t.points.size()}};
}

Json point_json(std::span<const double> p) { return Json(std::vector<double>(p.begin(), p.end())); }

std::vector<std::vector<double>> point_list(const Json& sec, const std::string& key,
                                            const std::string& path) {
  auto it = sec.find(key);
  const std::string where = path + "." + key;
  if (it == sec.end()) throw ConfigError(where, "missing list of points");
  if (!it->is_array()) throw ConfigError(where, "expected a list of points");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const auto& p = (*it)[i];
    if (!p.is_array()) throw ConfigError(where + "[" + std::to_string(i) + "]", "expected an array");
    std::vector<double> c;
    for (const auto& v : p) {
      if (!v.is_number()) throw ConfigError(where + "[" + std::to_string(i) + "]", "expected numbers");
      c.push_back(v.get<double>());
    }
    out.push_back(std::move(c));
  }
  return out;
}

VectorField base_field(const Json& sec, int n, const std::string& path) {
  auto it = sec.find("A");
  if (it == sec.end() || !it->is_array() || it->size() != static_cast<std::size_t>(n)) {
    throw ConfigError(path + ".A", "expected " + std::to_string(n) + " component expressions over x1..x" +
                                       std::to_string(n));
  }
  std::vector<ScalarField> comps;
  for (std::size_t i = 0; i < it->size(); ++i) {
    comps.push_back(get_field((*it)[i], 0, n, path + ".A[" + std::to_string(i) + "]"));
  }
  return VectorField::from_components(std::move(comps));
}

const Semispray& level1_spray(const RunConfig& cfg, const char* command) {
  if (!cfg.model) throw ConfigError("model", "missing model section");
  if (cfg.model->spray.level() != 1) {
    throw ConfigError("model", std::string(command) + " needs a semispray on TM (level 1)");
  }
  return cfg.model->spray;
}

struct Context {
  std::string config_path;
  RunConfig cfg;
  std::ostream& out;
  std::ostream& err;
  std::optional<std::string> out_path;
  std::optional<std::string> format;

  OutputSpec output() const {
    OutputSpec s = cfg.output;
    if (out_path) s.path = *out_path;
    if (format) s.format = *format;
    return s;
  }
  std::size_t samples() const {
    return static_cast<std::size_t>(get_double(cfg.section("check"), "samples", "check", 64));
  }
  double tol(double fallback) const { return get_double(cfg.section("check"), "tol", "check", fallback); }
  void print(const Json& j) const { out << j.dump(2) << '\n'; }
};

int finish_trajectory(const Context& ctx, const Trajectory& traj, const std::vector<std::string>& names) {
  emit_trajectory(traj, names, ctx.output(), ctx.cfg.raw, ctx.out);
  if (!traj.completed() && !ctx.output().path) {
    ctx.err << "liftlab: trajectory ended with " << to_string(traj.status) << " at t = "
            << format_double(traj.status_time) << '\n';
  }
  return traj.status == Status::BlowUp ? kExitNumeric : kExitOk;
}

int cmd_geodesic(const Context& ctx) {
  const Semispray& s = level1_spray(ctx.cfg, "geodesic");
  const Json& init = ctx.cfg.section("initial");
  const auto x = get_vector(init, "x", "initial", s.n());
  const auto v = get_vector(init, "v", "initial", s.n());
  std::vector<double> c = x;
  c.insert(c.end(), v.begin(), v.end());
  const Trajectory traj = integrate(s, BundlePoint(1, s.n(), c), ctx.cfg.integrator);
  return finish_trajectory(ctx, traj, coordinate_names(1, s.n()));
}

int cmd_jacobi(const Context& ctx, const std::string& route) {
  const Semispray& s = level1_spray(ctx.cfg, "jacobi");
  const int n = s.n();
  const Json& init = ctx.cfg.section("initial");
  const auto x = get_vector(init, "x", "initial", n);
  const auto v = get_vector(init, "v", "initial", n);
  const auto j = get_vector(init, "J", "initial", n);
  const auto jd = get_vector(init, "Jdot", "initial", n);
  std::vector<double> c;
  for (const auto* part : {&x, &j, &v, &jd}) c.insert(c.end(), part->begin(), part->end());
  const BundlePoint xi(2, n, c);
  const auto names = coordinate_names(1, n);
  const IntegratorConfig& ic = ctx.cfg.integrator;
  if (route == "direct") return finish_trajectory(ctx, jacobi_direct(s, x, v, j, jd, ic), names);
  if (route == "lift") return finish_trajectory(ctx, jacobi_via_lift(s, xi, ic), names);
  if (route == "variation") {
    return finish_trajectory(ctx, variation_field(s, xi, ctx.cfg.variation, ic), names);
  }
  const Trajectory d = jacobi_direct(s, x, v, j, jd, ic);
  const Trajectory l = jacobi_via_lift(s, xi, ic);
  const double tol = ctx.tol(1e-7);
  const double diff = max_difference(d, l);
  const bool pass = d.status == l.status && d.points.size() == l.points.size() && diff <= tol;
  ctx.print(Json{{"route", "both"},
                 {"direct", status_json(d)},
                 {"lift", status_json(l)},
                 {"max_difference", diff},
                 {"tolerance", tol},
                 {"pass", pass}});
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_lift(const Context& ctx) {
  if (!ctx.cfg.model) throw ConfigError("model", "missing model section");
  const CatalogModel& m = ctx.cfg.primary();
  const int n = m.n;
  const auto pts = point_list(ctx.cfg.section("check"), "points", "check");
  Json results = Json::array();
  const std::optional<Semispray> sc =
      m.spray.level() == 1 ? std::optional<Semispray>(complete_lift(m.spray)) : std::nullopt;
  const std::optional<MetricModel> gc =
      m.metric ? std::optional<MetricModel>(metric_complete_lift(*m.metric)) : std::nullopt;
  const std::optional<LagrangianModel> lc =
      m.lagrangian ? std::optional<LagrangianModel>(lagrangian_complete_lift(*m.lagrangian))
                   : std::nullopt;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    Json row{{"point", p}};
    if (p.size() == bundle_size(2, n)) {
      const BundlePoint xi(2, n, p);
      if (sc) row["spray_coefficients"] = sc->coefficients(xi);
      if (lc) row["lagrangian"] = lc->lagrangian(xi);
    } else if (p.size() == bundle_size(1, n)) {
      if (!gc) throw ConfigError("check.points[" + std::to_string(i) + "]",
                                 "points on TM are only used for metric lifts");
      const BundlePoint q(1, n, p);
      std::vector<std::vector<double>> g(2 * n);
      for (std::size_t a = 0; a < gc->m(); ++a) {
        for (std::size_t b = 0; b < gc->m(); ++b) g[a].push_back((*gc)(a, b)(q));
      }
      row["metric"] = g;
    } else {
      throw ConfigError("check.points[" + std::to_string(i) + "]",
                        "expected " + std::to_string(2 * n) + " or " + std::to_string(4 * n) +
                            " coordinates");
    }
    results.push_back(std::move(row));
  }
  ctx.print(Json{{"model", m.name}, {"lifts", results}});
  return kExitOk;
}

Json report_json(const IdentityResult& r) {
  return Json{{"name", r.name}, {"residual", r.residual}, {"tolerance", r.tolerance}, {"pass", r.pass}};
}

double coefficient_gap(const Semispray& a, const Semispray& b, std::span<const BundlePoint> pts) {
  double g = 0.0;
  for (const auto& p : pts) {
    const auto ca = a.coefficients(p), cb = b.coefficients(p);
    for (std::size_t i = 0; i < ca.size(); ++i) g = std::max(g, relative_gap(ca[i], cb[i]));
  }
  return g;
}

int check_identities(const Context& ctx) {
  const Semispray& s = level1_spray(ctx.cfg, "check identities");
  const CatalogModel& m = ctx.cfg.primary();
  std::vector<IdentityResult> res = bundle_identities(m.n, 1000, ctx.cfg.seed);
  const Semispray sc = complete_lift(s);
  const SampleSpec spec{ctx.samples(), ctx.cfg.seed};
  res.push_back({"complete lift is a semispray", 0.0, 1e-12,
                 is_semispray(as_vector_field(sc), spec)});
  const auto pts = sample_points(2, m.n, spec.count, spec.seed);
  const double tol = ctx.tol(1e-9);
  if (m.metric) {
    const double g = coefficient_gap(sc, metric_to_spray(metric_complete_lift(*m.metric)), pts);
    res.push_back({"(S_g)^c = S_(g^c)", g, tol, g < tol});
  }
  if (m.lagrangian) {
    const double g = coefficient_gap(
        sc, lagrangian_to_semispray(lagrangian_complete_lift(*m.lagrangian)), pts);
    res.push_back({"(S_L)^c = S_(L^c)", g, tol, g < tol});
  }
  if (m.connection) {
    const auto r = is_spray(connection_complete_lift_spray(*m.connection), tol, spec);
    res.push_back({"(S_nabla)^c is a spray", std::max(r.bracket_residual, r.coefficient_residual),
                   tol, r.pass});
  }
  Json arr = Json::array();
  bool pass = true;
  for (const auto& r : res) {
    arr.push_back(report_json(r));
    pass = pass && r.pass;
  }
  ctx.print(Json{{"check", "identities"}, {"results", arr}, {"pass", pass}});
  return pass ? kExitOk : kExitCheckFailed;
}

Json homogeneity_json(const HomogeneityReport& r) {
  return Json{{"degree", r.degree},         {"euler_residual", r.euler_residual},
              {"scaling_residual", r.scaling_residual}, {"tolerance", r.tolerance},
              {"samples", r.samples},       {"pass", r.pass}};
}

int check_homogeneity(const Context& ctx) {
  const Json& sec = ctx.cfg.section("check");
  const double tol = ctx.tol(1e-9);
  if (sec.contains("function")) {
    const int level = static_cast<int>(get_double(sec, "level", "check", 1));
    if (level != 1 && level != 2) throw ConfigError("check.level", "expected 1 or 2");
    const int n = static_cast<int>(get_double(sec, "n", "check", ctx.cfg.model ? ctx.cfg.model->n : 1));
    const ScalarField f = get_field(sec["function"], level, n, "check.function");
    const double degree = get_double(sec, "degree", "check", 2);
    const auto r = check_homogeneous(f, degree, sample_points(level, n, ctx.samples(), ctx.cfg.seed), tol);
    ctx.print(Json{{"check", "homogeneity"}, {"report", homogeneity_json(r)}, {"pass", r.pass}});
    return r.pass ? kExitOk : kExitCheckFailed;
  }
  if (!ctx.cfg.model) throw ConfigError("check.function", "missing function (or model) to check");
  const Semispray& s = ctx.cfg.primary().spray;
  const auto pts = sample_points(s.level(), s.n(), ctx.samples(), ctx.cfg.seed);
  Json arr = Json::array();
  bool pass = true;
  for (std::size_t a = 0; a < s.m(); ++a) {
    const auto r = check_homogeneous(s.coefficient(a), 2.0, pts, tol);
    arr.push_back(homogeneity_json(r));
    pass = pass && r.pass;
  }
  ctx.print(Json{{"check", "homogeneity"}, {"coefficients", arr}, {"pass", pass}});
  return pass ? kExitOk : kExitCheckFailed;
}

Json spray_json(const SprayReport& r) {
  return Json{{"bracket_residual", r.bracket_residual},
              {"coefficient_residual", r.coefficient_residual},
              {"tolerance", r.tolerance},
              {"pass", r.pass}};
}

int check_spray(const Context& ctx) {
  if (!ctx.cfg.model) throw ConfigError("model", "missing model section");
  const Semispray& s = ctx.cfg.primary().spray;
  const SampleSpec spec{ctx.samples(), ctx.cfg.seed};
  const double tol = ctx.tol(1e-9);
  const auto base = is_spray(s, tol, spec);
  Json j{{"check", "spray"}, {"spray", spray_json(base)}};
  bool pass = base.pass;
  if (s.level() == 1) {
    const auto lifted = is_spray(complete_lift(s), tol, spec);
    j["complete_lift"] = spray_json(lifted);
    pass = pass && lifted.pass;
  }
  j["pass"] = pass;
  ctx.print(j);
  return pass ? kExitOk : kExitCheckFailed;
}

int check_projective(const Context& ctx) {
  if (!ctx.cfg.model || !ctx.cfg.model2) {
    throw ConfigError("model2", "projective check needs model and model2");
  }
  const Semispray& s1 = ctx.cfg.model->spray;
  const Semispray& s2 = ctx.cfg.model2->spray;
  if (s1.level() != s2.level() || s1.n() != s2.n()) {
    throw ConfigError("model2", "model and model2 live on different bundles");
  }
  const double tol = ctx.tol(1e-8);
  const SampleSpec spec{ctx.samples(), ctx.cfg.seed};
  const auto pf = projective_factor(s1, s2, tol, spec);
  Json j{{"check", "projective"}, {"related", pf.has_value()}};
  if (pf) {
    const Json& sec = ctx.cfg.section("check");
    std::vector<std::vector<double>> pts;
    if (sec.contains("points")) {
      pts = point_list(sec, "points", "check");
    } else {
      for (const auto& p : sample_points(s1.level(), s1.n(), 3, ctx.cfg.seed)) {
        pts.emplace_back(p.coords().begin(), p.coords().end());
      }
    }
    Json at = Json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].size() != bundle_size(s1.level(), s1.n())) {
        throw ConfigError("check.points[" + std::to_string(i) + "]", "wrong number of coordinates");
      }
      at.push_back(Json{{"point", pts[i]}, {"P", pf->p(pts[i])}});
    }
    j["P_at"] = at;
    j["residual"] = pf->residual;
    j["P_homogeneity"] = homogeneity_json(pf->homogeneity);
  }
  bool pass = true;
  if (s1.level() == 1) {
    const auto r = projective_rigidity_check(s1, s2, tol, spec);
    j["lifted_related"] = r.lifted_related;
    j["lifted_factor_max_abs"] = r.lifted_factor_max_abs;
    j["coefficients_equal"] = r.coefficients_equal;
    j["max_coefficient_gap"] = r.max_coefficient_gap;
    j["rigidity"] = r.pass;
    pass = r.pass;
  }
  j["pass"] = pass;
  ctx.print(j);
  return pass ? kExitOk : kExitCheckFailed;
}

Json symmetry_json(const SymmetryReport& r) {
  return Json{{"bracket_residual", r.bracket_residual}, {"tolerance", r.tolerance}, {"pass", r.pass}};
}

int check_symmetry(const Context& ctx) {
  const Semispray& s = level1_spray(ctx.cfg, "check symmetry");
  const VectorField a = base_field(ctx.cfg.section("check"), s.n(), "check");
  const double tol = ctx.tol(1e-9);
  const auto base = check_lie_symmetry(s, a, sample_points(1, s.n(), ctx.samples(), ctx.cfg.seed), tol);
  const auto [v, c] = lift_symmetry(s, a, sample_points(2, s.n(), ctx.samples(), ctx.cfg.seed), tol);
  const bool pass = base.pass && v.pass && c.pass;
  ctx.print(Json{{"check", "symmetry"},
                 {"symmetry", symmetry_json(base)},
                 {"lifted_vertical", symmetry_json(v)},
                 {"lifted_complete", symmetry_json(c)},
                 {"pass", pass}});
  return pass ? kExitOk : kExitCheckFailed;
}

Json conservation_json(const ConservationReport& r) {
  return Json{{"residual_pointwise", r.residual_pointwise},
              {"drift_along_flow", r.drift_along_flow},
              {"tol_pointwise", r.tol_pointwise},
              {"tol_drift", r.tol_drift},
              {"flow_status", to_string(r.flow_status)},
              {"pass", r.pass}};
}

int check_conserved(const Context& ctx) {
  const Semispray& s = level1_spray(ctx.cfg, "check conserved");
  const Json& sec = ctx.cfg.section("check");
  if (!sec.contains("function")) throw ConfigError("check.function", "missing function to check");
  const ScalarField f = get_field(sec["function"], 1, s.n(), "check.function");
  ConstantOptions opts;
  opts.tol = ctx.tol(1e-9);
  opts.drift_tol = get_double(sec, "drift_tol", "check", 1e-6);
  opts.flow = ctx.cfg.integrator;
  const auto base = check_constant(s, f, sample_points(1, s.n(), ctx.samples(), ctx.cfg.seed),
                                   std::nullopt, opts);
  const auto [v, c] = lift_constant(s, f, sample_points(2, s.n(), ctx.samples(), ctx.cfg.seed), opts);
  const bool pass = base.pass && v.pass && c.pass;
  ctx.print(Json{{"check", "conserved"},
                 {"constant", conservation_json(base)},
                 {"vertical_lift", conservation_json(v)},
                 {"complete_lift", conservation_json(c)},
                 {"pass", pass}});
  return pass ? kExitOk : kExitCheckFailed;
}

int check_flow(const Context& ctx) {
  const Json& sec = ctx.cfg.section("check");
  const int n = static_cast<int>(get_double(sec, "n", "check", ctx.cfg.model ? ctx.cfg.model->n : 1));
  const VectorField a = base_field(sec, n, "check");
  const BundlePoint xi(1, n, get_vector(sec, "point", "check", bundle_size(1, n)));
  std::vector<double> times = {0.1, 1.0};
  if (sec.contains("t")) times = get_vector(sec, "t", "check");
  const double tol = ctx.tol(1e-6);
  Json arr = Json::array();
  bool pass = true;
  for (double t : times) {
    const auto r = flow_pushforward_check(a, t, xi, ctx.cfg.integrator, tol);
    Json j{{"t", t},
           {"residual", r.residual},
           {"lifted_status", to_string(r.lifted_status)},
           {"lifted_status_time", r.lifted_status_time},
           {"base_status", to_string(r.base_status)},
           {"base_status_time", r.base_status_time},
           {"domains_consistent", r.domains_consistent},
           {"tolerance", r.tolerance},
           {"pass", r.pass}};
    if (r.lifted_end) j["lifted_end"] = point_json(r.lifted_end->coords());
    if (r.pushforward_end) j["pushforward_end"] = point_json(r.pushforward_end->coords());
    arr.push_back(std::move(j));
    pass = pass && r.pass;
  }
  ctx.print(Json{{"check", "flow"}, {"results", arr}, {"pass", pass}});
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_suite(std::ostream& out, const std::vector<int>& ids, bool json) {
  const auto results = run_suite(ids);
  bool pass = true;
  Json arr = Json::array();
  for (const auto& r : results) {
    pass = pass && r.pass;
    if (json) {
      arr.push_back(Json{{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
    } else {
      out << (r.pass ? "PASS" : "FAIL") << "  " << r.id << ". " << r.title << ": " << r.detail << '\n';
    }
  }
  if (json) out << Json{{"version", kVersion}, {"results", arr}, {"pass", pass}}.dump(2) << '\n';
  return pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

Json trajectory_json(const Trajectory& traj, const std::vector<std::string>& names,
                     const Json& config) {
  Json cols = Json::array({"t"});
  for (const auto& c : names) cols.push_back(c);
  Json samples = Json::array();
  for (std::size_t i = 0; i < traj.points.size(); ++i) {
    Json row = Json::array({traj.times[i]});
    for (double c : traj.points[i].coords()) row.push_back(c);
    samples.push_back(std::move(row));
  }
  Json j{{"version", kVersion}, {"config", config}, {"status", status_json(traj)}};
  if (traj.error_estimate) j["error_estimate"] = *traj.error_estimate;
  j["columns"] = cols;
  j["samples"] = samples;
  return j;
}

void emit_trajectory(const Trajectory& traj, const std::vector<std::string>& names,
                     const OutputSpec& spec, const Json& config, std::ostream& out) {
  auto write = [&](std::ostream& os) {
    if (spec.format == "json") {
      os << trajectory_json(traj, names, config).dump(2) << '\n';
    } else {
      write_csv(traj, os, names);
    }
  };
  if (!spec.path) {
    write(out);
    return;
  }
  std::ofstream file(*spec.path, std::ios::binary);
  if (!file) throw IoError("cannot write " + *spec.path);
  write(file);
  if (spec.format == "csv") {
    std::ofstream side(*spec.path + ".json", std::ios::binary);
    if (!side) throw IoError("cannot write " + *spec.path + ".json");
    Json j{{"version", kVersion}, {"config", config}, {"status", status_json(traj)}};
    if (traj.error_estimate) j["error_estimate"] = *traj.error_estimate;
    side << j.dump(2) << '\n';
  }
  if (!file || !out) throw IoError("write failed for " + *spec.path);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complete lifts of semisprays: geodesics, Jacobi fields and lifted invariants",
               "liftlab"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string config_path, route = "direct", check_kind;
  std::optional<std::string> out_path, format;
  std::vector<int> only;
  bool suite_json = false;

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "configuration file (.toml or .json)")->required();
    sub->add_option("-o,--output", out_path, "output file (default: standard output)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto* geo = app.add_subcommand("geodesic", "integrate the geodesic (phase curve) of the model");
  add_io(geo);
  auto* jac = app.add_subcommand("jacobi", "integrate a Jacobi field");
  add_io(jac);
  jac->add_option("--route", route, "direct, lift, both or variation")
      ->check(CLI::IsMember({"direct", "lift", "both", "variation"}));
  auto* lift = app.add_subcommand("lift", "print complete lifts at check.points");
  lift->add_option("config", config_path, "configuration file")->required();
  auto* check = app.add_subcommand("check", "run one numerical check");
  check->add_option("kind", check_kind, "identities, homogeneity, spray, projective, symmetry, conserved or flow")
      ->required()
      ->check(CLI::IsMember(
          {"identities", "homogeneity", "spray", "projective", "symmetry", "conserved", "flow"}));
  check->add_option("config", config_path, "configuration file")->required();
  auto* suite = app.add_subcommand("suite", "run the acceptance battery on the built-in catalog");
  suite->add_option("--only", only, "criterion ids to run");
  suite->add_flag("--json", suite_json, "print results as JSON");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  if (suite->parsed()) return cmd_suite(out, only, suite_json);

  const std::string where = "liftlab: " + config_path + ": ";
  try {
    Context ctx{config_path, load_config(config_path), out, err, out_path, format};
    if (geo->parsed()) return cmd_geodesic(ctx);
    if (jac->parsed()) return cmd_jacobi(ctx, route);
    if (lift->parsed()) return cmd_lift(ctx);
    if (check_kind == "identities") return check_identities(ctx);
    if (check_kind == "homogeneity") return check_homogeneity(ctx);
    if (check_kind == "spray") return check_spray(ctx);
    if (check_kind == "projective") return check_projective(ctx);
    if (check_kind == "symmetry") return check_symmetry(ctx);
    if (check_kind == "conserved") return check_conserved(ctx);
    return check_flow(ctx);
  } catch (const InputError& e) {
    err << where << e.what() << '\n';
    return kExitUsage;
  } catch (const LevelError& e) {
    err << where << e.what() << '\n';
    return kExitUsage;
  } catch (const LevelMismatch& e) {
    err << where << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << where << "offset " << e.offset() << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnknownVariable& e) {
    err << where << "offset " << e.offset() << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnknownFunction& e) {
    err << where << "offset " << e.offset() << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << where << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << where << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace liftlab

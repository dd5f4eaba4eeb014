#include "toricvol/runner.hpp"

#include "toricvol/catalog.hpp"
#include "toricvol/ckem.hpp"
#include "toricvol/sasaki.hpp"
#include "toricvol/soliton.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

namespace toricvol {

namespace {

using nlohmann::json;

json vec_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json soliton_report(const Polytope& p, double tol) {
  SolitonField field = solve_soliton_field(p, tol);
  json out;
  out["c"] = vec_to_json(field.c);
  out["W"] = field.potential_value;
  out["gradient_norm"] = field.gradient_norm;
  out["iterations"] = field.iterations;
  out["hessian_condition"] = field.hessian_condition;
  Eigen::VectorXd fut(p.dim);
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(p.dim);
  for (int i = 0; i < p.dim; ++i)
    fut[i] = toric_futaki(p, zero, Eigen::VectorXd::Unit(p.dim, i));
  out["futaki_at_zero"] = vec_to_json(fut);
  return out;
}

json critical_report(const Polytope& p, int starts, std::uint64_t seed) {
  CriticalPointReport report = find_critical_points(p, starts, seed);
  json out;
  out["points"] = json::array();
  for (const auto& cp : report.points) {
    json pj;
    pj["representative"] = vec_to_json(cp.representative);
    pj["value"] = cp.value;
    pj["gradient_norm"] = cp.gradient_norm;
    pj["hessian_signature"] = to_string(cp.signature);
    pj["basin_count"] = cp.basin_count;
    out["points"].push_back(pj);
  }
  out["starts_used"] = report.starts_used;
  out["duplicates_merged"] = report.duplicates_merged;
  out["non_converged"] = report.non_converged;
  out["seed"] = report.seed;
  return out;
}

json ode_report(const OdeSolution& sol) {
  json out;
  out["m"] = sol.m;
  out["c"] = sol.c;
  out["a"] = sol.a;
  out["d"] = sol.d;
  out["coefficients"] = {{"quadratic", sol.coef_quadratic},
                         {"constant", sol.coef_constant},
                         {"c1", sol.coef_c1},
                         {"c2", sol.coef_c2}};
  out["bc_residual"] = sol.bc_residual;
  out["ode_residual"] = sol.ode_residual;
  out["min_psi"] = sol.min_psi;
  return out;
}

json sasaki_report(const MomentCone& c, double tol) {
  ReebVolumeResult res = minimize_reeb_volume(c, tol);
  json out;
  out["xi_star"] = vec_to_json(res.xi_star.xi);
  out["slice_residual"] = res.xi_star.slice_residual;
  out["volume"] = res.volume;
  out["gradient_norm"] = res.gradient_norm;
  out["hessian_min_eigenvalue"] = res.hessian_min_eigenvalue;
  out["iterations"] = res.iterations;
  // diagnostics: obstruction values at the slice center (fan-ray average)
  const int m = c.charge_dim();
  Eigen::VectorXd center = Eigen::VectorXd::Zero(c.ambient_dim);
  for (const auto& v : c.fan_rays) center += to_double(v);
  center *= (m + 1.0) / center[0];
  out["slice_center"] = vec_to_json(center);
  json fut = json::array();
  for (int i = 1; i <= m; ++i)
    fut.push_back(sasaki_futaki(c, center, Eigen::VectorXd::Unit(c.ambient_dim, i)));
  out["futaki_at_center"] = fut;
  return out;
}

json validate_report(const Geometry& g) {
  json out;
  if (std::holds_alternative<Polytope>(g)) {
    const Polytope& p = std::get<Polytope>(g);
    out["kind"] = "polytope";
    out["geometry"] = to_json(p);
    DelzantReport del = validate_delzant(p);
    json dj;
    dj["delzant"] = del.delzant;
    dj["offending_vertices"] = del.offending_vertices;
    dj["per_vertex"] = json::array();
    for (const auto& check : del.per_vertex) {
      json cj;
      cj["vertex"] = check.vertex;
      cj["saturating_facets"] = check.saturating_facets;
      cj["simple"] = check.simple;
      cj["normal_det_abs"] = check.normal_det_abs.convert_to<std::int64_t>();
      cj["ok"] = check.ok;
      dj["per_vertex"].push_back(cj);
    }
    out["delzant"] = dj;
    out["reflexive"] = validate_reflexive(p);
    out["volume"] = to_string(volume(p));
    out["boundary_measure"] = to_string(boundary_measure(p));
  } else {
    const MomentCone& c = std::get<MomentCone>(g);
    out["kind"] = "cone";
    out["geometry"] = to_json(c);
    out["gorenstein"] = true;  // enforced at construction
    BigInt det_sum = 0;
    for (const auto& sub : c.decomposition) det_sum += sub.det_abs;
    out["decomposition_det_sum"] = det_sum.convert_to<std::int64_t>();
  }
  return out;
}

std::string eh_landscape_csv(const Polytope& p, int grid) {
  if (p.dim != 2)
    throw std::domain_error("eh-landscape needs a 2-D polytope (sphere parametrization)");
  if (grid < 2) throw std::invalid_argument("--grid must be at least 2");
  std::ostringstream os;
  os.precision(17);
  os << "theta,phi,eh\n";
  for (int i = 0; i < grid; ++i) {
    const double theta = M_PI * (i + 0.5) / grid;
    for (int j = 0; j < grid; ++j) {
      const double phi = 2.0 * M_PI * j / grid;
      Eigen::VectorXd K(2);
      K << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi);
      const double a = std::cos(theta);
      if (!eh_admissible(p, K, a)) continue;
      os << theta << "," << phi << "," << eh_value(p, K, a) << "\n";
    }
  }
  return os.str();
}

}  // namespace

Polytope resolve_polytope(const std::string& name_or_path, std::optional<double> param) {
  if (name_or_path.empty()) throw std::invalid_argument("missing --polytope");
  if (std::filesystem::exists(name_or_path)) {
    Geometry g = parse_geometry(name_or_path);
    if (!std::holds_alternative<Polytope>(g))
      throw std::invalid_argument(name_or_path + " holds a cone, not a polytope");
    return std::get<Polytope>(g);
  }
  auto need_param = [&]() {
    if (!param) throw std::invalid_argument("catalog family '" + name_or_path + "' needs --param");
    return rational_from_double(*param, 10000);
  };
  if (name_or_path == "cp2") return catalog::cp2();
  if (name_or_path == "cp2_anticanonical") return catalog::cp2_anticanonical();
  if (name_or_path == "square") return catalog::square();
  if (name_or_path == "product") return catalog::product(need_param());
  if (name_or_path == "blowup") return catalog::blowup(need_param());
  if (name_or_path == "blowup_anticanonical") return catalog::blowup_anticanonical();
  if (name_or_path == "cube3") return catalog::cube3();
  throw std::invalid_argument("no such file or catalog polytope: " + name_or_path);
}

MomentCone resolve_cone(const std::string& name_or_path) {
  if (name_or_path.empty()) throw std::invalid_argument("missing --cone");
  if (std::filesystem::exists(name_or_path)) {
    Geometry g = parse_geometry(name_or_path);
    if (!std::holds_alternative<MomentCone>(g))
      throw std::invalid_argument(name_or_path + " holds a polytope, not a cone");
    return std::get<MomentCone>(g);
  }
  if (name_or_path == "c3") return catalog::c3();
  if (name_or_path == "conifold") return catalog::conifold();
  throw std::invalid_argument("no such file or catalog cone: " + name_or_path);
}

RunOutcome run(const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  RunOutcome outcome;
  json report;
  report["command"] = opts.command;
  report["version"] = kToolVersion;

  try {
    if (opts.command == "eh-landscape") {
      Polytope p = resolve_polytope(opts.polytope, opts.param);
      outcome.body = eh_landscape_csv(p, opts.grid);
      return outcome;
    }

    json output;
    if (opts.command == "validate") {
      Geometry g = !opts.cone.empty() ? Geometry(resolve_cone(opts.cone))
                                      : Geometry(resolve_polytope(opts.polytope, opts.param));
      report["input_digest"] = geometry_digest(g);
      output = validate_report(g);
    } else if (opts.command == "soliton") {
      Polytope p = resolve_polytope(opts.polytope, opts.param);
      report["input_digest"] = geometry_digest(Geometry(p));
      output = soliton_report(p, opts.tol);
    } else if (opts.command == "ckem-critical") {
      Polytope p = resolve_polytope(opts.polytope, opts.param);
      report["input_digest"] = geometry_digest(Geometry(p));
      report["seed"] = opts.seed;
      output = critical_report(p, opts.starts, opts.seed);
    } else if (opts.command == "ckem-ode") {
      auto sol = solve_product_ode(opts.ode_m, opts.ode_c, std::min(opts.tol, 1e-11));
      if (!sol) {
        report["error"] = "no admissible root found within the search budget";
        report["m"] = opts.ode_m;
        report["c"] = opts.ode_c;
        outcome.exit_code = kExitNonConvergence;
        outcome.body = report.dump(2) + "\n";
        return outcome;
      }
      output = ode_report(*sol);
    } else if (opts.command == "sasaki-reeb") {
      MomentCone c = resolve_cone(opts.cone);
      report["input_digest"] = geometry_digest(Geometry(c));
      output = sasaki_report(c, opts.tol);
    } else {
      throw std::invalid_argument("unknown command: " + opts.command);
    }
    report["output"] = output;
  } catch (const std::domain_error& e) {
    report["error"] = e.what();
    outcome.exit_code = kExitGeometry;
    outcome.body = report.dump(2) + "\n";
    return outcome;
  } catch (const std::invalid_argument& e) {
    report["error"] = e.what();
    outcome.exit_code = kExitGeometry;
    outcome.body = report.dump(2) + "\n";
    return outcome;
  } catch (const std::runtime_error& e) {
    report["error"] = e.what();
    outcome.exit_code = kExitNonConvergence;
    outcome.body = report.dump(2) + "\n";
    return outcome;
  }

  if (!opts.no_timing) {
    const auto t1 = std::chrono::steady_clock::now();
    report["timing_ms"] =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0).count();
  }
  outcome.body = report.dump(2) + "\n";
  return outcome;
}

}  // namespace toricvol

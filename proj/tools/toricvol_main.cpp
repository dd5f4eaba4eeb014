#include "toricvol/runner.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Volume functionals on toric data: Ricci-soliton fields, the "
               "normalized Einstein-Hilbert functional on moment polytopes, and "
               "Reeb-field volumes on Gorenstein cones"};
  app.require_subcommand(1);

  toricvol::RunOptions opts;
  std::string out_path;
  double param_value = 0.0;
  bool param_set = false;

  auto add_common = [&](CLI::App* cmd, bool polytope, bool cone) {
    if (polytope) cmd->add_option("--polytope", opts.polytope, "polytope JSON file or catalog name");
    if (cone) cmd->add_option("--cone", opts.cone, "cone JSON file or catalog name");
    if (polytope)
      cmd->add_option("--param", param_value, "family parameter for parametric catalog entries")
          ->each([&](const std::string&) { param_set = true; });
    cmd->add_option("--out", out_path, "write the report to this file instead of stdout");
    cmd->add_flag("--no-timing", opts.no_timing, "omit the timing field (reproducible bytes)");
    return cmd;
  };

  auto* validate = add_common(app.add_subcommand("validate", "validate a polytope or cone"),
                              true, true);
  (void)validate;

  auto* soliton = add_common(
      app.add_subcommand("soliton", "solve for the Ricci-soliton field coefficients"), true,
      false);
  soliton->add_option("--tol", opts.tol, "gradient tolerance (relative to W)");

  auto* critical = add_common(
      app.add_subcommand("ckem-critical",
                         "find all critical points of the Einstein-Hilbert functional"),
      true, false);
  critical->add_option("--starts", opts.starts, "number of multistart samples");
  critical->add_option("--seed", opts.seed, "RNG seed");

  auto* ode = add_common(app.add_subcommand("ckem-ode", "solve the product-construction ODE"),
                         false, false);
  ode->add_option("--m", opts.ode_m, "complex dimension (>= 2)")->required();
  ode->add_option("--c", opts.ode_c, "scalar curvature of the base factor")->required();
  ode->add_option("--tol", opts.tol, "root tolerance");

  auto* reeb = add_common(
      app.add_subcommand("sasaki-reeb", "minimize the Reeb-field volume on the charge slice"),
      false, true);
  reeb->add_option("--tol", opts.tol, "gradient tolerance");

  auto* landscape = add_common(
      app.add_subcommand("eh-landscape",
                         "CSV of EH over the admissible patch of the unit sphere"),
      true, false);
  landscape->add_option("--grid", opts.grid, "grid resolution per spherical angle");

  CLI11_PARSE(app, argc, argv);

  opts.command = app.get_subcommands().front()->get_name();
  if (param_set) opts.param = param_value;

  toricvol::RunOutcome outcome = toricvol::run(opts);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot open output file: " << out_path << "\n";
      return 1;
    }
    out << outcome.body;
  } else {
    std::cout << outcome.body;
  }
  return outcome.exit_code;
}

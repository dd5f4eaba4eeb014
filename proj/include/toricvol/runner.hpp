#ifndef TORICVOL_RUNNER_HPP
#define TORICVOL_RUNNER_HPP

#include "toricvol/io.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace toricvol {

inline constexpr const char* kToolVersion = "0.1.0";

// exit codes shared by the CLI and the acceptance harness
inline constexpr int kExitOk = 0;
inline constexpr int kExitGeometry = 2;       // geometric precondition failure
inline constexpr int kExitNonConvergence = 3; // solver non-convergence

struct RunOptions {
  std::string command;             // validate | soliton | ckem-critical |
                                   // ckem-ode | sasaki-reeb | eh-landscape
  std::string polytope;            // file path or catalog name
  std::string cone;                // file path or catalog name
  std::optional<double> param;     // family parameter for parametric catalog entries
  double tol = 1e-10;
  int starts = 200;
  std::uint64_t seed = 42;
  int grid = 200;
  int ode_m = 2;
  double ode_c = 10.0;
  bool no_timing = false;
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::string body;  // JSON report text, or CSV for eh-landscape
};

// Resolves a --polytope/--cone argument: an existing file is parsed by
// schema; otherwise the bundled catalog is consulted (cp2, square,
// cp2_anticanonical, product, blowup, blowup_anticanonical, cube3; cones: c3,
// conifold). Parametric entries take their parameter from `param`.
Polytope resolve_polytope(const std::string& name_or_path, std::optional<double> param);
MomentCone resolve_cone(const std::string& name_or_path);

RunOutcome run(const RunOptions& opts);

}  // namespace toricvol

#endif

#ifndef TORICVOL_CKEM_HPP
#define TORICVOL_CKEM_HPP

#include "toricvol/quadrature.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace toricvol {

// f_{K,a}(mu) = <K, mu> + a, packed as x = (K_1..K_m, a).
struct AffineParameter {
  Eigen::VectorXd K;
  double a = 0.0;

  Eigen::VectorXd as_vector() const {
    Eigen::VectorXd x(K.size() + 1);
    x.head(K.size()) = K;
    x[K.size()] = a;
    return x;
  }
  static AffineParameter from_vector(const Eigen::VectorXd& x) {
    return AffineParameter{x.head(x.size() - 1), x[x.size() - 1]};
  }
};

// Normalized Einstein-Hilbert functional on the space of positive affine
// functions, EH = 4 pi / (m!)^{1/m} * B / I^{(m-1)/m} with
// B = int_{boundary} f^{-(2m-2)} dsigma and I = int f^{-2m} dmu.
// Degree-0 homogeneous in (K, a).
double eh_value(const Polytope& p, const Eigen::VectorXd& K, double a);
Eigen::VectorXd eh_gradient(const Polytope& p, const Eigen::VectorXd& K, double a);
Eigen::MatrixXd eh_hessian(const Polytope& p, const Eigen::VectorXd& K, double a);

bool eh_admissible(const Polytope& p, const Eigen::VectorXd& K, double a);

enum class HessianSignature { Minimum, Maximum, Saddle, Degenerate };
std::string to_string(HessianSignature s);

struct CriticalPoint {
  Eigen::VectorXd representative;  // unit norm, sign fixed by f > 0 on P
  double value = 0.0;
  double gradient_norm = 0.0;
  HessianSignature signature = HessianSignature::Degenerate;
  int basin_count = 0;
};

struct CriticalPointReport {
  std::vector<CriticalPoint> points;
  int starts_used = 0;
  int duplicates_merged = 0;
  int non_converged = 0;
  std::uint64_t seed = 0;
};

// Multistart tangent-space Newton for grad EH = 0 on the unit sphere of
// (K, a)-space; starts are rejection-sampled from the admissible patch,
// converged points deduplicated projectively at 1e-6 angular distance.
CriticalPointReport find_critical_points(const Polytope& p, int n_starts = 200,
                                         std::uint64_t seed = 42);

// Real roots 0 < alpha < beta < 1 of p^4 - 4p^3 + 16p^2 - 16p + 4, isolated
// by an exact Sturm chain and polished by Newton.
std::pair<double, double> quartic_roots();

enum class CkemFamily { Product, Blowup };

// The closed-form critical points of the two worked families, as printed
// (not normalized): the test oracle for find_critical_points.
std::vector<Eigen::Vector3d> closed_form_critical(CkemFamily family, double p);

// Solution of t^2 Psi'' - 2(2m-1) t Psi' + 2m(2m-1) Psi = c t^2 - d with
// Psi(a) = Psi(a+1) = 0, Psi'(a) = 2, Psi'(a+1) = -2 and Psi > 0 between.
struct OdeSolution {
  int m = 2;
  double c = 0.0;
  double a = 0.0;
  double d = 0.0;
  double coef_quadratic = 0.0;  // A in Psi = A t^2 + B + C1 t^{2m-1} + C2 t^{2m}
  double coef_constant = 0.0;   // B
  double coef_c1 = 0.0;
  double coef_c2 = 0.0;
  double bc_residual = 0.0;   // max boundary-condition defect
  double ode_residual = 0.0;  // max relative ODE defect over 1000 samples
  double min_psi = 0.0;       // min over 1000 interior samples

  double psi(double t) const;
  double psi_prime(double t) const;
};

// Damped Newton on (a, d) over a coarse grid of starts; nullopt when no
// admissible root exists within the search budget.
std::optional<OdeSolution> solve_product_ode(int m, double c, double tol = 1e-11);

}  // namespace toricvol

#endif

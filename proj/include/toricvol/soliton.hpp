#ifndef TORICVOL_SOLITON_HPP
#define TORICVOL_SOLITON_HPP

#include "toricvol/quadrature.hpp"

namespace toricvol {

// Result of minimizing W(c) = int_P exp(<c, y>) dy. The minimizer is the
// coefficient vector of the soliton holomorphic field on the torus directions.
struct SolitonField {
  Eigen::VectorXd c;
  double potential_value = 0.0;
  double gradient_norm = 0.0;     // |grad W(c)| / W(c)
  double hessian_condition = 0.0; // eigenvalue ratio of the Hessian at c
  int iterations = 0;
};

double soliton_potential(const Polytope& p, const Eigen::VectorXd& c);
Eigen::VectorXd soliton_gradient(const Polytope& p, const Eigen::VectorXd& c);
Eigen::MatrixXd soliton_hessian(const Polytope& p, const Eigen::VectorXd& c);

// Newton with Armijo backtracking from c = 0 on the strictly convex W.
// tol bounds |grad W| / W at the reported minimizer.
SolitonField solve_soliton_field(const Polytope& p, double tol = 1e-10);

// Directional derivative <grad W(c), v>: the toric Futaki-type obstruction
// evaluated on the torus direction v.
double toric_futaki(const Polytope& p, const Eigen::VectorXd& c, const Eigen::VectorXd& v);

}  // namespace toricvol

#endif

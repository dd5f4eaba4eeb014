#ifndef TORICVOL_SASAKI_HPP
#define TORICVOL_SASAKI_HPP

#include "toricvol/cone.hpp"

#include <Eigen/Dense>

namespace toricvol {

struct ReebVector {
  Eigen::VectorXd xi;
  double slice_residual = 0.0;  // xi_1 - (m+1) under the Gorenstein slice
};

struct ReebVolumeResult {
  ReebVector xi_star;
  double volume = 0.0;
  double gradient_norm = 0.0;            // norm of the slice-projected gradient
  double hessian_min_eigenvalue = 0.0;   // of the slice-restricted Hessian
  int iterations = 0;
};

// Interior test: <u, xi> > 0 for every dual ray (sufficient by convexity).
bool reeb_interior(const MomentCone& c, const Eigen::VectorXd& xi);

// Vol(xi) = sum over the simplicial decomposition of |det U| / prod <u_i, xi>,
// the Euclidean volume of {y in C* : <y, xi> <= 1} times (m+1)!; homogeneous
// of degree -(m+1). Global metric constants are dropped.
double reeb_volume(const MomentCone& c, const Eigen::VectorXd& xi);
Eigen::VectorXd reeb_volume_gradient(const MomentCone& c, const Eigen::VectorXd& xi);
Eigen::MatrixXd reeb_volume_hessian(const MomentCone& c, const Eigen::VectorXd& xi);

// Damped Newton on the charge slice xi_1 = m+1 from the fan-ray average,
// with steps clipped to the interior (the volume's own poles are the barrier).
ReebVolumeResult minimize_reeb_volume(const MomentCone& c, double tol = 1e-10);

// <grad Vol(xi), Y> for slice-tangent Y (first coordinate 0): the toric
// Sasaki-Futaki obstruction value.
double sasaki_futaki(const MomentCone& c, const Eigen::VectorXd& xi, const Eigen::VectorXd& y);

}  // namespace toricvol

#endif

#include "toricvol/sasaki.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace toricvol {

namespace {

void check_interior(const MomentCone& c, const Eigen::VectorXd& xi) {
  if (xi.size() != c.ambient_dim) throw std::invalid_argument("Reeb vector of wrong dimension");
  if (!reeb_interior(c, xi)) {
    std::ostringstream os;
    os << "Reeb vector (" << xi.transpose() << ") is not interior to the Reeb cone";
    throw std::domain_error(os.str());
  }
}

}  // namespace

bool reeb_interior(const MomentCone& c, const Eigen::VectorXd& xi) {
  const Eigen::MatrixXd duals = c.dual_rays_as_double();
  for (Eigen::Index i = 0; i < duals.rows(); ++i)
    if (duals.row(i).dot(xi) <= 0.0) return false;
  return true;
}

double reeb_volume(const MomentCone& c, const Eigen::VectorXd& xi) {
  check_interior(c, xi);
  const Eigen::MatrixXd duals = c.dual_rays_as_double();
  double vol = 0.0;
  for (const auto& sub : c.decomposition) {
    double prod = 1.0;
    for (int idx : sub.dual_ray_indices) prod *= duals.row(idx).dot(xi);
    vol += sub.det_abs.convert_to<double>() / prod;
  }
  return vol;
}

Eigen::VectorXd reeb_volume_gradient(const MomentCone& c, const Eigen::VectorXd& xi) {
  check_interior(c, xi);
  const Eigen::MatrixXd duals = c.dual_rays_as_double();
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(c.ambient_dim);
  for (const auto& sub : c.decomposition) {
    double prod = 1.0;
    for (int idx : sub.dual_ray_indices) prod *= duals.row(idx).dot(xi);
    const double v = sub.det_abs.convert_to<double>() / prod;
    for (int idx : sub.dual_ray_indices)
      grad -= v / duals.row(idx).dot(xi) * duals.row(idx).transpose();
  }
  return grad;
}

Eigen::MatrixXd reeb_volume_hessian(const MomentCone& c, const Eigen::VectorXd& xi) {
  check_interior(c, xi);
  const Eigen::MatrixXd duals = c.dual_rays_as_double();
  const int n = c.ambient_dim;
  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n, n);
  for (const auto& sub : c.decomposition) {
    double prod = 1.0;
    for (int idx : sub.dual_ray_indices) prod *= duals.row(idx).dot(xi);
    const double v = sub.det_abs.convert_to<double>() / prod;
    Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
    for (int idx : sub.dual_ray_indices) {
      const Eigen::VectorXd u = duals.row(idx).transpose();
      const double pi = u.dot(xi);
      s += u / pi;
      hess += v / (pi * pi) * u * u.transpose();
    }
    hess += v * s * s.transpose();
  }
  return hess;
}

ReebVolumeResult minimize_reeb_volume(const MomentCone& c, double tol) {
  const int n = c.ambient_dim;
  const int m = c.charge_dim();
  const Eigen::MatrixXd duals = c.dual_rays_as_double();

  // start: fan-ray average scaled to the slice xi_1 = m+1
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(n);
  for (const auto& v : c.fan_rays) xi += to_double(v);
  xi *= (m + 1.0) / xi[0];
  if (!reeb_interior(c, xi))
    throw std::domain_error("fan-ray average is not interior; cone is degenerate");

  // slice basis: coordinates 1..m
  auto slice_grad = [&](const Eigen::VectorXd& g) { return g.tail(m).eval(); };

  constexpr int kMaxIter = 300;
  ReebVolumeResult out;
  double vol = reeb_volume(c, xi);
  int iter = 0;
  for (; iter < kMaxIter; ++iter) {
    Eigen::VectorXd g = slice_grad(reeb_volume_gradient(c, xi));
    if (g.norm() <= tol * std::max(1.0, vol)) break;
    Eigen::MatrixXd h = reeb_volume_hessian(c, xi).bottomRightCorner(m, m);
    Eigen::VectorXd step_slice = h.ldlt().solve(-g);
    Eigen::VectorXd step = Eigen::VectorXd::Zero(n);
    step.tail(m) = step_slice;

    // fraction-to-boundary clipping against the dual-ray constraints
    double alpha_max = 1.0;
    for (Eigen::Index i = 0; i < duals.rows(); ++i) {
      const double du = duals.row(i).dot(step);
      if (du < 0.0) {
        const double limit = -duals.row(i).dot(xi) / du;
        alpha_max = std::min(alpha_max, 0.95 * limit);
      }
    }
    double alpha = alpha_max;
    bool stepped = false;
    const double slope = g.dot(step_slice);
    for (int bt = 0; bt < 60; ++bt) {
      Eigen::VectorXd xi_new = xi + alpha * step;
      if (reeb_interior(c, xi_new)) {
        const double vol_new = reeb_volume(c, xi_new);
        if (vol_new <= vol + 1e-4 * alpha * slope) {
          xi = xi_new;
          vol = vol_new;
          stepped = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!stepped)
      throw std::runtime_error("Reeb volume line search stalled before tolerance");
  }
  if (iter == kMaxIter) {
    std::ostringstream os;
    os << "Reeb volume minimization did not converge in " << kMaxIter
       << " iterations; |grad| = "
       << slice_grad(reeb_volume_gradient(c, xi)).norm();
    throw std::runtime_error(os.str());
  }

  out.xi_star.xi = xi;
  out.xi_star.slice_residual = xi[0] - (m + 1.0);
  out.volume = vol;
  out.gradient_norm = slice_grad(reeb_volume_gradient(c, xi)).norm();
  Eigen::MatrixXd h = reeb_volume_hessian(c, xi).bottomRightCorner(m, m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  out.hessian_min_eigenvalue = es.eigenvalues().minCoeff();
  out.iterations = iter;
  return out;
}

double sasaki_futaki(const MomentCone& c, const Eigen::VectorXd& xi, const Eigen::VectorXd& y) {
  if (y.size() != c.ambient_dim) throw std::invalid_argument("direction of wrong dimension");
  if (y[0] != 0.0)
    throw std::invalid_argument("direction must be tangent to the charge slice (first "
                                "coordinate zero)");
  return reeb_volume_gradient(c, xi).dot(y);
}

}  // namespace toricvol

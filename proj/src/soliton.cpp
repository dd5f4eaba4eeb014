#include "toricvol/soliton.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <sstream>
#include <stdexcept>

namespace toricvol {

namespace {

void check_properness(const Polytope& p) {
  if (!p.contains_origin_interior())
    throw std::domain_error(
        "soliton potential is proper only when the origin is interior to the polytope");
}

AffineFunction linear(const Eigen::VectorXd& c) { return AffineFunction{c, 0.0}; }

}  // namespace

double soliton_potential(const Polytope& p, const Eigen::VectorXd& c) {
  check_properness(p);
  return integrate_polytope(p, linear(c), Kernel::exponential());
}

Eigen::VectorXd soliton_gradient(const Polytope& p, const Eigen::VectorXd& c) {
  check_properness(p);
  return moment1_polytope(p, linear(c), Kernel::exponential());
}

Eigen::MatrixXd soliton_hessian(const Polytope& p, const Eigen::VectorXd& c) {
  check_properness(p);
  return moment2_polytope(p, linear(c), Kernel::exponential());
}

SolitonField solve_soliton_field(const Polytope& p, double tol) {
  check_properness(p);
  const int m = p.dim;
  const std::vector<SimplexD> pieces = compile_interior(p);
  const Kernel exp_kernel = Kernel::exponential();
  auto potential = [&](const Eigen::VectorXd& c) {
    return integrate_pieces(pieces, linear(c), exp_kernel);
  };
  auto gradient = [&](const Eigen::VectorXd& c) {
    return moment1_pieces(pieces, linear(c), exp_kernel);
  };
  auto hessian = [&](const Eigen::VectorXd& c) {
    return moment2_pieces(pieces, linear(c), exp_kernel);
  };

  Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
  double w = potential(c);
  constexpr int kMaxIter = 200;
  constexpr double kArmijoSlope = 1e-4;

  SolitonField out;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    Eigen::VectorXd g = gradient(c);
    if (g.norm() <= tol * w) {
      Eigen::MatrixXd h = hessian(c);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
      out.c = c;
      out.potential_value = w;
      out.gradient_norm = g.norm() / w;
      out.hessian_condition = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
      out.iterations = iter;
      return out;
    }
    Eigen::MatrixXd h = hessian(c);
    Eigen::VectorXd step = h.llt().solve(-g);
    double slope = g.dot(step);
    double alpha = 1.0;
    while (alpha > 1e-14) {
      double w_new = potential(c + alpha * step);
      if (w_new <= w + kArmijoSlope * alpha * slope) {
        c += alpha * step;
        w = w_new;
        break;
      }
      alpha *= 0.5;
    }
    if (alpha <= 1e-14) {
      std::ostringstream os;
      os << "soliton line search stalled at iteration " << iter << ", |grad|/W = "
         << g.norm() / w;
      throw std::runtime_error(os.str());
    }
  }
  std::ostringstream os;
  os << "soliton Newton did not reach |grad|/W <= " << tol << " within " << kMaxIter
     << " iterations; last W = " << w;
  throw std::runtime_error(os.str());
}

double toric_futaki(const Polytope& p, const Eigen::VectorXd& c, const Eigen::VectorXd& v) {
  return soliton_gradient(p, c).dot(v);
}

}  // namespace toricvol

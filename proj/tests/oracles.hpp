// Test-only oracles, independent of the divided-difference implementation
// they check: finite differences, random geometry generators, a Runge-Kutta
// shooting integrator, and a Richardson-extrapolated midpoint rule.
#ifndef TORICVOL_TESTS_ORACLES_HPP
#define TORICVOL_TESTS_ORACLES_HPP

#include "toricvol/ckem.hpp"
#include "toricvol/polytope.hpp"
#include "toricvol/quadrature.hpp"
#include "toricvol/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

using toricvol::Rational;
using toricvol::RatVector;
using toricvol::Rng;
using toricvol::Simplex;

inline Simplex simplex_from_double(const Eigen::MatrixXd& verts) {
  Simplex s;
  const int k = static_cast<int>(verts.rows()) - 1;
  for (Eigen::Index r = 0; r < verts.rows(); ++r) {
    RatVector v(verts.cols());
    for (Eigen::Index c = 0; c < verts.cols(); ++c) v[c] = Rational(verts(r, c));
    s.vertices.push_back(v);
  }
  toricvol::RatMatrix e(k, k);
  for (int i = 0; i < k; ++i) e.row(i) = (s.vertices[i + 1] - s.vertices[0]).transpose();
  Rational fact = 1;
  for (int i = 2; i <= k; ++i) fact *= i;
  s.weight = boost::multiprecision::abs(toricvol::exact_determinant(e)) / fact;
  return s;
}

// full-dimensional random simplex with volume bounded away from zero
inline Simplex random_simplex(Rng& rng, int dim) {
  while (true) {
    Eigen::MatrixXd verts(dim + 1, dim);
    for (int i = 0; i <= dim; ++i)
      for (int j = 0; j < dim; ++j) verts(i, j) = rng.uniform(-1.0, 1.0);
    Simplex s = simplex_from_double(verts);
    if (s.weight > Rational(1, 20)) return s;
  }
}

// affine function positive on the simplex (min vertex value >= floor)
inline toricvol::AffineFunction random_positive_affine(Rng& rng, const Simplex& s,
                                                       double gradient_scale, double floor) {
  const int dim = s.ambient_dim();
  Eigen::VectorXd g(dim);
  for (int j = 0; j < dim; ++j) g[j] = gradient_scale * rng.uniform(-1.0, 1.0);
  double min_val = 1e300;
  for (const auto& v : s.vertices) min_val = std::min(min_val, g.dot(toricvol::to_double(v)));
  return toricvol::AffineFunction{g, floor + rng.uniform(0.0, 1.0) - min_val};
}

inline toricvol::Kernel random_kernel(Rng& rng) {
  switch (rng.uniform_int(0, 2)) {
    case 0: return toricvol::Kernel::exponential();
    case 1: return toricvol::Kernel::inv_power(rng.uniform_int(1, 5));
    default: return toricvol::Kernel::monomial(rng.uniform_int(0, 3));
  }
}

// central finite-difference gradient of a scalar function
inline Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& x, double h = 1e-5) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    const double hi = h * (1.0 + std::abs(x[i]));
    xp[i] += hi;
    xm[i] -= hi;
    g[i] = (f(xp) - f(xm)) / (2.0 * hi);
  }
  return g;
}

// RK4 integration of the product-construction ODE from t = a with
// Psi(a) = 0, Psi'(a) = 2; returns (Psi, Psi') at a + 1.
inline Eigen::Vector2d shoot_product_ode(int m, double c, double d, double a, int steps = 4000) {
  auto rhs = [&](double t, const Eigen::Vector2d& y) {
    const double psi2 =
        (2.0 * (2 * m - 1) * t * y[1] - 2.0 * m * (2 * m - 1) * y[0] + c * t * t - d) / (t * t);
    return Eigen::Vector2d(y[1], psi2);
  };
  Eigen::Vector2d y(0.0, 2.0);
  const double h = 1.0 / steps;
  double t = a;
  for (int i = 0; i < steps; ++i) {
    Eigen::Vector2d k1 = rhs(t, y);
    Eigen::Vector2d k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
    Eigen::Vector2d k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
    Eigen::Vector2d k4 = rhs(t + h, y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
  }
  return y;
}

// Richardson-extrapolated midpoint rule for int over the anticanonical
// blow-up quadrilateral {x >= -1, y >= -1, x + y <= 1, x + y >= -1} of
// phi(x, y). The region is split at x = 0 where the lower boundary kinks.
inline double blowup_quad_integral(const std::function<double(double, double)>& phi, int n) {
  auto cell_integral = [&](double x_lo, double x_hi, int nx) {
    double acc = 0.0;
    for (int i = 0; i < nx; ++i) {
      const double x = x_lo + (x_hi - x_lo) * (i + 0.5) / nx;
      const double y_lo = std::max(-1.0, -1.0 - x);
      const double y_hi = 1.0 - x;
      for (int j = 0; j < nx; ++j) {
        const double y = y_lo + (y_hi - y_lo) * (j + 0.5) / nx;
        acc += phi(x, y) * (y_hi - y_lo);
      }
    }
    return acc * (x_hi - x_lo) / (static_cast<double>(nx) * nx);
  };
  auto whole = [&](int nx) { return cell_integral(-1.0, 0.0, nx) + cell_integral(0.0, 2.0, nx); };
  const double q1 = whole(n), q2 = whole(2 * n), q3 = whole(4 * n);
  // two Richardson steps on the h^2 midpoint error
  const double r1 = (4.0 * q2 - q1) / 3.0;
  const double r2 = (4.0 * q3 - q2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

}  // namespace oracles

#endif

#ifndef TORICVOL_QUADRATURE_HPP
#define TORICVOL_QUADRATURE_HPP

#include "toricvol/polytope.hpp"

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

namespace toricvol {

// f(y) = <gradient, y> + constant
struct AffineFunction {
  Eigen::VectorXd gradient;
  double constant = 0.0;

  double operator()(const Eigen::VectorXd& y) const { return gradient.dot(y) + constant; }
  static AffineFunction constant_one(int dim) {
    return AffineFunction{Eigen::VectorXd::Zero(dim), 1.0};
  }
};

// Integration kernel g together with the whole ladder of antiderivatives /
// derivatives used by confluent divided differences:
//   antiderivative(q, t) = the q-fold antiderivative of g at t (q >= 0),
//   antiderivative(-j, t) = the j-th derivative of g at t,
// with integration constants chosen so that d/dt A_q = A_{q-1} exactly.
class Kernel {
 public:
  enum class Tag { Exp, InvPower, Monomial };

  static Kernel exponential() { return Kernel(Tag::Exp, 0); }
  static Kernel inv_power(int k);
  static Kernel monomial(int s);

  Tag tag() const { return tag_; }
  int param() const { return param_; }
  bool requires_positive_nodes() const { return tag_ == Tag::InvPower; }

  double operator()(double t) const { return antiderivative(0, t); }
  double antiderivative(int q, double t) const;

 private:
  Kernel(Tag tag, int param) : tag_(tag), param_(param) {}
  Tag tag_;
  int param_;  // k for InvPower, s for Monomial
};

struct DividedDifferenceResult {
  double value = 0.0;
  double condition = 1.0;  // >= 1; digits lost to cancellation ~ log10(condition)
};

// Double-precision view of a measured simplex. Solvers that evaluate many
// integrals over one polytope compile its pieces once and reuse them.
struct SimplexD {
  Eigen::MatrixXd verts;  // one row per vertex
  double weight = 0.0;

  int dim() const { return static_cast<int>(verts.rows()) - 1; }
  int ambient_dim() const { return static_cast<int>(verts.cols()); }
};

SimplexD compile_simplex(const Simplex& s);
std::vector<SimplexD> compile_interior(const Polytope& p);
std::vector<SimplexD> compile_boundary(const Polytope& p);

// Divided difference [x_0,...,x_n]G for a function supplied through its
// derivative family: deriv(j, t) = G^{(j)}(t). Nodes closer than
// 1e-7 * (1 + max|x|) are grouped and evaluated by a Taylor expansion around
// the cluster mean, which stays accurate through exact confluence.
DividedDifferenceResult divided_difference_ex(
    const std::function<double(int, double)>& deriv, std::vector<double> nodes);

inline double divided_difference(const std::function<double(int, double)>& deriv,
                                 std::vector<double> nodes) {
  return divided_difference_ex(deriv, std::move(nodes)).value;
}

// Hermite-Genocchi: r! * weight * [f(v_0),...,f(v_r)] A_r with A_r the r-fold
// antiderivative of g. Falls back to adaptive quadrature when the divided
// difference loses more than 6 decimal digits to cancellation.
double integrate_simplex(const SimplexD& s, const AffineFunction& f, const Kernel& g);
double integrate_simplex(const Simplex& s, const AffineFunction& f, const Kernel& g);

// Coordinate moments over one simplex: (m1)_i = int y_i g(f),
// (m2)_ij = int y_i y_j g(f); computed from barycentric expansions with
// repeated-node divided differences.
Eigen::VectorXd simplex_moment1(const SimplexD& s, const AffineFunction& f, const Kernel& g);
Eigen::MatrixXd simplex_moment2(const SimplexD& s, const AffineFunction& f, const Kernel& g);
Eigen::VectorXd simplex_moment1(const Simplex& s, const AffineFunction& f, const Kernel& g);
Eigen::MatrixXd simplex_moment2(const Simplex& s, const AffineFunction& f, const Kernel& g);

double integrate_pieces(const std::vector<SimplexD>& pieces, const AffineFunction& f,
                        const Kernel& g);
Eigen::VectorXd moment1_pieces(const std::vector<SimplexD>& pieces, const AffineFunction& f,
                               const Kernel& g);
Eigen::MatrixXd moment2_pieces(const std::vector<SimplexD>& pieces, const AffineFunction& f,
                               const Kernel& g);

double integrate_polytope(const Polytope& p, const AffineFunction& f, const Kernel& g);
double integrate_boundary(const Polytope& p, const AffineFunction& f, const Kernel& g);
Eigen::VectorXd moment1_polytope(const Polytope& p, const AffineFunction& f, const Kernel& g);
Eigen::VectorXd moment1_boundary(const Polytope& p, const AffineFunction& f, const Kernel& g);
Eigen::MatrixXd moment2_polytope(const Polytope& p, const AffineFunction& f, const Kernel& g);
Eigen::MatrixXd moment2_boundary(const Polytope& p, const AffineFunction& f, const Kernel& g);

// int_P y_i exp(<c, y>) dy
double integrate_weighted_exp(const Polytope& p, const Eigen::VectorXd& c, int i);

// Independent adaptive oracle: Duffy-mapped Gauss-Legendre pair on the
// simplex, refined by longest-edge bisection to the requested relative
// tolerance. Throws when the subdivision budget is exhausted.
double numeric_fallback(const SimplexD& s,
                        const std::function<double(const Eigen::VectorXd&)>& integrand,
                        double rel_tol, long long max_evals = 20000000);
double numeric_fallback(const Simplex& s,
                        const std::function<double(const Eigen::VectorXd&)>& integrand,
                        double rel_tol, long long max_evals = 20000000);

}  // namespace toricvol

#endif

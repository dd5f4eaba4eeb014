#ifndef TORICVOL_RATIONAL_HPP
#define TORICVOL_RATIONAL_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace toricvol {

// Exact scalar types used by all combinatorial / validation predicates.
// Solver-facing code converts to double at the quadrature boundary.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Eigen::VectorXd to_double(const RatVector& v) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline bool is_integer(const RatVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!is_integer(v[i])) return false;
  return true;
}

// Parses "p/q" or a plain integer string.
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  BigInt num(s.substr(0, slash));
  BigInt den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  return Rational(num, den);
}

inline std::string to_string(const Rational& q) {
  if (is_integer(q)) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

// Nearest rational with denominator <= max_den (continued fractions).
// Used to interpret CLI doubles like 0.95 as the exact family parameter 19/20.
Rational rational_from_double(double x, long long max_den = 1000000);

// Scales a rational direction to the primitive integer vector with the same
// orientation. Throws on the zero vector.
RatVector primitive_integer_direction(const RatVector& v);

// Explicit exact products. Eigen's scalar-promotion overload set for
// operator* is not SFINAE-safe against boost::multiprecision's container
// constructors, so rational matrix products go through these helpers.
inline RatVector exact_mat_vec(const RatMatrix& a, const RatVector& v) {
  RatVector out = RatVector::Zero(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

inline RatMatrix exact_mat_mul(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix out = RatMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index k = 0; k < a.cols(); ++k) out(i, j) += a(i, k) * b(k, j);
  return out;
}

// Exact determinant by fraction-free Gaussian elimination.
Rational exact_determinant(RatMatrix a);

// Rank of a rational matrix.
int exact_rank(RatMatrix a);

// Rank of the affine span of a point set (0 for a single point).
int affine_rank(const std::vector<RatVector>& points);

}  // namespace toricvol

#endif

#include "toricvol/cone.hpp"

#include <algorithm>
#include <stdexcept>

namespace toricvol {

Eigen::MatrixXd MomentCone::dual_rays_as_double() const {
  Eigen::MatrixXd out(dual_rays.size(), ambient_dim);
  for (size_t i = 0; i < dual_rays.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = to_double(dual_rays[i]).transpose();
  return out;
}

Eigen::MatrixXd MomentCone::fan_rays_as_double() const {
  Eigen::MatrixXd out(fan_rays.size(), ambient_dim);
  for (size_t i = 0; i < fan_rays.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = to_double(fan_rays[i]).transpose();
  return out;
}

namespace {

RatVector cross3(const RatVector& a, const RatVector& b) {
  RatVector c(3);
  c[0] = a[1] * b[2] - a[2] * b[1];
  c[1] = a[2] * b[0] - a[0] * b[2];
  c[2] = a[0] * b[1] - a[1] * b[0];
  return c;
}

Rational dot(const RatVector& a, const RatVector& b) {
  Rational acc = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void validate_gorenstein_rays(const std::vector<RatVector>& rays, int ambient_dim) {
  if (rays.size() < static_cast<size_t>(ambient_dim))
    throw std::invalid_argument("need at least ambient_dim fan rays");
  for (size_t i = 0; i < rays.size(); ++i) {
    if (rays[i].size() != ambient_dim)
      throw std::invalid_argument("fan ray of wrong dimension");
    if (!is_integer(rays[i]))
      throw std::invalid_argument("fan ray " + std::to_string(i) + " is not integral");
    if (rays[i][0] != 1)
      throw std::invalid_argument("fan ray " + std::to_string(i) +
                                  " does not have first coordinate 1 (Gorenstein form)");
    if (rays[i] != primitive_integer_direction(rays[i]))
      throw std::invalid_argument("fan ray " + std::to_string(i) + " is not primitive");
  }
}

}  // namespace

MomentCone build_moment_cone(const std::vector<RatVector>& fan_rays, std::string name) {
  if (fan_rays.empty()) throw std::invalid_argument("empty fan");
  const int d = static_cast<int>(fan_rays[0].size());
  if (d != 3)
    throw std::invalid_argument(
        "automatic dual-ray computation supports ambient dimension 3; "
        "use the explicit constructor for higher-dimensional cones");
  validate_gorenstein_rays(fan_rays, d);

  const int n = static_cast<int>(fan_rays.size());
  // toric diagram {w_a}: strictly convex polygon in cyclic order
  auto turn = [&](int a) {
    const RatVector &p = fan_rays[a], &q = fan_rays[(a + 1) % n], &r = fan_rays[(a + 2) % n];
    return (q[1] - p[1]) * (r[2] - q[2]) - (q[2] - p[2]) * (r[1] - q[1]);
  };
  int pos = 0, neg = 0;
  for (int a = 0; a < n; ++a) {
    Rational t = turn(a);
    if (t > 0) ++pos;
    else if (t < 0) ++neg;
  }
  std::vector<RatVector> rays = fan_rays;
  if (neg == n) {
    std::reverse(rays.begin(), rays.end());  // clockwise diagram: same cone
  } else if (pos != n) {
    throw std::invalid_argument(
        "fan rays do not list a strictly convex toric diagram in cyclic order");
  }

  MomentCone cone;
  cone.ambient_dim = d;
  cone.fan_rays = rays;
  cone.name = std::move(name);

  for (int a = 0; a < n; ++a) {
    RatVector u = cross3(rays[a], rays[(a + 1) % n]);
    if (u[0] == 0 && u[1] == 0 && u[2] == 0)
      throw std::invalid_argument("adjacent fan rays are parallel");
    u = primitive_integer_direction(u);
    bool nonneg = true, nonpos = true;
    for (const auto& v : rays) {
      Rational s = dot(u, v);
      if (s < 0) nonneg = false;
      if (s > 0) nonpos = false;
    }
    if (!nonneg && nonpos) u = -u;
    else if (!nonneg)
      throw std::invalid_argument("cross product of adjacent rays is not a supporting normal; "
                                  "diagram is not convex");
    cone.dual_rays.push_back(u);
  }

  // dual rays are cyclically ordered; fan from the first
  for (int a = 1; a + 1 < n; ++a) {
    MomentCone::Subcone sub;
    sub.dual_ray_indices = {0, a, a + 1};
    RatMatrix m(3, 3);
    m.row(0) = cone.dual_rays[0].transpose();
    m.row(1) = cone.dual_rays[a].transpose();
    m.row(2) = cone.dual_rays[a + 1].transpose();
    Rational det = exact_determinant(m);
    if (det == 0) throw std::invalid_argument("degenerate simplicial subcone in decomposition");
    sub.det_abs = boost::multiprecision::abs(numerator(det));
    cone.decomposition.push_back(std::move(sub));
  }
  if (cone.decomposition.empty())
    throw std::invalid_argument("cone is not full-dimensional");
  return cone;
}

MomentCone make_moment_cone_explicit(int ambient_dim, std::vector<RatVector> fan_rays,
                                     std::vector<RatVector> dual_rays,
                                     std::vector<std::vector<int>> decomposition,
                                     std::string name) {
  validate_gorenstein_rays(fan_rays, ambient_dim);
  MomentCone cone;
  cone.ambient_dim = ambient_dim;
  cone.fan_rays = std::move(fan_rays);
  cone.name = std::move(name);
  for (auto& u : dual_rays) {
    if (u.size() != ambient_dim) throw std::invalid_argument("dual ray of wrong dimension");
    u = primitive_integer_direction(u);
    for (const auto& v : cone.fan_rays)
      if (dot(u, v) < 0)
        throw std::invalid_argument("dual ray is negative on a fan ray");
    cone.dual_rays.push_back(u);
  }
  for (const auto& idx : decomposition) {
    if (idx.size() != static_cast<size_t>(ambient_dim))
      throw std::invalid_argument("simplicial subcone needs ambient_dim generators");
    MomentCone::Subcone sub;
    sub.dual_ray_indices = idx;
    RatMatrix m(ambient_dim, ambient_dim);
    for (int i = 0; i < ambient_dim; ++i) {
      if (idx[i] < 0 || idx[i] >= static_cast<int>(cone.dual_rays.size()))
        throw std::invalid_argument("decomposition references a missing dual ray");
      m.row(i) = cone.dual_rays[idx[i]].transpose();
    }
    Rational det = exact_determinant(m);
    if (det == 0) throw std::invalid_argument("degenerate simplicial subcone in decomposition");
    sub.det_abs = boost::multiprecision::abs(numerator(det));
    cone.decomposition.push_back(std::move(sub));
  }
  if (cone.decomposition.empty()) throw std::invalid_argument("empty decomposition");
  return cone;
}

}  // namespace toricvol

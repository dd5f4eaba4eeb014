#include "toricvol/catalog.hpp"

#include <stdexcept>

namespace toricvol::catalog {

namespace {

RatVector pt(std::initializer_list<Rational> coords) {
  RatVector v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (const auto& c : coords) v[i++] = c;
  return v;
}

}  // namespace

Polytope cp2() {
  return build_polytope(2, {pt({0, 0}), pt({1, 0}), pt({0, 1})}, std::nullopt, std::nullopt,
                        "cp2");
}

Polytope cp2_anticanonical() {
  return build_polytope(2, {pt({-1, -1}), pt({2, -1}), pt({-1, 2})}, std::nullopt, std::nullopt,
                        "cp2_anticanonical");
}

Polytope square() {
  return build_polytope(2, {pt({-1, -1}), pt({1, -1}), pt({1, 1}), pt({-1, 1})}, std::nullopt,
                        std::nullopt, "square");
}

Polytope product(const Rational& p) {
  if (p <= 0) throw std::invalid_argument("product rectangle needs p > 0");
  return build_polytope(2, {pt({0, 0}), pt({p, 0}), pt({p, 1}), pt({0, 1})}, std::nullopt,
                        std::nullopt, "product");
}

Polytope blowup(const Rational& p) {
  if (p <= 0 || p >= 1) throw std::invalid_argument("blow-up trapezoid needs 0 < p < 1");
  return build_polytope(2, {pt({0, 0}), pt({p, 0}), pt({p, 1 - p}), pt({0, 1})}, std::nullopt,
                        std::nullopt, "blowup");
}

Polytope blowup_anticanonical() {
  return build_polytope(2, {pt({-1, 0}), pt({0, -1}), pt({2, -1}), pt({-1, 2})}, std::nullopt,
                        std::nullopt, "blowup_anticanonical");
}

Polytope cube3() {
  std::vector<RatVector> verts;
  for (int i = 0; i < 8; ++i)
    verts.push_back(pt({Rational(i & 1), Rational((i >> 1) & 1), Rational((i >> 2) & 1)}));
  std::vector<std::pair<RatVector, Rational>> facets;
  for (int axis = 0; axis < 3; ++axis) {
    RatVector lo = pt({0, 0, 0}), hi = pt({0, 0, 0});
    lo[axis] = 1;   // x_axis >= 0
    hi[axis] = -1;  // 1 - x_axis >= 0
    facets.emplace_back(lo, Rational(0));
    facets.emplace_back(hi, Rational(1));
  }
  return build_polytope(3, std::move(verts), facets, std::nullopt, "cube3");
}

MomentCone c3() {
  std::vector<RatVector> rays = {pt({1, 0, 0}), pt({1, 1, 0}), pt({1, 0, 1})};
  return build_moment_cone(rays, "c3");
}

MomentCone conifold() {
  std::vector<RatVector> rays = {pt({1, 0, 0}), pt({1, 1, 0}), pt({1, 1, 1}), pt({1, 0, 1})};
  return build_moment_cone(rays, "conifold");
}

}  // namespace toricvol::catalog

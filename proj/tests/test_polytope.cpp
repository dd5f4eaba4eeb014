#include "doctest.h"

#include "toricvol/catalog.hpp"
#include "toricvol/cone.hpp"
#include "toricvol/polytope.hpp"
#include "toricvol/rng.hpp"

#include <algorithm>
#include <set>

using namespace toricvol;

namespace {

RatVector pt2(const Rational& x, const Rational& y) {
  RatVector v(2);
  v << x, y;
  return v;
}

std::set<std::pair<std::string, std::string>> facet_set(const Polytope& p) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& f : p.facets) {
    std::string n;
    for (int i = 0; i < p.dim; ++i) n += to_string(f.normal[i]) + ";";
    out.insert({n, to_string(f.offset)});
  }
  return out;
}

// random GL(2,Z) element built from shears and swaps
RatMatrix random_unimodular2(Rng& rng) {
  RatMatrix a = RatMatrix::Identity(2, 2);
  for (int k = 0; k < 6; ++k) {
    RatMatrix s = RatMatrix::Identity(2, 2);
    switch (rng.uniform_int(0, 3)) {
      case 0: s(0, 1) = Rational(rng.uniform_int(-2, 2)); break;
      case 1: s(1, 0) = Rational(rng.uniform_int(-2, 2)); break;
      case 2: s << Rational(0), Rational(1), Rational(1), Rational(0); break;
      case 3: s(0, 0) = Rational(-1); break;
    }
    a = exact_mat_mul(a, s);
  }
  return a;
}

Polytope transform(const Polytope& p, const RatMatrix& a, const RatVector& t) {
  std::vector<RatVector> verts;
  for (const auto& v : p.vertices) verts.push_back(RatVector(exact_mat_vec(a, v) + t));
  return build_polytope(2, verts);
}

}  // namespace

TEST_CASE("standard simplex facets") {
  Polytope p = catalog::cp2();
  auto fs = facet_set(p);
  CHECK(fs.count({"1;0;", "0"}) == 1);   // y1 >= 0
  CHECK(fs.count({"0;1;", "0"}) == 1);   // y2 >= 0
  CHECK(fs.count({"-1;-1;", "1"}) == 1); // 1 - y1 - y2 >= 0
  CHECK(p.facets.size() == 3);
}

TEST_CASE("blow-up quadrilateral hull recovers the four anticanonical facets") {
  Polytope p = catalog::blowup_anticanonical();
  REQUIRE(p.facets.size() == 4);
  auto fs = facet_set(p);
  CHECK(fs.count({"1;0;", "1"}) == 1);
  CHECK(fs.count({"0;1;", "1"}) == 1);
  CHECK(fs.count({"-1;-1;", "1"}) == 1);
  CHECK(fs.count({"1;1;", "1"}) == 1);
}

TEST_CASE("axis-aligned rectangle") {
  Polytope p = catalog::product(Rational(3));
  CHECK(p.facets.size() == 4);
  CHECK(volume(p) == Rational(3));
}

TEST_CASE("build_polytope error paths") {
  CHECK_THROWS(build_polytope(2, {pt2(0, 0), pt2(1, 1), pt2(2, 2)}));  // collinear
  // explicit facet violated by a vertex
  std::vector<std::pair<RatVector, Rational>> facets = {
      {pt2(1, 0), Rational(0)}, {pt2(0, 1), Rational(0)}, {pt2(-1, -1), Rational(1)}};
  CHECK_THROWS(build_polytope(2, {pt2(0, 0), pt2(2, 0), pt2(0, 1)}, facets));
  // dim >= 3 without facets
  RatVector v3(3);
  v3 << Rational(0), Rational(0), Rational(0);
  std::vector<RatVector> vs;
  for (int i = 0; i < 4; ++i) {
    RatVector v = v3;
    if (i > 0) v[i - 1] = 1;
    vs.push_back(v);
  }
  CHECK_THROWS(build_polytope(3, vs));
  // interior point listed as a vertex
  CHECK_THROWS(build_polytope(
      2, {pt2(0, 0), pt2(4, 0), pt2(0, 4), pt2(1, 1)}));
}

TEST_CASE("Delzant validation") {
  CHECK(validate_delzant(catalog::cp2()).delzant);
  CHECK(validate_delzant(catalog::blowup_anticanonical()).delzant);

  // oracle: per-vertex 2x2 determinants of conv{(0,0),(2,0),(0,1)} computed
  // from first principles. Facets: x >= 0, y >= 0, 2 - x - 2y >= 0.
  Polytope p = build_polytope(2, {pt2(0, 0), pt2(2, 0), pt2(0, 1)});
  std::vector<std::pair<RatVector, BigInt>> expected;  // vertex -> |det|
  for (size_t vi = 0; vi < p.vertices.size(); ++vi) {
    std::vector<RatVector> normals;
    for (size_t fi = 0; fi < p.facets.size(); ++fi)
      if (p.facet_value(static_cast<int>(fi), p.vertices[vi]) == 0)
        normals.push_back(p.facets[fi].normal);
    REQUIRE(normals.size() == 2);
    Rational det = normals[0][0] * normals[1][1] - normals[0][1] * normals[1][0];
    expected.push_back({p.vertices[vi], boost::multiprecision::abs(numerator(det))});
  }
  DelzantReport report = validate_delzant(p);
  CHECK_FALSE(report.delzant);
  REQUIRE(report.offending_vertices.size() == 1);
  const RatVector& bad = p.vertices[report.offending_vertices[0]];
  CHECK(bad[0] == 0);
  CHECK(bad[1] == 1);  // fails at (0,1), where |det| = 2
  for (const auto& [vertex, det] : expected) {
    bool should_fail = det != 1;
    bool listed = false;
    for (int ov : report.offending_vertices)
      if (p.vertices[ov] == vertex) listed = true;
    CHECK(listed == should_fail);
  }

  // non-simple vertex: square pyramid apex saturates 4 facets
  std::vector<RatVector> pyramid;
  for (int i = 0; i < 4; ++i) {
    RatVector v(3);
    v << Rational(i & 1), Rational((i >> 1) & 1), Rational(0);
    pyramid.push_back(v);
  }
  RatVector apex(3);
  apex << Rational(1, 2), Rational(1, 2), Rational(1);
  pyramid.push_back(apex);
  std::vector<std::pair<RatVector, Rational>> pf;
  auto nv3 = [](long long a, long long b, long long c) {
    RatVector v(3);
    v << Rational(a), Rational(b), Rational(c);
    return v;
  };
  pf.push_back({nv3(0, 0, 1), Rational(0)});    // z >= 0
  pf.push_back({nv3(2, 0, -1), Rational(0)});   // 2x - z >= 0
  pf.push_back({nv3(-2, 0, -1), Rational(2)});  // 2 - 2x - z >= 0
  pf.push_back({nv3(0, 2, -1), Rational(0)});
  pf.push_back({nv3(0, -2, -1), Rational(2)});
  Polytope pyr = build_polytope(3, pyramid, pf);
  DelzantReport rep = validate_delzant(pyr);
  CHECK_FALSE(rep.delzant);
  bool apex_non_simple = false;
  for (const auto& check : rep.per_vertex)
    if (pyr.vertices[check.vertex] == apex && !check.simple) apex_non_simple = true;
  CHECK(apex_non_simple);
}

TEST_CASE("reflexive predicate") {
  CHECK(validate_reflexive(catalog::cp2_anticanonical()));
  CHECK_FALSE(validate_reflexive(catalog::cp2()));  // origin on the boundary
  CHECK(validate_reflexive(catalog::blowup_anticanonical()));
  CHECK(validate_reflexive(catalog::square()));
}

TEST_CASE("triangulation weights") {
  auto tri = triangulate(catalog::cp2());
  REQUIRE(tri.size() == 1);
  CHECK(tri[0].weight == Rational(1, 2));

  Polytope sq = build_polytope(2, {pt2(0, 0), pt2(1, 0), pt2(1, 1), pt2(0, 1)});
  auto sq_tri = triangulate(sq);
  CHECK(sq_tri.size() >= 2);
  Rational total = 0;
  for (const auto& s : sq_tri) total += s.weight;
  CHECK(total == Rational(1));

  CHECK(volume(catalog::blowup_anticanonical()) == Rational(4));  // shoelace = 4
  CHECK(volume(catalog::cp2_anticanonical()) == Rational(9, 2));
}

TEST_CASE("boundary lattice measure") {
  CHECK(boundary_measure(catalog::cp2()) == Rational(3));
  Polytope sq = build_polytope(2, {pt2(0, 0), pt2(1, 0), pt2(1, 1), pt2(0, 1)});
  CHECK(boundary_measure(sq) == Rational(4));
  CHECK(boundary_measure(catalog::product(Rational(3))) == Rational(8));  // 2p + 2
  CHECK(boundary_measure(catalog::blowup_anticanonical()) == Rational(8));
}

TEST_CASE("reflexive polytopes satisfy m * vol = boundary measure") {
  for (const Polytope& p : {catalog::cp2_anticanonical(), catalog::blowup_anticanonical(),
                            catalog::square()})
    CHECK(Rational(p.dim) * volume(p) == boundary_measure(p));
}

TEST_CASE("unimodular invariance of volume and boundary measure") {
  Rng rng(20240811);
  Polytope base = catalog::blowup_anticanonical();
  for (int trial = 0; trial < 20; ++trial) {
    RatMatrix a = random_unimodular2(rng);
    RatVector t = pt2(Rational(rng.uniform_int(-3, 3)), Rational(rng.uniform_int(-3, 3)));
    Polytope image = transform(base, a, t);
    CHECK(volume(image) == volume(base));
    CHECK(boundary_measure(image) == boundary_measure(base));
  }
}

TEST_CASE("Minkowski relation: Euclidean facet areas close up") {
  for (const Polytope& p : {catalog::blowup_anticanonical(), catalog::product(Rational(3)),
                            catalog::cube3()}) {
    Eigen::VectorXd total = Eigen::VectorXd::Zero(p.dim);
    auto pieces = boundary_pieces(p);
    for (const auto& s : pieces) {
      Eigen::VectorXd normal = to_double(p.facets[s.facet].normal);
      // piece weight is Euclidean area / |normal|, so weight * normal is
      // area * unit normal
      total += to_double(s.weight) * normal;
    }
    CHECK(total.norm() < 1e-12);
  }
}

TEST_CASE("cube triangulation: dimension-3 face recursion") {
  Polytope cube = catalog::cube3();
  CHECK(volume(cube) == Rational(1));
  CHECK(boundary_measure(cube) == Rational(6));
  auto tri = triangulate(cube);
  for (const auto& s : tri) CHECK(s.dim() == 3);
  auto bd = boundary_pieces(cube);
  for (const auto& s : bd) CHECK(s.dim() == 2);
}

TEST_CASE("moment cone of flat space") {
  MomentCone c = catalog::c3();
  REQUIRE(c.dual_rays.size() == 3);
  auto has_ray = [&](long long x, long long y, long long z) {
    for (const auto& u : c.dual_rays)
      if (u[0] == x && u[1] == y && u[2] == z) return true;
    return false;
  };
  CHECK(has_ray(0, 0, 1));
  CHECK(has_ray(1, -1, -1));
  CHECK(has_ray(0, 1, 0));
  REQUIRE(c.decomposition.size() == 1);
  CHECK(c.decomposition[0].det_abs == 1);
}

TEST_CASE("conifold cone") {
  MomentCone c = catalog::conifold();
  REQUIRE(c.dual_rays.size() == 4);
  auto has_ray = [&](long long x, long long y, long long z) {
    for (const auto& u : c.dual_rays)
      if (u[0] == x && u[1] == y && u[2] == z) return true;
    return false;
  };
  CHECK(has_ray(0, 0, 1));
  CHECK(has_ray(1, -1, 0));
  CHECK(has_ray(1, 0, -1));
  CHECK(has_ray(0, 1, 0));
  REQUIRE(c.decomposition.size() == 2);
  CHECK(c.decomposition[0].det_abs == 1);
  CHECK(c.decomposition[1].det_abs == 1);
}

TEST_CASE("cone error paths") {
  auto ray = [](long long a, long long b, long long c) {
    RatVector v(3);
    v << Rational(a), Rational(b), Rational(c);
    return v;
  };
  // first coordinate 2 violates the Gorenstein normalization
  CHECK_THROWS(build_moment_cone({ray(1, 0, 0), ray(1, 1, 0), ray(2, 0, 1)}));
  // shuffled diagram is not cyclically convex
  CHECK_THROWS(build_moment_cone({ray(1, 0, 0), ray(1, 1, 1), ray(1, 1, 0), ray(1, 0, 1)}));
  // collinear diagram spans no area
  CHECK_THROWS(build_moment_cone({ray(1, 0, 0), ray(1, 1, 0), ray(1, 2, 0)}));
}

TEST_CASE("dual rays pair nonnegatively with fan rays") {
  for (const MomentCone& c : {catalog::c3(), catalog::conifold()}) {
    for (const auto& u : c.dual_rays) {
      int zeros = 0;
      for (const auto& v : c.fan_rays) {
        Rational s = 0;
        for (int i = 0; i < 3; ++i) s += u[i] * v[i];
        CHECK(s >= 0);
        if (s == 0) ++zeros;
      }
      CHECK(zeros >= 2);  // each dual ray lies on at least two supporting facets
    }
  }
}

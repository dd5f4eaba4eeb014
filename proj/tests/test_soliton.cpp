#include "doctest.h"

#include "oracles.hpp"
#include "toricvol/catalog.hpp"
#include "toricvol/soliton.hpp"

#include <cmath>

using namespace toricvol;

TEST_CASE("potential values") {
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
  CHECK(soliton_potential(catalog::cp2_anticanonical(), zero) ==
        doctest::Approx(4.5).epsilon(1e-13));

  Eigen::VectorXd e1(2);
  e1 << 1.0, 0.0;
  // separable: int_{-1}^1 e^x dx * 2 = 2 (e - 1/e)
  CHECK(soliton_potential(catalog::square(), e1) ==
        doctest::Approx(2.0 * (M_E - 1.0 / M_E)).epsilon(1e-13));

  // properness gate: origin on the boundary is refused
  CHECK_THROWS_AS(soliton_potential(catalog::cp2(), zero), std::domain_error);
}

TEST_CASE("log-convexity of the potential along lines") {
  Rng rng(314);
  Polytope p = catalog::blowup_anticanonical();
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd c0(2), c1(2);
    c0 << rng.uniform(-1, 1), rng.uniform(-1, 1);
    c1 << rng.uniform(-1, 1), rng.uniform(-1, 1);
    const double w0 = soliton_potential(p, c0);
    const double w1 = soliton_potential(p, c1);
    const double wm = soliton_potential(p, 0.5 * (c0 + c1));
    CHECK(wm * wm <= w0 * w1 * (1.0 + 1e-12));
  }
}

TEST_CASE("gradient and Hessian consistency") {
  Rng rng(2718);
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);

  // symmetric polytopes have vanishing gradient at c = 0
  CHECK(soliton_gradient(catalog::square(), zero).norm() < 1e-14);
  CHECK(soliton_gradient(catalog::cp2_anticanonical(), zero).norm() < 1e-13);

  for (int trial = 0; trial < 30; ++trial) {
    Polytope p = (trial % 2 == 0) ? catalog::blowup_anticanonical() : catalog::square();
    Eigen::VectorXd c(2);
    c << rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5);
    auto w = [&](const Eigen::VectorXd& x) { return soliton_potential(p, x); };
    Eigen::VectorXd g = soliton_gradient(p, c);
    Eigen::VectorXd g_fd = oracles::fd_gradient(w, c);
    CHECK((g - g_fd).norm() <= 1e-6 * std::max(1.0, g.norm()));

    Eigen::MatrixXd h = soliton_hessian(p, c);
    for (int i = 0; i < 2; ++i) {
      auto gi = [&](const Eigen::VectorXd& x) { return soliton_gradient(p, x)[i]; };
      Eigen::VectorXd hrow = oracles::fd_gradient(gi, c);
      CHECK((h.row(i).transpose() - hrow).norm() <= 1e-6 * std::max(1.0, h.norm()));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    CHECK(es.eigenvalues().minCoeff() > 0.0);  // strict convexity
  }
}

TEST_CASE("solver on symmetric polytopes") {
  SolitonField tri = solve_soliton_field(catalog::cp2_anticanonical());
  CHECK(tri.c.norm() < 1e-10);

  SolitonField sq = solve_soliton_field(catalog::square());
  CHECK(sq.c.norm() < 1e-10);
  CHECK(sq.potential_value == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("blow-up soliton matches the grid + bisection oracle") {
  Polytope p = catalog::blowup_anticanonical();
  SolitonField sol = solve_soliton_field(p);

  // swap symmetry fixes the diagonal
  CHECK(sol.c[0] == doctest::Approx(sol.c[1]).epsilon(1e-10));

  // independent oracle: g(t) = int y1 exp(t (y1 + y2)) by the extrapolated
  // midpoint rule, root isolated by bisection
  auto g = [&](double t) {
    return oracles::blowup_quad_integral(
        [t](double x, double y) { return x * std::exp(t * (x + y)); }, 64);
  };
  double lo = -1.0, hi = 0.0;
  REQUIRE(g(lo) < 0.0);
  REQUIRE(g(hi) > 0.0);
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  const double c0_oracle = 0.5 * (lo + hi);
  CHECK(sol.c[0] == doctest::Approx(c0_oracle).epsilon(1e-8));
}

TEST_CASE("Futaki values") {
  Polytope p = catalog::blowup_anticanonical();
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
  Eigen::VectorXd e0 = Eigen::VectorXd::Unit(2, 0), e1 = Eigen::VectorXd::Unit(2, 1);

  // exact moment: int y1 over the quadrilateral is 1/3 (triangle split:
  // conv{(-1,2),(-1,0),(2,-1)} has centroid x = 0, conv{(-1,0),(0,-1),(2,-1)}
  // has area 1 and centroid x = 1/3)
  CHECK(toric_futaki(p, zero, e0) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(toric_futaki(p, zero, e1) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

  // barycenter at the origin kills the classical invariant
  CHECK(std::abs(toric_futaki(catalog::cp2_anticanonical(), zero, e0)) < 1e-13);

  // at the soliton field the obstruction vanishes in every direction
  SolitonField sol = solve_soliton_field(p);
  CHECK(std::abs(toric_futaki(p, sol.c, e0)) < 1e-9);
  CHECK(std::abs(toric_futaki(p, sol.c, e1)) < 1e-9);
}

TEST_CASE("equivariance under unimodular maps") {
  // c*(A P) = A^{-T} c*(P)
  Polytope p = catalog::blowup_anticanonical();
  SolitonField base = solve_soliton_field(p);
  Rng rng(555);
  for (int trial = 0; trial < 5; ++trial) {
    RatMatrix a = RatMatrix::Identity(2, 2);
    for (int k = 0; k < 4; ++k) {
      RatMatrix s = RatMatrix::Identity(2, 2);
      switch (rng.uniform_int(0, 2)) {
        case 0: s(0, 1) = Rational(rng.uniform_int(-1, 1)); break;
        case 1: s(1, 0) = Rational(rng.uniform_int(-1, 1)); break;
        case 2: s << Rational(0), Rational(1), Rational(1), Rational(0); break;
      }
      a = exact_mat_mul(a, s);
    }
    std::vector<RatVector> verts;
    for (const auto& v : p.vertices) verts.push_back(exact_mat_vec(a, v));
    Polytope image = build_polytope(2, verts);
    SolitonField mapped = solve_soliton_field(image);
    Eigen::MatrixXd ad(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) ad(i, j) = to_double(a(i, j));
    Eigen::VectorXd expected = ad.transpose().inverse() * base.c;
    CHECK((mapped.c - expected).norm() < 1e-8);
  }
}

TEST_CASE("multistart uniqueness") {
  // Newton from scattered starting points reaches the same minimizer; run the
  // iteration by hand from random c0 and compare
  Polytope p = catalog::blowup_anticanonical();
  SolitonField ref = solve_soliton_field(p);
  Rng rng(808);
  for (int start = 0; start < 20; ++start) {
    Eigen::VectorXd c(2);
    c << rng.uniform(-2, 2), rng.uniform(-2, 2);
    for (int iter = 0; iter < 60; ++iter) {
      Eigen::VectorXd g = soliton_gradient(p, c);
      if (g.norm() <= 1e-12 * soliton_potential(p, c)) break;
      c += soliton_hessian(p, c).llt().solve(-g);
    }
    CHECK((c - ref.c).norm() < 1e-8);
  }
}

#include "doctest.h"

#include "oracles.hpp"
#include "toricvol/catalog.hpp"
#include "toricvol/sasaki.hpp"

#include <cmath>

using namespace toricvol;

namespace {

Eigen::Vector3d xi3(double a, double b, double c) { return Eigen::Vector3d(a, b, c); }

// closed form for the conifold from the two-cone decomposition
double conifold_vol(double s, double t) { return 3.0 / (s * t * (3.0 - s) * (3.0 - t)); }

// random interior point of the conifold slice {xi_1 = 3, 0 < s,t < 3}
Eigen::Vector3d random_conifold_slice(Rng& rng) {
  return xi3(3.0, rng.uniform(0.2, 2.8), rng.uniform(0.2, 2.8));
}

}  // namespace

TEST_CASE("volume closed form") {
  MomentCone c3 = catalog::c3();
  CHECK(reeb_volume(c3, xi3(3, 1, 1)) == doctest::Approx(1.0).epsilon(1e-14));

  MomentCone coni = catalog::conifold();
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    Eigen::Vector3d xi = random_conifold_slice(rng);
    CHECK(reeb_volume(coni, xi) == doctest::Approx(conifold_vol(xi[1], xi[2])).epsilon(1e-12));
  }

  // homogeneity of degree -(m+1)
  Eigen::Vector3d xi = xi3(3.0, 1.2, 0.7);
  for (double t : {0.5, 2.0})
    CHECK(reeb_volume(coni, t * xi) ==
          doctest::Approx(std::pow(t, -3.0) * reeb_volume(coni, xi)).epsilon(1e-13));

  // boundary / exterior points are rejected
  CHECK_THROWS_AS(reeb_volume(coni, xi3(3, 0, 1)), std::domain_error);
  CHECK_THROWS_AS(reeb_volume(coni, xi3(3, -1, 1)), std::domain_error);
}

TEST_CASE("gradient and Hessian consistency") {
  MomentCone coni = catalog::conifold();
  Rng rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    Eigen::Vector3d xi = random_conifold_slice(rng);
    xi[0] += rng.uniform(-0.2, 0.2);
    if (!reeb_interior(coni, xi)) continue;
    auto vol = [&](const Eigen::VectorXd& x) { return reeb_volume(coni, x); };
    Eigen::VectorXd g = reeb_volume_gradient(coni, xi);
    CHECK((g - oracles::fd_gradient(vol, xi)).norm() <= 1e-7 * g.norm());
    Eigen::MatrixXd h = reeb_volume_hessian(coni, xi);
    for (int i = 0; i < 3; ++i) {
      auto gi = [&](const Eigen::VectorXd& x) { return reeb_volume_gradient(coni, x)[i]; };
      CHECK((h.row(i).transpose() - oracles::fd_gradient(gi, xi)).norm() <=
            1e-6 * h.norm());
    }
    // Euler identity for degree -(m+1)
    CHECK(g.dot(xi) == doctest::Approx(-3.0 * reeb_volume(coni, xi)).epsilon(1e-10));
  }
}

TEST_CASE("slice Hessian is positive definite at random interior points") {
  MomentCone coni = catalog::conifold();
  Rng rng(56);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Vector3d xi = random_conifold_slice(rng);
    Eigen::MatrixXd h = reeb_volume_hessian(coni, xi).bottomRightCorner(2, 2);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("minimizers") {
  ReebVolumeResult flat = minimize_reeb_volume(catalog::c3());
  CHECK((flat.xi_star.xi - xi3(3, 1, 1)).norm() < 1e-9);
  CHECK(flat.volume == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(flat.xi_star.slice_residual == 0.0);

  ReebVolumeResult coni = minimize_reeb_volume(catalog::conifold());
  CHECK((coni.xi_star.xi - xi3(3, 1.5, 1.5)).norm() < 1e-9);
  CHECK(coni.volume == doctest::Approx(16.0 / 27.0).epsilon(1e-12));
  CHECK(coni.hessian_min_eigenvalue > 0.0);
}

TEST_CASE("properness: volume blows up toward the slice boundary") {
  MomentCone coni = catalog::conifold();
  // ray toward the corner (s,t) -> (0,0) of the slice polygon: the volume
  // passes 1e6 while the constraint margin is still far above 1e-6
  double vol = 0.0;
  double margin = 1.0;
  while (margin > 1e-6) {
    vol = reeb_volume(coni, xi3(3.0, margin, margin));
    if (vol > 1e6) break;
    margin *= 0.5;
  }
  CHECK(vol > 1e6);
  CHECK(margin > 1e-6);

  // toward a facet midpoint the blow-up is slower (one vanishing factor)
  CHECK(reeb_volume(coni, xi3(3.0, 1e-5, 1.5)) >
        90.0 * reeb_volume(coni, xi3(3.0, 1e-3, 1.5)));
}

TEST_CASE("obstruction values") {
  MomentCone coni = catalog::conifold();
  ReebVolumeResult min = minimize_reeb_volume(coni);
  CHECK(std::abs(sasaki_futaki(coni, min.xi_star.xi, xi3(0, 1, 0))) < 1e-9);
  CHECK(std::abs(sasaki_futaki(coni, min.xi_star.xi, xi3(0, 0, 1))) < 1e-9);

  // hand derivative of the closed form at (s,t) = (2,1):
  // dV/ds = 3/(t(3-t)) * -(3-2s)/(s(3-s))^2 = (3/2) * (1/4) = 3/8
  CHECK(sasaki_futaki(coni, xi3(3, 2, 1), xi3(0, 1, 0)) ==
        doctest::Approx(3.0 / 8.0).epsilon(1e-12));

  // diagram symmetry s <-> t flips the obstruction pair
  Rng rng(78);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Vector3d xi = random_conifold_slice(rng);
    Eigen::Vector3d swapped = xi3(3.0, xi[2], xi[1]);
    CHECK(sasaki_futaki(coni, xi, xi3(0, 1, 0)) ==
          doctest::Approx(sasaki_futaki(coni, swapped, xi3(0, 0, 1))).epsilon(1e-11));
  }

  // directions off the slice are rejected
  CHECK_THROWS_AS(sasaki_futaki(coni, xi3(3, 1, 1), xi3(1, 0, 0)), std::invalid_argument);
}

TEST_CASE("decomposition independence") {
  // fan the conifold dual cone from a different apex ray
  MomentCone coni = catalog::conifold();
  std::vector<RatVector> duals = coni.dual_rays;
  // rotate the dual-ray order so the fan apex changes, then rebuild
  std::rotate(duals.begin(), duals.begin() + 1, duals.end());
  MomentCone alt = make_moment_cone_explicit(3, coni.fan_rays, duals, {{0, 1, 2}, {0, 2, 3}},
                                             "conifold_alt");
  Rng rng(90);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Vector3d xi = random_conifold_slice(rng);
    CHECK(reeb_volume(coni, xi) == doctest::Approx(reeb_volume(alt, xi)).epsilon(1e-12));
  }
}

TEST_CASE("lattice equivariance fixing the charge covector") {
  // diagram shear (s,t) -> (s+t, t): xi* maps by the same automorphism
  auto ray = [](long long a, long long b, long long c) {
    RatVector v(3);
    v << Rational(a), Rational(b), Rational(c);
    return v;
  };
  MomentCone sheared =
      build_moment_cone({ray(1, 0, 0), ray(1, 1, 0), ray(1, 2, 1), ray(1, 1, 1)}, "coni_shear");
  ReebVolumeResult res = minimize_reeb_volume(sheared);
  CHECK((res.xi_star.xi - xi3(3.0, 3.0, 1.5)).norm() < 1e-8);
  CHECK(res.volume == doctest::Approx(16.0 / 27.0).epsilon(1e-10));
}

TEST_CASE("explicit four-dimensional cone") {
  // flat C^4: dual rays e_2, e_3, e_4 and (1,-1,-1,-1); a single unimodular
  // subcone
  auto ray4 = [](long long a, long long b, long long c, long long d) {
    RatVector v(4);
    v << Rational(a), Rational(b), Rational(c), Rational(d);
    return v;
  };
  std::vector<RatVector> fan = {ray4(1, 0, 0, 0), ray4(1, 1, 0, 0), ray4(1, 0, 1, 0),
                                ray4(1, 0, 0, 1)};
  std::vector<RatVector> dual = {ray4(0, 1, 0, 0), ray4(0, 0, 1, 0), ray4(0, 0, 0, 1),
                                 ray4(1, -1, -1, -1)};
  MomentCone c4 = make_moment_cone_explicit(4, fan, dual, {{0, 1, 2, 3}}, "c4");
  Eigen::VectorXd xi(4);
  xi << 4, 1, 1, 1;
  CHECK(reeb_volume(c4, xi) == doctest::Approx(1.0).epsilon(1e-14));
  ReebVolumeResult res = minimize_reeb_volume(c4);
  Eigen::VectorXd expected(4);
  expected << 4, 1, 1, 1;
  CHECK((res.xi_star.xi - expected).norm() < 1e-9);
}

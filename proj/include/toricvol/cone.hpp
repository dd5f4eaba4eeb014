#ifndef TORICVOL_CONE_HPP
#define TORICVOL_CONE_HPP

#include "toricvol/rational.hpp"

#include <string>
#include <vector>

namespace toricvol {

// Gorenstein toric cone. Fan rays (1, w_a) generate the Kaehler cone fan; the
// moment cone C* = { y : <y, v_a> >= 0 } is stored through its primitive ray
// generators and a simplicial decomposition used for closed-form volumes.
struct MomentCone {
  int ambient_dim = 0;  // m + 1
  std::vector<RatVector> fan_rays;   // primitive, first coordinate 1
  std::vector<RatVector> dual_rays;  // primitive generators of C*
  struct Subcone {
    std::vector<int> dual_ray_indices;  // ambient_dim generators
    BigInt det_abs;
  };
  std::vector<Subcone> decomposition;
  std::string name;

  int charge_dim() const { return ambient_dim - 1; }  // m
  Eigen::MatrixXd dual_rays_as_double() const;        // one row per dual ray
  Eigen::MatrixXd fan_rays_as_double() const;
};

// Builds the cone from fan rays alone; the automatic dual-ray computation
// (adjacent cross products) covers ambient dimension 3, the paper's worked
// setting. Rays must list a strictly convex lattice polygon {w_a} in cyclic
// order.
MomentCone build_moment_cone(const std::vector<RatVector>& fan_rays, std::string name = {});

// General-dimension constructor with user-supplied dual data; validates
// <u, v> >= 0 for every pair and the decomposition determinants.
MomentCone make_moment_cone_explicit(int ambient_dim, std::vector<RatVector> fan_rays,
                                     std::vector<RatVector> dual_rays,
                                     std::vector<std::vector<int>> decomposition,
                                     std::string name = {});

}  // namespace toricvol

#endif

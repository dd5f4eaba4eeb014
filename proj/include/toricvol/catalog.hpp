#ifndef TORICVOL_CATALOG_HPP
#define TORICVOL_CATALOG_HPP

#include "toricvol/cone.hpp"
#include "toricvol/polytope.hpp"

namespace toricvol::catalog {

// moment polytope of the projective plane, conv{(0,0),(1,0),(0,1)}
Polytope cp2();
// anticanonical triangle conv{(-1,-1),(2,-1),(-1,2)}
Polytope cp2_anticanonical();
// conv{(-1,-1),(1,-1),(1,1),(-1,1)}
Polytope square();
// [0,p] x [0,1], the product-family rectangle
Polytope product(const Rational& p);
// conv{(0,0),(p,0),(p,1-p),(0,1)}, the blow-up trapezoid, 0 < p < 1
Polytope blowup(const Rational& p);
// anticanonical quadrilateral {(-1,0),(0,-1),(2,-1),(-1,2)} of the blow-up
Polytope blowup_anticanonical();
// unit cube with explicit facets (exercises dimension-3 integration)
Polytope cube3();

// fan rays (1,0,0),(1,1,0),(1,0,1): flat C^3 cone
MomentCone c3();
// fan rays (1,0,0),(1,1,0),(1,1,1),(1,0,1): conifold
MomentCone conifold();

}  // namespace toricvol::catalog

#endif

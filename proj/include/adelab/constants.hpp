#pragma once

#include <cmath>

#include "adelab/numeric.hpp"

namespace adelab::reference {

// Closed-form Fubini-Study height of P^n: (n+1)/2 * sum_{j=2}^{n+1} 1/j.
// For n = 3 this is 13/6; the normalized value divides by (dim+1)*deg = 4.
inline const Rat fs_height_p3() { return Rat(13, 6); }
inline const Rat fs_normalized_height_p3() { return Rat(13, 24); }

// Fubini-Study height of a torsion translate of the degree-3 monomial curve
// t -> (1 : z1 t : z2 t^2 : z3 t^3): 3/2 + pi (1 - 2/4) cot(pi/4), i.e.
// 3/2 + pi/2; normalized by (dim+1)*deg = 6.
inline double veronese_fs_height() { return 1.5 + M_PI / 2.0; }
inline double veronese_fs_normalized() { return 0.25 + M_PI / 12.0; }

}  // namespace adelab::reference

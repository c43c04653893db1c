#pragma once

#include <vector>

#include "iq/curve.hpp"
#include "iq/torsion.hpp"

namespace iq::oracle {

// Brute-force reference kernels for the test suites. These deliberately
// re-derive everything from the element types alone: no Cornacchia, no
// residue tables shared with the production counters, and a private copy of
// the affine addition formulas.

// All a + b*omega with norm exactly n, by scanning the b-range the norm form
// allows; sorted by (a, b).
std::vector<QuadInt> bf_norm_reps(const mpz_class& n, const FieldDesc& f);

// |curve mod pi| by full enumeration of the residue-field plane, infinity
// included. BadReduction when pi divides 4A^3 + 27B^2 or the residue field
// exceeds 10^4 elements.
long bf_point_count(const Curve& c, const PrimeElem& pi);

// Order by repeated addition only: Finite(m) iff m*p hits infinity with
// m <= cap; no integrality shortcut.
OrderResult bf_order(const Point& p, const Curve& c, long cap = 100);

}  // namespace iq::oracle

#pragma once

#include "invt/numeric.hpp"

#include <vector>

namespace invt {

/// Dense univariate polynomial with exact rational coefficients,
/// ascending order; an empty vector is the zero polynomial.
using Poly = std::vector<Rat>;

namespace poly {

Poly trim(Poly p);
int degree(const Poly& p);  // -1 for zero
Rat eval(const Poly& p, const Rat& x);
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& p, const Rat& c);
bool equal(const Poly& a, const Poly& b);

/// p(a*x + b)
Poly compose_linear(const Poly& p, const Rat& a, const Rat& b);

/// Divide p(x) by (c1*x + c0): p = q*(c1 x + c0) + r with r constant.
struct LinearDivision {
  Poly quotient;
  Rat remainder;
};
LinearDivision divide_linear(const Poly& p, const Rat& c1, const Rat& c0);

/// Exact sum of p(J) over the half-integer lattice
/// J = two_lo/2, two_lo/2 + 1, ..., two_hi/2 (twice-values step by 2).
/// Empty when two_hi < two_lo.
Rat sum_over_lattice(const Poly& p, const Int& two_lo, const Int& two_hi);

/// Prefix-sum polynomial: P(X) with P(X) = sum over lattice points
/// J = two_lo/2 .. X of p(J), as a polynomial in X.  Valid for X on the
/// lattice with X >= two_lo/2 - 1 (one step below gives 0).
Poly prefix_sum_from(const Poly& p, const Int& two_lo);

}  // namespace poly

}  // namespace invt

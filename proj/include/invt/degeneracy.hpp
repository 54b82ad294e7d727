#pragma once

#include "invt/polynomial.hpp"

#include <map>

namespace invt {

/// Guard on the direct tabulation: n * 2j entries at most.
inline constexpr long kDirectGuard = 10000000;

/// D(j,n,.) tabulated over the admissible total-spin lattice.
/// The lattice starts at two_min (0 or 1 by parity of n*2j) and steps by 2.
struct DegeneracyTable {
  Spin j;
  int n = 0;
  Int two_min;
  Int two_max;                 // n * 2j
  std::vector<Int> values;     // indexed by (twoJ - two_min)/2

  const Int& at_two(const Int& two_J) const;
  Int total_weighted() const;  // sum_J (2J+1) D(j,n,J)
  std::map<Int, Int> as_map() const;  // twoJ -> D
};

/// D(j,n,.) as contiguous rational-coefficient polynomial segments over
/// closed twice-spin intervals [two_lo, two_hi]; the large-j representation.
class PiecewisePoly {
 public:
  struct Segment {
    Int two_lo;
    Int two_hi;
    Poly coeffs;  // polynomial in the spin value J
  };

  PiecewisePoly() = default;
  PiecewisePoly(Spin j, int n, std::vector<Segment> segments);

  const Spin& j() const { return j_; }
  int n() const { return n_; }
  const std::vector<Segment>& segments() const { return segs_; }
  const Int& two_min() const { return segs_.front().two_lo; }
  const Int& two_max() const { return segs_.back().two_hi; }

  /// Exact value at an admissible twice-spin; 0 outside the support or at
  /// inadmissible parity.
  Int eval_two(const Int& two_J) const;

  /// Index of the segment whose interval contains two_J (must be in range).
  size_t segment_index(const Int& two_J) const;

 private:
  Spin j_;
  int n_ = 0;
  std::vector<Segment> segs_;
};

/// D(j,n,J) by iterated convolution over a full table.  Guarded by
/// kDirectGuard; inadmissible parity returns 0.
Int degeneracy_direct(const Spin& j, int n, const Spin& J);

/// Full direct table for (j,n).
DegeneracyTable degeneracy_table(const Spin& j, int n);

/// Exact closed-form D(j,n,.) for arbitrary (astronomically large) j,
/// built by running the convolution recursion on piecewise polynomials
/// with Faulhaber prefix sums.
PiecewisePoly degeneracy_symbolic(const Spin& j, int n);

/// sum_J D(j,n_A,J) D(j,n-n_A,J): dimension of the invariant subspace.
/// Returns 0 when parity forbids a singlet.
Int invariant_dimension(const Spin& j, int n, int n_a);

/// sum_J of the product of two piecewise polynomials over the common support.
Rat pairing_sum(const PiecewisePoly& a, const PiecewisePoly& b);

}  // namespace invt

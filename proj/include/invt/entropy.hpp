#pragma once

#include "invt/degeneracy.hpp"

#include <array>
#include <optional>

namespace invt {

/// Ensemble-average swap moment over the invariant subspace.
/// numerator = sum_J D_Abar^2 D_A/(2J+1) + sum_J D_A^2 D_Abar/(2J+1),
/// z1 = numerator / (dim^2 + dim).
struct Z1Result {
  Int dim_inv;
  HarmonicCombo numerator;        // exact rational + harmonic terms
  std::optional<Rat> exact;       // set when every harmonic argument is small
  Real value() const;
};

struct EntropyReport {
  Spin j;
  int n = 0;
  int n_a = 0;
  Int dim_inv;
  Real z1_bar;
  std::optional<Rat> z1_bar_exact;
  Real s2_bar;     // -ln z1_bar, nats
  Real s_max;      // n_A ln(2j+1)
  Real i_inv;      // s_max - s2_bar
  Real i_full;     // (1/2)(2j+1)^{n_A - n_Abar}
  int lambda_n = 0;  // parity multiplicity diagnostic: 1 odd n, 2 even n
};

struct FluctuationReport {
  Spin j;
  int n = 0;
  int n_a = 0;
  Int dim_inv;
  Rat f_bound_exact;
  Real f_bound;
  Real z0_var_bound;  // 6 / dim_inv
  Real delta;
  Real prob_z1;       // Markov bound on Prob(|Z1/Z1bar - 1| >= delta/4)
  Real prob_z0;       // 96/(delta^2 dim_inv)
};

/// A permutation of {0,1,2,3}.
struct PermutationS4 {
  std::array<int, 4> images;
  PermutationS4 then(const PermutationS4& g) const;  // apply *this, then g
  int cycle_count() const;
  static const std::vector<PermutationS4>& all();
  static PermutationS4 pair_swap();  // (01)(23), the F_A x F_A pattern
};

/// Exact Z1-bar.  Requires 1 <= n_A <= n/2 and a nonempty invariant
/// subspace (throws std::domain_error otherwise).
Z1Result z1_bar(const Spin& j, int n, int n_a);

EntropyReport entropy_report(const Spin& j, int n, int n_a);

/// One report per n in [n_min, n_max] with n_A = n/2, at integer spin j.
std::vector<EntropyReport> deficit_table(const Spin& j, int n_min, int n_max);

/// Spin used by the table/CLI for a requested local dimension d: j =
/// (d-1)/2 when d is odd, else rounded up to the integer spin d/2 so that
/// every n has invariant tensors.
Spin spin_for_dimension(const Int& d);

/// Four-copy fluctuation bound f(j,n) of the S4 Schur average, exact.
/// Uses the direct degeneracy tables (guarded), plus Markov tail bounds
/// at the given delta.
FluctuationReport fluctuation_bound(const Spin& j, int n, int n_a, const Real& delta);

/// Rising factorial dim (dim+1) ... (dim+copies-1).
Int c_factor(const Int& dim, int copies);

}  // namespace invt

#pragma once

#include "invt/degeneracy.hpp"

#include <Eigen/Dense>

namespace invt {

/// A real coupling coefficient sign * sqrt(square), kept exact.
struct CgcValue {
  int sign = 0;        // -1, 0, +1
  Rat square;          // >= 0; the coefficient squared
  bool is_zero() const { return sign == 0; }
  double to_double() const;
  CgcValue times(const CgcValue& o) const;
  static CgcValue zero() { return {}; }
  static CgcValue one() { return {1, Rat(1)}; }
};

/// Exact Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> in the
/// Condon-Shortley convention, via the Racah single-sum closed form.
/// Magnetic numbers are signed and passed as twice their value.
/// Selection-rule failures give the zero value; out-of-range magnetic
/// numbers throw.
CgcValue cgc(const Spin& j1, const Int& two_m1, const Spin& j2, const Int& two_m2,
             const Spin& J, const Int& two_M);

/// Exact linear combination sum_i c_i sqrt(s_i) with squarefree integer
/// radicands s_i; closed under the products arising in coefficient sums.
class RootSum {
 public:
  void add(const Rat& coeff, const Rat& radicand);
  void add_product(const CgcValue& a, const CgcValue& b);
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  Rat rational_value() const;  // throws when irrational terms remain
  double to_double() const;
  const std::map<Int, Rat>& terms() const { return terms_; }

 private:
  std::map<Int, Rat> terms_;  // squarefree radicand -> coefficient
};

/// Sequential coupling chain over n identical leaf spins j: labels[k] is
/// twice the total spin of the first k+2 leaves; the last label is the
/// root J.  n = 1 has no labels and root j.
struct CouplingTree {
  Spin j;
  int n = 1;
  std::vector<Int> twice_labels;  // size n-1

  Int twice_root() const { return twice_labels.empty() ? j.twice() : twice_labels.back(); }
  bool admissible() const;  // every step satisfies the triangle rule
};

/// All admissible label chains for n spins j ending at root twice-spin
/// two_J; the count equals the degeneracy D(j,n,J).
std::vector<CouplingTree> enumerate_trees(const Spin& j, int n, const Int& two_J);

/// Coupled-basis component <m1...mn | tree; J M>: the product of the
/// chain's Clebsch-Gordan coefficients.  Zero unless sum(m) = M.
CgcValue tree_coefficient(const CouplingTree& tree, const std::vector<Int>& twice_m,
                          const Int& twice_M);

/// Orthonormal basis of the singlet subspace of n spins j, expressed over
/// the uncoupled product basis, one column per (A-chain, J, Abar-chain)
/// label set.  Built from the contraction
///   sum_M (-1)^{J-M}/sqrt(2J+1) T^{J,M}_A T^{J,-M}_Abar.
struct InvariantBasis {
  Spin j;
  int n = 0;
  int n_a = 0;
  long dim_leg = 0;  // 2j+1

  struct Label {
    std::vector<Int> a_labels;
    Int two_J;
    std::vector<Int> b_labels;
  };
  std::vector<Label> labels;
  Eigen::MatrixXd vectors;  // (dim_leg^n) x labels.size(), orthonormal columns

  long dim_inv() const { return static_cast<long>(labels.size()); }
};

/// Guard: at most 10^7 product-basis components.
InvariantBasis invariant_basis(const Spin& j, int n, int n_a = -1);

/// Largest relative norm of J_z v, J_+ v, J_- v over the product basis;
/// invariant vectors give ~0.
double invariance_residual(const Spin& j, int n, const Eigen::VectorXd& v);

/// Exact verification of both completeness identities of the coefficients
/// for the pair (j1, j2): rows (fixed m1,m2 summed) against delta_{JJ'}
/// delta_{MM'}, and columns against delta_{m m'}.
struct OrthogonalityReport {
  bool coupled_rows_ok = false;    // sum_{m1 m2} C C' = delta
  bool uncoupled_rows_ok = false;  // sum_{J M} C C' = delta
  double worst_residual = 0.0;
  bool pass() const { return coupled_rows_ok && uncoupled_rows_ok; }
};

OrthogonalityReport orthogonality_check(const Spin& j1, const Spin& j2);

}  // namespace invt

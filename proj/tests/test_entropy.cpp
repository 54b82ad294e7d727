#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "invt/entropy.hpp"

using namespace invt;

namespace {

// oracle: the same two ratio sums assembled from the direct tables with
// plain rational arithmetic, no piecewise polynomials or harmonic numbers
Rat z1_oracle(const Spin& j, int n, int n_a) {
  DegeneracyTable a = degeneracy_table(j, n_a);
  DegeneracyTable b = degeneracy_table(j, n - n_a);
  Int dim = 0;
  Rat num = 0;
  for (Int t = 0; t <= b.two_max; ++t) {
    const Int& da = a.at_two(t);
    const Int& db = b.at_two(t);
    if (da == 0 || db == 0) continue;
    dim += da * db;
    num += Rat(da * db * db + da * da * db, t + 1);
  }
  return num / Int(dim * dim + dim);
}

}  // namespace

TEST_CASE("swap moment: exact small cases") {
  set_precision(60);
  Z1Result a = z1_bar(parse_spin("1/2"), 4, 2);
  REQUIRE(a.exact.has_value());
  CHECK(*a.exact == Rat(4, 9));
  CHECK(a.dim_inv == 2);

  Z1Result b = z1_bar(Spin(2), 3, 1);
  REQUIRE(b.exact.has_value());
  CHECK(*b.exact == Rat(1, 3));  // dim_inv = 1, rho_A maximally mixed on 3 levels
}

TEST_CASE("swap moment equals the direct-table oracle for all small cases") {
  set_precision(60);
  for (long tj = 1; tj <= 8; ++tj) {
    for (int n = 3; n <= 7; ++n) {
      if ((tj * n) % 2 != 0) continue;
      Spin j = Spin::from_twice(Int(tj));
      for (int na = 1; na < n; ++na) {
        Z1Result z = z1_bar(j, n, na);
        REQUIRE(z.exact.has_value());
        CHECK(*z.exact == z1_oracle(j, n, na));
      }
    }
  }
}

TEST_CASE("exact rational path agrees with the high-precision path") {
  set_precision(80);
  for (long tj = 1; tj <= 4; ++tj) {
    for (int n = 4; n <= 6; ++n) {
      if ((tj * n) % 2 != 0) continue;
      Z1Result z = z1_bar(Spin::from_twice(Int(tj)), n, n / 2);
      REQUIRE(z.exact.has_value());
      CHECK(abs(z.value() - Real(*z.exact)) < pow(Real(10), -70));
    }
  }
}

TEST_CASE("empty invariant subspace is rejected") {
  CHECK_THROWS_AS(z1_bar(parse_spin("1/2"), 5, 2), std::domain_error);
  CHECK_THROWS_AS(z1_bar(parse_spin("3/2"), 5, 2), std::domain_error);
}

TEST_CASE("bipartition symmetry") {
  set_precision(60);
  for (long tj = 1; tj <= 4; ++tj) {
    for (int n = 4; n <= 7; ++n) {
      if ((tj * n) % 2 != 0) continue;
      Spin j = Spin::from_twice(Int(tj));
      for (int na = 1; na <= n / 2; ++na) {
        Z1Result x = z1_bar(j, n, na);
        Z1Result y = z1_bar(j, n, n - na);
        REQUIRE(x.exact.has_value());
        CHECK(*x.exact == *y.exact);
      }
    }
  }
}

TEST_CASE("entropy report invariants: ordering and units") {
  set_precision(60);
  for (long tj : {2L, 4L, 10L}) {
    for (int n = 4; n <= 6; ++n) {
      EntropyReport r = entropy_report(Spin::from_twice(Int(tj)), n, n / 2);
      CHECK(r.s2_bar <= r.s_max);
      CHECK(r.i_inv >= 0);
      CHECK(r.lambda_n == (n % 2 == 0 ? 2 : 1));
    }
  }
}

TEST_CASE("average swap normalization is exactly one") {
  // both Schur terms restore dim^2 + dim over dim^2 + dim
  for (long tj = 1; tj <= 4; ++tj) {
    for (int n = 4; n <= 6; ++n) {
      if ((tj * n) % 2 != 0) continue;
      Int dim = invariant_dimension(Spin::from_twice(Int(tj)), n, n / 2);
      if (dim == 0) continue;
      Rat z0 = Rat(dim * dim + dim, dim * dim + dim);
      CHECK(z0 == 1);
    }
  }
}

TEST_CASE("large-scale five-leg deficit approaches its closed-form constant") {
  set_precision(300);
  Spin j = spin_for_dimension(pow(Int(10), 100));
  EntropyReport r = entropy_report(j, 5, 2);
  Real ln2 = log(Real(2));
  Real limit = 2 * ln2 - log(Real(25) / 4) + log(Real(9) / 2 * ln2 - Real(5) / 4);
  CHECK(abs(r.i_inv - limit) < pow(Real(10), -6));
}

TEST_CASE("four-leg deficit equals its harmonic closed form") {
  set_precision(300);
  Int d = pow(Int(10), 100);
  Spin j = spin_for_dimension(d);
  Int d_eff = j.twice() + 1;
  EntropyReport r = entropy_report(j, 4, 2);
  // independent assembly: ln(2 sum_{I=0}^{2j} 1/(2I+1)) - ln(1 + 1/d)
  Real s = odd_reciprocal_sum(Int(0), j.twice());
  Real formula = log(2 * s) - log(Real(1) + Real(1) / Real(d_eff));
  CHECK(abs(r.i_inv - formula) < pow(Real(10), -40));
  CHECK(abs(r.i_inv - Real("5.4477")) < Real("5e-5"));
}

TEST_CASE("deficit converges as the spin scale grows") {
  set_precision(300);
  Spin j80 = spin_for_dimension(pow(Int(10), 80));
  Spin j100 = spin_for_dimension(pow(Int(10), 100));
  for (int n = 5; n <= 9; ++n) {
    Real a = entropy_report(j80, n, n / 2).i_inv;
    Real b = entropy_report(j100, n, n / 2).i_inv;
    CHECK(abs(a - b) < pow(Real(10), -3));
  }
}

TEST_CASE("spin from local dimension") {
  CHECK(spin_for_dimension(Int(3)).twice() == 2);
  CHECK(spin_for_dimension(Int(4)).twice() == 4);  // even d rounds up to integer spin
  CHECK(spin_for_dimension(Int(7)).twice() == 6);
  CHECK_THROWS_AS(spin_for_dimension(Int(0)), std::invalid_argument);
}

TEST_CASE("permutation cycle census") {
  int census[5] = {0, 0, 0, 0, 0};
  for (const auto& g : PermutationS4::all()) ++census[g.cycle_count()];
  CHECK(census[4] == 1);
  CHECK(census[3] == 6);
  CHECK(census[2] == 11);
  CHECK(census[1] == 6);
  CHECK(PermutationS4::all().size() == 24);
  // composition: (01)(23) applied twice is the identity
  PermutationS4 s = PermutationS4::pair_swap();
  CHECK(s.then(s).cycle_count() == 4);
}

TEST_CASE("fluctuation bound: exact value and tail bounds") {
  set_precision(60);
  FluctuationReport r = fluctuation_bound(parse_spin("1/2"), 4, 2, Real(2));
  CHECK(r.f_bound_exact == Rat(25, 8));
  CHECK(r.dim_inv == 2);
  CHECK(abs(r.z0_var_bound - Real(3)) < pow(Real(10), -50));
  // Markov: f/(delta/4)^2 with delta = 2
  CHECK(abs(r.prob_z1 - Real(Rat(25, 2))) < pow(Real(10), -45));
  CHECK(abs(r.prob_z0 - Real(12)) < pow(Real(10), -45));
}

TEST_CASE("fluctuation bound decays like the inverse square of the spin") {
  set_precision(60);
  // steeper than the advertised ~1/j: the exact ratio per doubling is ~4
  Real prev = 0;
  for (long tj : {20L, 40L, 80L, 160L}) {
    FluctuationReport r = fluctuation_bound(Spin::from_twice(Int(tj)), 5, 2, Real(1) / 2);
    if (prev != 0) {
      Real ratio = prev / r.f_bound;
      CHECK(ratio > Real(3.5));
      CHECK(ratio < Real(4.3));
    }
    prev = r.f_bound;
  }
}

TEST_CASE("rising factorial") {
  CHECK(c_factor(Int(2), 2) == 6);
  CHECK(c_factor(Int(2), 4) == 120);
  CHECK(c_factor(Int(1), 4) == 24);
  CHECK_THROWS_AS(c_factor(Int(0), 2), std::invalid_argument);
}

TEST_CASE("deficit table layout") {
  set_precision(60);
  auto rows = deficit_table(Spin(6), 4, 6);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].n == 4);
  CHECK(rows[0].n_a == 2);
  CHECK(rows[2].n == 6);
  CHECK(rows[2].n_a == 3);
  CHECK_THROWS_AS(deficit_table(Spin(6), 2, 5), std::invalid_argument);
}

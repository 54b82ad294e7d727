#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "invt/numeric.hpp"

#include <boost/math/constants/constants.hpp>

using namespace invt;

TEST_CASE("spin parsing accepts all documented forms") {
  CHECK(parse_spin("3/2").twice() == 3);
  CHECK(parse_spin("1.5").twice() == 3);
  CHECK(parse_spin("2").twice() == 4);
  CHECK(parse_spin("0.5").twice() == 1);
  CHECK(parse_spin("0").twice() == 0);
  CHECK(parse_spin("1e100").twice() == 2 * pow(Int(10), 100));
  CHECK(parse_spin("7/1").twice() == 14);
  CHECK(parse_spin("3.0").twice() == 6);
  CHECK_THROWS_AS(parse_spin("1/3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_spin("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_spin(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_spin("1.25"), std::invalid_argument);
}

TEST_CASE("big integer parsing") {
  CHECK(parse_big_integer("123") == 123);
  CHECK(parse_big_integer("1e3") == 1000);
  CHECK(parse_big_integer("25e2") == 2500);
  CHECK(parse_big_integer("1e100") == pow(Int(10), 100));
  CHECK_THROWS_AS(parse_big_integer("1e-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_big_integer("abc"), std::invalid_argument);
}

TEST_CASE("spin stores twice the value") {
  Spin s = Spin::integer(5);
  CHECK(s.twice() == 10);
  CHECK(s.is_integer());
  CHECK(!parse_spin("1/2").is_integer());
  CHECK(parse_spin("3/2").value() == Rat(3, 2));
  CHECK_THROWS_AS(Spin(Int(-1)), std::invalid_argument);
}

TEST_CASE("rational arithmetic obeys the field axioms on sampled values") {
  // fixed pseudo-random values; exactness is the point, not coverage
  std::vector<Rat> vals;
  long x = 12345;
  for (int i = 0; i < 8; ++i) {
    x = (x * 1103515245 + 12345) % 2147483647;
    vals.emplace_back(Int(x % 2000 - 1000), Int(x % 97 + 1));
  }
  for (const auto& a : vals) {
    CHECK(a + 0 == a);
    CHECK(a * 1 == a);
    CHECK(a - a == 0);
    if (a != 0) CHECK(a / a == 1);
    for (const auto& b : vals) {
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      for (const auto& c : vals) {
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
      }
    }
  }
}

TEST_CASE("bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == Rat(-1, 2));
  CHECK(bernoulli(2) == Rat(1, 6));
  CHECK(bernoulli(3) == 0);
  CHECK(bernoulli(12) == Rat(-691, 2730));
}

TEST_CASE("power sums match brute force") {
  for (unsigned k = 0; k <= 6; ++k) {
    for (long a = -3; a <= 3; ++a) {
      for (long b = a - 1; b <= a + 7; ++b) {
        Rat brute = 0;
        for (long t = a; t <= b; ++t) {
          Rat p = 1;
          for (unsigned i = 0; i < k; ++i) p *= t;
          brute += p;
        }
        CHECK(power_sum(k, Int(a), Int(b)) == brute);
      }
    }
  }
}

TEST_CASE("harmonic: exact, asymptotic, and splice agreement") {
  set_precision(60);
  CHECK(harmonic_exact(Int(1)) == 1);
  CHECK(harmonic_exact(Int(4)) == Rat(25, 12));
  CHECK(harmonic(Int(0)) == 0);
  CHECK(harmonic(Int(-5)) == 0);

  // direct vs asymptotic on both sides of the default crossover
  for (long m : {100000L, 999999L, 1000001L, 2000000L}) {
    Real direct = harmonic(Int(m), Int(3000000));
    Real asym = harmonic(Int(m), Int(10));
    CHECK(abs(direct - asym) < pow(Real(10), -50));
  }
}

TEST_CASE("euler gamma literal matches an independent computation") {
  set_precision(200);
  Real mine = euler_gamma();
  Real ref = boost::math::constants::euler<Real>();
  CHECK(abs(mine - ref) < pow(Real(10), -195));
}

TEST_CASE("odd reciprocal sums") {
  set_precision(60);
  CHECK(odd_reciprocal_sum_exact(Int(0), Int(2)) == Rat(1) + Rat(1, 3) + Rat(1, 5));
  Real v = odd_reciprocal_sum(Int(0), Int(100));
  CHECK(abs(v - Real(odd_reciprocal_sum_exact(Int(0), Int(100)))) < pow(Real(10), -50));
  // large-argument asymptotic value: a=0, b=2e100
  Int b = 2 * pow(Int(10), 100);
  Real big = odd_reciprocal_sum(Int(0), b);
  Real approx = log(Real(b)) / 2 + log(Real(2)) + euler_gamma() / 2;
  CHECK(abs(big - approx) < Real(1) / Real(b));
}

TEST_CASE("harmonic combos evaluate exactly and in high precision") {
  set_precision(60);
  HarmonicCombo c;
  c.add_rational(Rat(1, 7));
  c.add_harmonic(Int(10), Rat(2));
  c.add_harmonic(Int(10), Rat(-1));
  c.add_harmonic(Int(3), Rat(1, 2));
  Rat exact = Rat(1, 7) + harmonic_exact(Int(10)) + Rat(1, 2) * harmonic_exact(Int(3));
  CHECK(c.exact_value() == exact);
  CHECK(abs(c.evaluate() - Real(exact)) < pow(Real(10), -50));

  HarmonicCombo d;
  d.add_harmonic(Int(10), Rat(-1));
  c += d;
  CHECK(c.harmonic_terms().count(Int(10)) == 0);
}

TEST_CASE("lattice reciprocal sums over both parities") {
  set_precision(60);
  for (long lo = 0; lo <= 5; ++lo) {
    for (long hi = lo; hi <= lo + 14; hi += 2) {
      Rat brute = 0;
      for (long t = lo; t <= hi; t += 2) brute += Rat(1, t + 1);
      HarmonicCombo c = lattice_reciprocal_sum(Int(lo), Int(hi));
      CHECK(c.exact_value() == brute);
    }
  }
  CHECK(lattice_reciprocal_sum(Int(4), Int(2)).exact_value() == 0);
}

TEST_CASE("precision control") {
  set_precision(80);
  CHECK(precision() == 80);
  set_precision(300);
  CHECK(precision() == 300);
  CHECK_THROWS_AS(set_precision(2), std::invalid_argument);
}

#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace invt {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

/// Arbitrary-precision real; precision is the MPFR default precision,
/// set process-wide via set_precision() (decimal digits).
using Real = boost::multiprecision::mpfr_float;

/// Default working precision in decimal digits.
inline constexpr unsigned kDefaultPrecision = 300;

/// Thrown when a computation exceeds a size guard (as opposed to a
/// malformed request).
struct guard_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void set_precision(unsigned decimal_digits);
unsigned precision();

/// Euler-Mascheroni constant, truncated from a 1000-digit literal to the
/// current working precision.
Real euler_gamma();

/// Half-integer spin stored as its doubled value, so arithmetic on spins
/// and magnetic numbers stays in the integers.  j = 3/2 has twice() == 3.
class Spin {
 public:
  Spin() : twice_(0) {}
  explicit Spin(Int twice) : twice_(std::move(twice)) {
    if (twice_ < 0) throw std::invalid_argument("Spin: negative twice-value");
  }
  static Spin from_twice(Int t) { return Spin(std::move(t)); }
  static Spin integer(Int v) { return Spin(2 * std::move(v)); }

  const Int& twice() const { return twice_; }
  Rat value() const { return Rat(twice_, 2); }
  bool is_integer() const { return twice_ % 2 == 0; }

  friend bool operator==(const Spin& a, const Spin& b) { return a.twice_ == b.twice_; }
  friend bool operator!=(const Spin& a, const Spin& b) { return a.twice_ != b.twice_; }
  friend bool operator<(const Spin& a, const Spin& b) { return a.twice_ < b.twice_; }
  friend bool operator<=(const Spin& a, const Spin& b) { return a.twice_ <= b.twice_; }

 private:
  Int twice_;
};

/// Parse "3/2", "1.5", "2", "1e100" (integer mantissa times power of ten,
/// possibly ending in .5) into a Spin.  Throws std::invalid_argument.
Spin parse_spin(const std::string& s);

/// Parse a non-negative big integer given as digits or <mantissa>e<exponent>.
Int parse_big_integer(const std::string& s);

/// Bernoulli number B_k (B_1 = -1/2 convention).  Cached, thread-safe.
Rat bernoulli(unsigned k);

/// Binomial coefficient as exact integer.
Int binomial(unsigned n, unsigned k);

/// Coefficients (ascending) of the Faulhaber polynomial F_k(T) with
/// F_k(T) = sum_{s=0}^{T} s^k for integer T >= -1 (F_k(-1) = 0).
std::vector<Rat> faulhaber_poly(unsigned k);

/// Exact power sum sum_{t=a}^{b} t^k via Faulhaber.  Empty range (a == b+1)
/// returns 0.  Requires k <= 64 and a <= b+1.
Rat power_sum(unsigned k, const Int& a, const Int& b);

/// Harmonic number H(m) = sum_{k=1}^{m} 1/k at the current precision.
/// H(m <= 0) = 0.  Below `crossover` the partial sum is evaluated directly;
/// above it the asymptotic series ln m + gamma + 1/(2m) - sum B_2k/(2k m^2k)
/// is used, truncated once a term drops below the working precision.
Real harmonic(const Int& m, const Int& crossover = Int(1000000));

/// Exact rational H(m) for small m (test oracle; m <= 10^5 guard).
Rat harmonic_exact(const Int& m);

/// sum_{I=a}^{b} 1/(2I+1) at the current precision, assembled from
/// harmonic numbers; valid for astronomically large b.
Real odd_reciprocal_sum(const Int& a, const Int& b);

/// Exact rational sum_{I=a}^{b} 1/(2I+1) (guarded, b - a <= 10^6).
Rat odd_reciprocal_sum_exact(const Int& a, const Int& b);

/// An exact rational plus an exact-rational combination of harmonic numbers
/// at (possibly huge) integer arguments: base + sum_i coeff_i * H(m_i).
/// Keeping the combination symbolic until the final evaluation avoids the
/// catastrophic cancellation between the Faulhaber parts of different
/// degeneracy segments, which cancel exactly in rational arithmetic.
class HarmonicCombo {
 public:
  void add_rational(const Rat& r) { base_ += r; }
  void add_harmonic(const Int& m, const Rat& coeff);
  HarmonicCombo& operator+=(const HarmonicCombo& o);
  void scale(const Rat& c);

  const Rat& base() const { return base_; }
  const std::map<Int, Rat>& harmonic_terms() const { return terms_; }

  /// True when no harmonic term survives (value is exactly base()).
  bool is_rational() const { return terms_.empty(); }

  /// Exact value; throws if harmonic terms are present with arguments
  /// above the guard (10^6).
  Rat exact_value() const;

  Real evaluate() const;

 private:
  Rat base_ = 0;
  std::map<Int, Rat> terms_;
};

/// sum over the spin lattice two_lo, two_lo+2, ..., two_hi of 1/(twoJ + 1),
/// i.e. sum of 1/(2J+1) over half-integer steps of J, as a HarmonicCombo.
/// Empty when two_hi < two_lo.
HarmonicCombo lattice_reciprocal_sum(const Int& two_lo, const Int& two_hi);

}  // namespace invt

#include "invt/numeric.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

namespace invt {

namespace {

// 1000 digits, truncated to the working precision on use.
const char* kEulerGamma =
    "0.5772156649015328606065120900824024310421593359399235988057672348848677"
    "2677766467093694706329174674951463144724980708248096050401448654283622417"
    "3997644923536253500333742937337737673942792595258247094916008735203948165"
    "6708532331517766115286211995015079847937450857057400299213547861466940296"
    "0432542151905877553526733139925401296742051375413954911168510280798423487"
    "7587205038431093997361372553060889331267600172479537836759271351577226102"
    "7349291394079843010341777177808815495706610750101619166334015227893586796"
    "5497252036212879226555953669628176388792726801324310104765059637039473949"
    "5763890657296792960100901512519595092224350140934987122824794974719564697"
    "6318506676129063811051824197444867836380861749455169892792301877391072945"
    "7815543160050021828440960537724342032854783670151773943987003023703395183"
    "2869000155819398804270741154222781971652301107356583396734871765049194181"
    "2300040654693142999297779569303100503086303418569803231083691640025892970"
    "8909854868257773642882539549258736295961332985747393023809";

bool g_precision_set = false;

}  // namespace

void set_precision(unsigned decimal_digits) {
  if (decimal_digits < 10) throw std::invalid_argument("set_precision: fewer than 10 digits");
  Real::default_precision(decimal_digits);
  g_precision_set = true;
}

unsigned precision() {
  if (!g_precision_set) set_precision(kDefaultPrecision);
  return Real::default_precision();
}

Real euler_gamma() {
  precision();
  return Real(kEulerGamma);
}

Spin parse_spin(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty spin string");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int num = parse_big_integer(s.substr(0, slash));
    Int den = parse_big_integer(s.substr(slash + 1));
    if (den != 1 && den != 2)
      throw std::invalid_argument("spin denominator must be 1 or 2: " + s);
    return Spin(den == 2 ? num : 2 * num);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos && s.find('e') == std::string::npos &&
      s.find('E') == std::string::npos) {
    Int whole = dot == 0 ? Int(0) : parse_big_integer(s.substr(0, dot));
    std::string frac = s.substr(dot + 1);
    if (frac == "5") return Spin(2 * whole + 1);
    if (frac.empty() || frac == "0" || frac == "00") return Spin(2 * whole);
    throw std::invalid_argument("spin must be a half-integer: " + s);
  }
  return Spin(2 * parse_big_integer(s));
}

Int parse_big_integer(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer string");
  auto e = s.find_first_of("eE");
  try {
    if (e == std::string::npos) return Int(s);
    Int mant(s.substr(0, e));
    int exp = std::stoi(s.substr(e + 1));
    if (exp < 0) throw std::invalid_argument("negative exponent: " + s);
    Int p(1);
    for (int i = 0; i < exp; ++i) p *= 10;
    return mant * p;
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed integer: " + s);
  }
}

Rat bernoulli(unsigned k) {
  static std::vector<Rat> cache{Rat(1)};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= k) {
    unsigned m = static_cast<unsigned>(cache.size());
    // B_m = -1/(m+1) * sum_{i<m} C(m+1,i) B_i
    Rat acc = 0;
    for (unsigned i = 0; i < m; ++i) acc += Rat(binomial(m + 1, i)) * cache[i];
    cache.push_back(-acc / Int(m + 1));
  }
  return cache[k];
}

Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Int r = 1;
  for (unsigned i = 0; i < std::min(k, n - k); ++i) {
    r *= Int(n - i);
    r /= Int(i + 1);
  }
  return r;
}

std::vector<Rat> faulhaber_poly(unsigned k) {
  // F_k(T) = (B_{k+1}(T+1) - B_{k+1}) / (k+1), Bernoulli polynomial in T.
  unsigned d = k + 1;
  // b[i] = coefficient of x^i in B_{k+1}(x)
  std::vector<Rat> b(d + 1);
  for (unsigned i = 0; i <= d; ++i)
    b[d - i] = Rat(binomial(d, i)) * bernoulli(i);
  // shift x -> T+1
  std::vector<Rat> f(d + 1);
  for (unsigned i = 0; i <= d; ++i) {
    if (b[i] == 0) continue;
    for (unsigned t = 0; t <= i; ++t) f[t] += b[i] * Rat(binomial(i, t));
  }
  f[0] -= b[0];
  for (auto& c : f) c /= Int(d);
  return f;  // f[d] is the leading coefficient, f[0] == 0
}

namespace {
Rat poly_eval_int(const std::vector<Rat>& p, const Int& x) {
  Rat acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}
}  // namespace

Rat power_sum(unsigned k, const Int& a, const Int& b) {
  if (k > 64) throw std::invalid_argument("power_sum: k > 64");
  if (a > b + 1) throw std::invalid_argument("power_sum: a > b+1");
  if (a == b + 1) return 0;
  auto f = faulhaber_poly(k);
  return poly_eval_int(f, b) - poly_eval_int(f, a - 1);
}

Real harmonic(const Int& m, const Int& crossover) {
  precision();
  if (m <= 0) return Real(0);
  if (m <= crossover) {
    if (m > Int(10000000)) throw std::invalid_argument("harmonic: crossover too large");
    unsigned long n = m.convert_to<unsigned long>();
    Real sum(0);
    for (unsigned long k = n; k >= 1; --k) sum += Real(1) / k;
    return sum;
  }
  Real x(m);
  Real sum = log(x) + euler_gamma() + Real(1) / (2 * x);
  Real inv2 = Real(1) / (x * x);
  Real pw = inv2;
  Real eps = pow(Real(10), -static_cast<int>(precision()) - 5);
  Real prev_mag(0);
  bool first = true;
  for (unsigned k = 1; k <= 200; ++k) {
    Real term = Real(bernoulli(2 * k)) / (2 * k) * pw;
    Real mag = abs(term);
    if (!first && mag > prev_mag) break;  // asymptotic series turned
    sum -= term;
    if (mag < eps) break;
    prev_mag = mag;
    first = false;
    pw *= inv2;
  }
  return sum;
}

Rat harmonic_exact(const Int& m) {
  if (m <= 0) return 0;
  if (m > Int(100000)) throw std::invalid_argument("harmonic_exact: m too large");
  // divide-and-conquer keeps the intermediate denominators balanced
  std::function<Rat(unsigned long, unsigned long)> rec =
      [&](unsigned long lo, unsigned long hi) -> Rat {
    if (lo == hi) return Rat(Int(1), Int(lo));
    unsigned long mid = lo + (hi - lo) / 2;
    return rec(lo, mid) + rec(mid + 1, hi);
  };
  return rec(1, m.convert_to<unsigned long>());
}

Real odd_reciprocal_sum(const Int& a, const Int& b) {
  if (a < 0 || a > b) throw std::invalid_argument("odd_reciprocal_sum: need 0 <= a <= b");
  return harmonic(2 * b + 1) - harmonic(2 * a - 1) -
         (harmonic(b) - harmonic(a - 1)) / 2;
}

Rat odd_reciprocal_sum_exact(const Int& a, const Int& b) {
  if (a < 0 || a > b) throw std::invalid_argument("odd_reciprocal_sum_exact: need 0 <= a <= b");
  if (b - a > Int(1000000)) throw std::invalid_argument("odd_reciprocal_sum_exact: range too large");
  std::function<Rat(Int, Int)> rec = [&](Int lo, Int hi) -> Rat {
    if (lo == hi) return Rat(Int(1), 2 * lo + 1);
    Int mid = lo + (hi - lo) / 2;
    return rec(lo, mid) + rec(mid + 1, hi);
  };
  return rec(a, b);
}

void HarmonicCombo::add_harmonic(const Int& m, const Rat& coeff) {
  if (m <= 0 || coeff == 0) return;
  auto [it, inserted] = terms_.emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

HarmonicCombo& HarmonicCombo::operator+=(const HarmonicCombo& o) {
  base_ += o.base_;
  for (const auto& [m, c] : o.terms_) add_harmonic(m, c);
  return *this;
}

void HarmonicCombo::scale(const Rat& c) {
  if (c == 0) {
    base_ = 0;
    terms_.clear();
    return;
  }
  base_ *= c;
  for (auto& [m, coeff] : terms_) coeff *= c;
}

Rat HarmonicCombo::exact_value() const {
  Rat v = base_;
  for (const auto& [m, c] : terms_) v += c * harmonic_exact(m);
  return v;
}

Real HarmonicCombo::evaluate() const {
  precision();
  Real v(base_);
  for (const auto& [m, c] : terms_) v += Real(c) * harmonic(m);
  return v;
}

HarmonicCombo lattice_reciprocal_sum(const Int& two_lo, const Int& two_hi) {
  HarmonicCombo combo;
  if (two_hi < two_lo) return combo;
  if ((two_hi - two_lo) % 2 != 0)
    throw std::invalid_argument("lattice_reciprocal_sum: bounds of mixed parity");
  if (two_lo % 2 == 0) {
    // odd denominators 2J+1 with integer J in [a, b]
    Int a = two_lo / 2, b = two_hi / 2;
    combo.add_harmonic(2 * b + 1, 1);
    combo.add_harmonic(2 * a - 1, -1);
    combo.add_harmonic(b, Rat(-1, 2));
    combo.add_harmonic(a - 1, Rat(1, 2));
  } else {
    // even denominators 2J+1 = 2m with m in [(two_lo+1)/2, (two_hi+1)/2]
    Int mlo = (two_lo + 1) / 2, mhi = (two_hi + 1) / 2;
    combo.add_harmonic(mhi, Rat(1, 2));
    combo.add_harmonic(mlo - 1, Rat(-1, 2));
  }
  return combo;
}

}  // namespace invt

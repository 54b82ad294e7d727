#include "invt/entropy.hpp"

#include <algorithm>

namespace invt {

namespace {

// sum over the common lattice of P(J)/(2J+1) with P the product of the
// supplied segment polynomials; quotient summed via Faulhaber, remainder
// turned into harmonic-number terms.
HarmonicCombo ratio_sum(const std::vector<std::pair<const PiecewisePoly*, int>>& factors) {
  // overlap of supports
  Int lo = factors.front().first->two_min();
  Int hi = factors.front().first->two_max();
  for (const auto& [p, e] : factors) {
    lo = std::max(lo, p->two_min());
    hi = std::min(hi, p->two_max());
  }
  HarmonicCombo combo;
  if (hi < lo) return combo;
  for (const auto& [p, e] : factors) {
    if ((p->two_min() - lo) % 2 != 0) return combo;  // disjoint parity
  }
  // walk the overlap, splitting at every factor's segment boundaries
  Int cur = lo;
  while (cur <= hi) {
    Int seg_hi = hi;
    Poly prod{Rat(1)};
    for (const auto& [p, e] : factors) {
      const auto& s = p->segments()[p->segment_index(cur)];
      seg_hi = std::min(seg_hi, s.two_hi);
      for (int k = 0; k < e; ++k) prod = poly::mul(prod, s.coeffs);
    }
    auto div = poly::divide_linear(prod, 2, 1);  // by (2J+1)
    combo.add_rational(poly::sum_over_lattice(div.quotient, cur, seg_hi));
    HarmonicCombo rec = lattice_reciprocal_sum(cur, seg_hi);
    rec.scale(div.remainder);
    combo += rec;
    cur = seg_hi + 2;
  }
  return combo;
}

}  // namespace

Real Z1Result::value() const {
  Int dd = dim_inv * dim_inv + dim_inv;
  return numerator.evaluate() / Real(dd);
}

Z1Result z1_bar(const Spin& j, int n, int n_a) {
  if (n_a < 1 || n_a > n - 1)
    throw std::invalid_argument("z1_bar: need 1 <= n_A <= n-1");
  PiecewisePoly a = degeneracy_symbolic(j, n_a);
  PiecewisePoly b = degeneracy_symbolic(j, n - n_a);

  Z1Result out;
  Rat dim = pairing_sum(a, b);
  out.dim_inv = numerator(dim);
  if (out.dim_inv == 0)
    throw std::domain_error("z1_bar: empty invariant subspace");

  out.numerator = ratio_sum({{&b, 2}, {&a, 1}});
  out.numerator += ratio_sum({{&a, 2}, {&b, 1}});

  bool small = true;
  for (const auto& [m, c] : out.numerator.harmonic_terms())
    if (m > Int(100000)) small = false;
  if (small) {
    Rat num = out.numerator.exact_value();
    Int dd = out.dim_inv * out.dim_inv + out.dim_inv;
    out.exact = num / dd;
  }
  return out;
}

EntropyReport entropy_report(const Spin& j, int n, int n_a) {
  Z1Result z = z1_bar(j, n, n_a);
  EntropyReport r;
  r.j = j;
  r.n = n;
  r.n_a = n_a;
  r.dim_inv = z.dim_inv;
  r.z1_bar = z.value();
  r.z1_bar_exact = z.exact;
  r.s2_bar = -log(r.z1_bar);
  Int d = j.twice() + 1;
  r.s_max = Real(n_a) * log(Real(d));
  r.i_inv = r.s_max - r.s2_bar;
  int gap = n_a - (n - n_a);
  r.i_full = Real(1) / 2 * pow(Real(d), gap);
  r.lambda_n = (n % 2 == 0) ? 2 : 1;
  return r;
}

std::vector<EntropyReport> deficit_table(const Spin& j, int n_min, int n_max) {
  if (n_min < 3 || n_max > 20 || n_min > n_max)
    throw std::invalid_argument("deficit_table: need 3 <= n_min <= n_max <= 20");
  std::vector<EntropyReport> rows;
  for (int n = n_min; n <= n_max; ++n) rows.push_back(entropy_report(j, n, n / 2));
  return rows;
}

Spin spin_for_dimension(const Int& d) {
  if (d < 1) throw std::invalid_argument("spin_for_dimension: d < 1");
  // even d would force a half-integer spin with no invariant tensors at
  // odd n; round up to the nearest integer spin instead
  return Spin(d % 2 == 1 ? Int(d - 1) : d);
}

PermutationS4 PermutationS4::then(const PermutationS4& g) const {
  PermutationS4 r;
  for (int i = 0; i < 4; ++i) r.images[i] = g.images[images[i]];
  return r;
}

int PermutationS4::cycle_count() const {
  bool seen[4] = {};
  int count = 0;
  for (int i = 0; i < 4; ++i) {
    if (seen[i]) continue;
    ++count;
    for (int k = i; !seen[k]; k = images[k]) seen[k] = true;
  }
  return count;
}

const std::vector<PermutationS4>& PermutationS4::all() {
  static const std::vector<PermutationS4> elems = [] {
    std::vector<PermutationS4> v;
    std::array<int, 4> p{0, 1, 2, 3};
    do {
      v.push_back({p});
    } while (std::next_permutation(p.begin(), p.end()));
    return v;
  }();
  return elems;
}

PermutationS4 PermutationS4::pair_swap() { return {{1, 0, 3, 2}}; }

FluctuationReport fluctuation_bound(const Spin& j, int n, int n_a, const Real& delta) {
  if (n_a < 1 || n_a > n - 1)
    throw std::invalid_argument("fluctuation_bound: need 1 <= n_A <= n-1");
  DegeneracyTable ta = degeneracy_table(j, n_a);
  DegeneracyTable tb = degeneracy_table(j, n - n_a);
  if ((ta.two_min - tb.two_min) % 2 != 0)
    throw std::domain_error("fluctuation_bound: empty invariant subspace");

  Int lo = std::max(ta.two_min, tb.two_min);
  Int hi = std::min(ta.two_max, tb.two_max);
  Int dim = 0;
  Rat denom = 0;  // single-copy swap-moment numerator
  for (Int t = lo; t <= hi; t += 2) {
    const Int& da = ta.at_two(t);
    const Int& db = tb.at_two(t);
    dim += da * db;
    denom += Rat(da * db * db + da * da * db, t + 1);
  }
  if (dim == 0) throw std::domain_error("fluctuation_bound: empty invariant subspace");

  const PermutationS4 sigma = PermutationS4::pair_swap();
  const std::array<std::array<int, 4>, 4> excluded = {{
      {0, 1, 2, 3}, {1, 0, 2, 3}, {0, 1, 3, 2}, {1, 0, 3, 2}}};
  Rat numer = 0;
  for (const auto& g : PermutationS4::all()) {
    if (std::find(excluded.begin(), excluded.end(), g.images) != excluded.end())
      continue;
    int chi_g = g.cycle_count();
    int chi_gs = g.then(sigma).cycle_count();
    for (Int t = lo; t <= hi; t += 2) {
      const Int& da = ta.at_two(t);
      const Int& db = tb.at_two(t);
      if (da == 0 || db == 0) continue;
      numer += Rat(pow(da, chi_gs) * pow(db, chi_g), (t + 1) * (t + 1));
    }
  }

  FluctuationReport r;
  r.j = j;
  r.n = n;
  r.n_a = n_a;
  r.dim_inv = dim;
  r.f_bound_exact = numer / (denom * denom);
  r.f_bound = Real(r.f_bound_exact);
  r.z0_var_bound = Real(6) / Real(dim);
  r.delta = delta;
  Real quarter = delta / 4;
  r.prob_z1 = r.f_bound / (quarter * quarter);
  r.prob_z0 = Real(96) / (delta * delta) / Real(dim);
  return r;
}

Int c_factor(const Int& dim, int copies) {
  if (dim < 1 || copies < 1) throw std::invalid_argument("c_factor: need dim, copies >= 1");
  Int r = 1;
  for (int k = 0; k < copies; ++k) r *= dim + k;
  return r;
}

}  // namespace invt

#include "invt/polynomial.hpp"

namespace invt::poly {

Poly trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int degree(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

Rat eval(const Poly& p, const Rat& x) {
  Rat acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  return trim(std::move(r));
}

Poly sub(const Poly& a, const Poly& b) { return add(a, scale(b, -1)); }

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return trim(std::move(r));
}

Poly scale(const Poly& p, const Rat& c) {
  if (c == 0) return {};
  Poly r = p;
  for (auto& v : r) v *= c;
  return r;
}

bool equal(const Poly& a, const Poly& b) {
  size_t n = std::max(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    Rat av = i < a.size() ? a[i] : Rat(0);
    Rat bv = i < b.size() ? b[i] : Rat(0);
    if (av != bv) return false;
  }
  return true;
}

Poly compose_linear(const Poly& p, const Rat& a, const Rat& b) {
  // Horner in (a x + b)
  Poly acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    // acc = acc * (a x + b) + *it
    Poly next(acc.size() + 1);
    for (size_t i = 0; i < acc.size(); ++i) {
      next[i + 1] += acc[i] * a;
      next[i] += acc[i] * b;
    }
    if (next.empty()) next.resize(1);
    next[0] += *it;
    acc = std::move(next);
  }
  return trim(std::move(acc));
}

LinearDivision divide_linear(const Poly& p, const Rat& c1, const Rat& c0) {
  // synthetic division by (c1 x + c0), root -c0/c1
  // p_i = q_{i-1} c1 + q_i c0 for i >= 1, r = p_0 - q_0 c0
  LinearDivision out;
  if (p.empty()) return out;
  Poly q(p.size() > 1 ? p.size() - 1 : 0);
  Rat prev = 0;  // q_i of the row above
  for (int i = static_cast<int>(p.size()) - 1; i >= 1; --i) {
    q[i - 1] = (p[i] - prev * c0) / c1;
    prev = q[i - 1];
  }
  out.quotient = trim(std::move(q));
  out.remainder = p[0] - prev * c0;
  return out;
}

Rat sum_over_lattice(const Poly& p, const Int& two_lo, const Int& two_hi) {
  if (two_hi < two_lo) return 0;
  if ((two_hi - two_lo) % 2 != 0)
    throw std::invalid_argument("sum_over_lattice: bounds of mixed parity");
  // J = two_lo/2 + s, s = 0..S
  Int steps = (two_hi - two_lo) / 2;
  Poly q = compose_linear(p, 1, Rat(two_lo, 2));
  Rat acc = 0;
  for (size_t k = 0; k < q.size(); ++k) {
    if (q[k] == 0) continue;
    acc += q[k] * power_sum(static_cast<unsigned>(k), 0, steps);
  }
  return acc;
}

Poly prefix_sum_from(const Poly& p, const Int& two_lo) {
  // substitute J = lo + s, sum s = 0..T with Faulhaber, substitute T = X - lo
  if (p.empty()) return {};
  Rat lo(two_lo, 2);
  Poly q = compose_linear(p, 1, lo);
  Poly in_t;
  for (size_t k = 0; k < q.size(); ++k) {
    if (q[k] == 0) continue;
    in_t = add(in_t, scale(faulhaber_poly(static_cast<unsigned>(k)), q[k]));
  }
  return compose_linear(in_t, 1, -lo);
}

}  // namespace invt::poly

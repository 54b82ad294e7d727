#include "invt/recoupling.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>

namespace invt {

namespace {

// (t/2)! for even nonnegative t
Int fact_half(const Int& t) {
  if (t < 0 || t % 2 != 0) throw std::logic_error("fact_half: odd or negative argument");
  static std::vector<Int> cache{Int(1)};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto k = static_cast<size_t>((t / 2).convert_to<long>());
  while (cache.size() <= k) cache.push_back(cache.back() * Int(cache.size()));
  return cache[k];
}

bool triangle_ok(const Int& a, const Int& b, const Int& c) {
  return (a + b + c) % 2 == 0 && c >= abs(a - b) && c <= a + b;
}

using CgcKey = std::array<long, 6>;

CgcValue cgc_two(const Int& a, const Int& am, const Int& b, const Int& bm,
                 const Int& c, const Int& cm) {
  if (abs(am) > a || abs(bm) > b || abs(cm) > c)
    throw std::invalid_argument("cgc: magnetic number out of range");
  if ((a - am) % 2 != 0 || (b - bm) % 2 != 0 || (c - cm) % 2 != 0)
    throw std::invalid_argument("cgc: magnetic number of wrong parity");
  if (am + bm != cm || !triangle_ok(a, b, c)) return CgcValue::zero();

  static std::map<CgcKey, CgcValue> cache;
  static std::mutex mu;
  CgcKey key{a.convert_to<long>(),  am.convert_to<long>(),
             b.convert_to<long>(),  bm.convert_to<long>(),
             c.convert_to<long>(),  cm.convert_to<long>()};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  // Racah single-sum closed form
  Int p1 = (a + b - c) / 2, p2 = (a - am) / 2, p3 = (b + bm) / 2;
  Int q1 = (c - b + am) / 2, q2 = (c - a - bm) / 2;
  Int kmin = std::max(Int(0), std::max(Int(-q1), Int(-q2)));
  Int kmax = std::min(p1, std::min(p2, p3));
  Rat s = 0;
  for (Int k = kmin; k <= kmax; ++k) {
    Rat term(Int((k % 2 == 0) ? 1 : -1),
             fact_half(2 * k) * fact_half(2 * (p1 - k)) * fact_half(2 * (p2 - k)) *
                 fact_half(2 * (p3 - k)) * fact_half(2 * (q1 + k)) *
                 fact_half(2 * (q2 + k)));
    s += term;
  }

  CgcValue out = CgcValue::zero();
  if (s != 0) {
    Rat pre = Rat(Int((c + 1) * fact_half(a + b - c) * fact_half(a - b + c) *
                      fact_half(b + c - a)),
                  fact_half(a + b + c + 2));
    pre *= Rat(Int(fact_half(c + cm) * fact_half(c - cm) * fact_half(a + am) *
                   fact_half(a - am) * fact_half(b + bm) * fact_half(b - bm)));
    out.sign = s > 0 ? 1 : -1;
    out.square = s * s * pre;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, out);
  return out;
}

}  // namespace

double CgcValue::to_double() const {
  if (sign == 0) return 0.0;
  Real r(square);
  return sign * sqrt(r).convert_to<double>();
}

CgcValue CgcValue::times(const CgcValue& o) const {
  if (sign == 0 || o.sign == 0) return zero();
  return {sign * o.sign, square * o.square};
}

CgcValue cgc(const Spin& j1, const Int& two_m1, const Spin& j2, const Int& two_m2,
             const Spin& J, const Int& two_M) {
  return cgc_two(j1.twice(), two_m1, j2.twice(), two_m2, J.twice(), two_M);
}

namespace {

// n = sqfree * root^2 with sqfree squarefree, n > 0
void square_split(Int n, Int& sqfree, Int& root) {
  sqfree = 1;
  root = 1;
  for (Int d = 2; d * d * d <= n; ++d) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) root *= d;
    if (e % 2) sqfree *= d;
  }
  // remainder has at most two prime factors, each large
  Int r = sqrt(n);
  if (r * r == n)
    root *= r;
  else
    sqfree *= n;
}

}  // namespace

void RootSum::add(const Rat& coeff, const Rat& radicand) {
  if (coeff == 0 || radicand == 0) return;
  if (radicand < 0) throw std::invalid_argument("RootSum: negative radicand");
  Int p = numerator(radicand), q = denominator(radicand);
  Int sqfree, root;
  square_split(p * q, sqfree, root);
  Rat c = coeff * Rat(root, q);
  auto [it, inserted] = terms_.emplace(sqfree, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void RootSum::add_product(const CgcValue& a, const CgcValue& b) {
  if (a.sign == 0 || b.sign == 0) return;
  add(Rat(a.sign * b.sign), a.square * b.square);
}

bool RootSum::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

Rat RootSum::rational_value() const {
  if (terms_.empty()) return 0;
  if (!is_rational()) throw std::logic_error("RootSum: irrational value");
  return terms_.begin()->second;
}

double RootSum::to_double() const {
  double v = 0;
  for (const auto& [s, c] : terms_)
    v += c.convert_to<double>() * std::sqrt(s.convert_to<double>());
  return v;
}

bool CouplingTree::admissible() const {
  if (static_cast<int>(twice_labels.size()) != n - 1) return false;
  Int cur = j.twice();
  for (const auto& l : twice_labels) {
    if (l < 0 || !triangle_ok(cur, j.twice(), l)) return false;
    cur = l;
  }
  return true;
}

std::vector<CouplingTree> enumerate_trees(const Spin& j, int n, const Int& two_J) {
  if (n < 1) throw std::invalid_argument("enumerate_trees: n < 1");
  std::vector<CouplingTree> out;
  std::vector<Int> chain;
  std::function<void(int, const Int&)> rec = [&](int k, const Int& cur) {
    if (k == n) {
      if (cur == two_J) out.push_back({j, n, chain});
      return;
    }
    Int lo = abs(cur - j.twice());
    Int hi = cur + j.twice();
    // the chain can still reach two_J only if |cur - two_J| <= (n-k) * 2j
    for (Int next = lo; next <= hi; next += 2) {
      if (abs(next - two_J) > Int(n - k - 1) * j.twice()) continue;
      chain.push_back(next);
      rec(k + 1, next);
      chain.pop_back();
    }
  };
  rec(1, j.twice());
  return out;
}

CgcValue tree_coefficient(const CouplingTree& tree, const std::vector<Int>& twice_m,
                          const Int& twice_M) {
  if (static_cast<int>(twice_m.size()) != tree.n)
    throw std::invalid_argument("tree_coefficient: wrong number of magnetic labels");
  if (!tree.admissible())
    throw std::invalid_argument("tree_coefficient: inadmissible coupling chain");
  Int total = 0;
  for (const auto& tm : twice_m) total += tm;
  if (total != twice_M) return CgcValue::zero();
  if (tree.n == 1)
    return twice_m[0] == twice_M ? CgcValue::one() : CgcValue::zero();

  CgcValue acc = CgcValue::one();
  Int curJ = tree.j.twice();
  Int curM = twice_m[0];
  for (int k = 1; k < tree.n; ++k) {
    const Int& nextJ = tree.twice_labels[k - 1];
    Int nextM = curM + twice_m[k];
    if (abs(nextM) > nextJ) return CgcValue::zero();
    acc = acc.times(cgc_two(curJ, curM, tree.j.twice(), twice_m[k], nextJ, nextM));
    if (acc.is_zero()) return acc;
    curJ = nextJ;
    curM = nextM;
  }
  return acc;
}

namespace {

long pow_long(long b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// dense coupled-basis column over the part's product basis; leg index 0 is
// the most significant digit, m runs from +j (digit 0) down to -j
std::vector<double> tree_amplitudes(const CouplingTree& t, const Int& twice_M) {
  const Int tj = t.j.twice();
  const long d = tj.convert_to<long>() + 1;
  std::vector<double> out(pow_long(d, t.n), 0.0);
  std::function<void(int, const Int&, const Int&, long, double)> rec =
      [&](int k, const Int& curJ, const Int& curM, long idx, double coeff) {
        if (k == t.n) {
          if (curM == twice_M) out[idx] = coeff;
          return;
        }
        for (long mi = 0; mi < d; ++mi) {
          Int tm = tj - 2 * mi;
          if (k == 0) {
            rec(1, tj, tm, mi, 1.0);
            continue;
          }
          const Int& nextJ = t.twice_labels[k - 1];
          Int nextM = curM + tm;
          if (abs(nextM) > nextJ) continue;
          if (abs(nextM - twice_M) > Int(t.n - k - 1) * tj) continue;
          CgcValue c = cgc_two(curJ, curM, tj, tm, nextJ, nextM);
          if (c.is_zero()) continue;
          rec(k + 1, nextJ, nextM, idx * d + mi, coeff * c.to_double());
        }
      };
  rec(0, tj, Int(0), 0, 1.0);
  return out;
}

}  // namespace

InvariantBasis invariant_basis(const Spin& j, int n, int n_a) {
  if (n < 2) throw std::invalid_argument("invariant_basis: n < 2");
  if (n_a < 0) n_a = n / 2;
  if (n_a < 1 || n_a > n - 1)
    throw std::invalid_argument("invariant_basis: need 1 <= n_A <= n-1");
  const Int tj = j.twice();
  const long d = tj.convert_to<long>() + 1;
  double total = std::pow(static_cast<double>(d), n);
  if (total > 1e7) throw guard_error("invariant_basis: component guard exceeded");

  InvariantBasis basis;
  basis.j = j;
  basis.n = n;
  basis.n_a = n_a;
  basis.dim_leg = d;

  const int n_b = n - n_a;
  const long size_a = pow_long(d, n_a);
  const long size_b = pow_long(d, n_b);

  std::vector<InvariantBasis::Label> labels;
  std::vector<Eigen::VectorXd> cols;
  Int two_max = std::min(Int(n_a) * tj, Int(n_b) * tj);
  Int two_min = (Int(n_a) * tj) % 2;
  if ((Int(n_b) * tj) % 2 != two_min) two_max = -1;  // parity obstruction
  for (Int tJ = two_min; tJ <= two_max; tJ += 2) {
    auto trees_a = enumerate_trees(j, n_a, tJ);
    auto trees_b = enumerate_trees(j, n_b, tJ);
    if (trees_a.empty() || trees_b.empty()) continue;
    double norm = 1.0 / std::sqrt(tJ.convert_to<double>() + 1.0);
    // per-M amplitude tables, shared across the tree pairs at this J
    std::vector<std::vector<std::vector<double>>> amp_a, amp_b;
    for (const auto& ta : trees_a) {
      amp_a.emplace_back();
      for (Int tM = -tJ; tM <= tJ; tM += 2) amp_a.back().push_back(tree_amplitudes(ta, tM));
    }
    for (const auto& tb : trees_b) {
      amp_b.emplace_back();
      for (Int tM = -tJ; tM <= tJ; tM += 2) amp_b.back().push_back(tree_amplitudes(tb, -tM));
    }
    long nM = tJ.convert_to<long>() + 1;
    for (size_t ia = 0; ia < trees_a.size(); ++ia) {
      for (size_t ib = 0; ib < trees_b.size(); ++ib) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(size_a * size_b);
        for (long im = 0; im < nM; ++im) {
          // tM = -tJ + 2 im; (-1)^{J-M} = (-1)^{(tJ-tM)/2} = (-1)^{J units}
          long par = (tJ.convert_to<long>() - (-tJ.convert_to<long>() + 2 * im)) / 2;
          double phase = (par % 2 == 0) ? norm : -norm;
          const auto& aa = amp_a[ia][im];
          const auto& bb = amp_b[ib][im];
          for (long ka = 0; ka < size_a; ++ka) {
            if (aa[ka] == 0.0) continue;
            double w = phase * aa[ka];
            for (long kb = 0; kb < size_b; ++kb)
              if (bb[kb] != 0.0) v[ka * size_b + kb] += w * bb[kb];
          }
        }
        // deterministic global sign: first nonzero component positive
        for (long k = 0; k < v.size(); ++k) {
          if (std::abs(v[k]) > 1e-12) {
            if (v[k] < 0) v = -v;
            break;
          }
        }
        labels.push_back({trees_a[ia].twice_labels, tJ, trees_b[ib].twice_labels});
        cols.push_back(std::move(v));
      }
    }
  }

  basis.labels = std::move(labels);
  basis.vectors.resize(size_a * size_b, static_cast<long>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c) basis.vectors.col(static_cast<long>(c)) = cols[c];
  return basis;
}

double invariance_residual(const Spin& j, int n, const Eigen::VectorXd& v) {
  const Int tj = j.twice();
  const long d = tj.convert_to<long>() + 1;
  const long size = pow_long(d, n);
  if (v.size() != size) throw std::invalid_argument("invariance_residual: wrong length");
  double tjd = tj.convert_to<double>();

  Eigen::VectorXd jz = Eigen::VectorXd::Zero(size);
  Eigen::VectorXd jp = Eigen::VectorXd::Zero(size);
  Eigen::VectorXd jm = Eigen::VectorXd::Zero(size);
  std::vector<long> digits(n);
  for (long idx = 0; idx < size; ++idx) {
    if (v[idx] == 0.0) continue;
    long rem = idx;
    for (int i = n - 1; i >= 0; --i) {
      digits[i] = rem % d;
      rem /= d;
    }
    double total_tm = 0;
    long stride = 1;
    for (int i = n - 1; i >= 0; --i) {
      double tm = tjd - 2.0 * digits[i];
      total_tm += tm;
      // J+ raises m: digit decreases by one
      if (digits[i] > 0) {
        double c = std::sqrt((tjd * (tjd + 2) - tm * (tm + 2)) / 4.0);
        jp[idx - stride] += c * v[idx];
      }
      if (digits[i] < d - 1) {
        double c = std::sqrt((tjd * (tjd + 2) - tm * (tm - 2)) / 4.0);
        jm[idx + stride] += c * v[idx];
      }
      stride *= d;
    }
    jz[idx] = (total_tm / 2.0) * v[idx];
  }
  double nv = v.norm();
  if (nv == 0) return 0;
  return std::max({jz.norm(), jp.norm(), jm.norm()}) / nv;
}

OrthogonalityReport orthogonality_check(const Spin& j1, const Spin& j2) {
  const Int a = j1.twice(), b = j2.twice();
  OrthogonalityReport rep;
  rep.coupled_rows_ok = true;
  rep.uncoupled_rows_ok = true;

  struct JM {
    Int tJ, tM;
  };
  std::vector<JM> coupled;
  for (Int tJ = abs(a - b); tJ <= a + b; tJ += 2)
    for (Int tM = -tJ; tM <= tJ; tM += 2) coupled.push_back({tJ, tM});

  auto note = [&](RootSum& r, bool expected_one, bool& ok) {
    if (expected_one) r.add(Rat(-1), Rat(1));
    if (!r.is_zero()) {
      ok = false;
      rep.worst_residual = std::max(rep.worst_residual, std::abs(r.to_double()));
    }
  };

  for (size_t x = 0; x < coupled.size(); ++x) {
    for (size_t y = x; y < coupled.size(); ++y) {
      RootSum sum;
      for (Int m1 = -a; m1 <= a; m1 += 2) {
        Int m2 = coupled[x].tM - m1;
        if (abs(m2) > b) continue;
        if (m1 + m2 != coupled[y].tM) continue;
        sum.add_product(cgc_two(a, m1, b, m2, coupled[x].tJ, coupled[x].tM),
                        cgc_two(a, m1, b, m2, coupled[y].tJ, coupled[y].tM));
      }
      note(sum, x == y, rep.coupled_rows_ok);
    }
  }

  for (Int m1 = -a; m1 <= a; m1 += 2) {
    for (Int m2 = -b; m2 <= b; m2 += 2) {
      for (Int p1 = -a; p1 <= a; p1 += 2) {
        for (Int p2 = -b; p2 <= b; p2 += 2) {
          RootSum sum;
          for (const auto& jm : coupled) {
            if (m1 + m2 != jm.tM || p1 + p2 != jm.tM) continue;
            sum.add_product(cgc_two(a, m1, b, m2, jm.tJ, jm.tM),
                            cgc_two(a, p1, b, p2, jm.tJ, jm.tM));
          }
          note(sum, m1 == p1 && m2 == p2, rep.uncoupled_rows_ok);
        }
      }
    }
  }
  return rep;
}

}  // namespace invt

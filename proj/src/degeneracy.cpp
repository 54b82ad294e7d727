#include "invt/degeneracy.hpp"

#include <set>

namespace invt {

const Int& DegeneracyTable::at_two(const Int& two_J) const {
  static const Int zero(0);
  if (two_J < two_min || two_J > two_max) return zero;
  if ((two_J - two_min) % 2 != 0) return zero;
  return values[static_cast<size_t>(((two_J - two_min) / 2).convert_to<long>())];
}

Int DegeneracyTable::total_weighted() const {
  Int acc = 0;
  Int two_J = two_min;
  for (const auto& v : values) {
    acc += (two_J + 1) * v;
    two_J += 2;
  }
  return acc;
}

std::map<Int, Int> DegeneracyTable::as_map() const {
  std::map<Int, Int> m;
  Int two_J = two_min;
  for (const auto& v : values) {
    m[two_J] = v;
    two_J += 2;
  }
  return m;
}

DegeneracyTable degeneracy_table(const Spin& j, int n) {
  if (n < 1) throw std::invalid_argument("degeneracy_table: n < 1");
  const Int two_j = j.twice();
  if (Int(n) * two_j > kDirectGuard)
    throw guard_error("degeneracy_table: tabulation guard exceeded");

  auto lattice_min = [&](int m) { return Int((Int(m) * two_j) % 2); };
  auto lattice_size = [&](int m) {
    return static_cast<size_t>(((Int(m) * two_j - lattice_min(m)) / 2).convert_to<long>()) + 1;
  };

  std::vector<Int> cur(lattice_size(1), Int(0));
  cur.back() = 1;  // D(j,1,J) = delta_{J,j}
  for (int m = 2; m <= n; ++m) {
    const Int prev_min = lattice_min(m - 1);
    const Int prev_max = Int(m - 1) * two_j;
    // prefix[k] = sum of cur[0..k-1]
    std::vector<Int> prefix(cur.size() + 1, Int(0));
    for (size_t k = 0; k < cur.size(); ++k) prefix[k + 1] = prefix[k] + cur[k];

    std::vector<Int> next(lattice_size(m), Int(0));
    Int two_J = lattice_min(m);
    for (auto& out : next) {
      Int two_lo = abs(two_J - two_j);
      Int two_hi = std::min(Int(two_J + two_j), prev_max);
      if (two_lo <= two_hi) {
        long lo = ((two_lo - prev_min) / 2).convert_to<long>();
        long hi = ((two_hi - prev_min) / 2).convert_to<long>();
        out = prefix[hi + 1] - prefix[lo];
      }
      two_J += 2;
    }
    cur = std::move(next);
  }

  DegeneracyTable t;
  t.j = j;
  t.n = n;
  t.two_min = lattice_min(n);
  t.two_max = Int(n) * two_j;
  t.values = std::move(cur);
  return t;
}

Int degeneracy_direct(const Spin& j, int n, const Spin& J) {
  return degeneracy_table(j, n).at_two(J.twice());
}

PiecewisePoly::PiecewisePoly(Spin j, int n, std::vector<Segment> segments)
    : j_(std::move(j)), n_(n), segs_(std::move(segments)) {
  if (segs_.empty()) throw std::invalid_argument("PiecewisePoly: no segments");
  for (size_t i = 1; i < segs_.size(); ++i) {
    if (segs_[i].two_lo != segs_[i - 1].two_hi + 2)
      throw std::logic_error("PiecewisePoly: segments not contiguous");
  }
}

size_t PiecewisePoly::segment_index(const Int& two_J) const {
  for (size_t i = 0; i < segs_.size(); ++i)
    if (segs_[i].two_lo <= two_J && two_J <= segs_[i].two_hi) return i;
  throw std::out_of_range("PiecewisePoly::segment_index");
}

Int PiecewisePoly::eval_two(const Int& two_J) const {
  if (two_J < two_min() || two_J > two_max()) return 0;
  if ((two_J - two_min()) % 2 != 0) return 0;
  Rat v = poly::eval(segs_[segment_index(two_J)].coeffs, Rat(two_J, 2));
  if (denominator(v) != 1)
    throw std::logic_error("PiecewisePoly: non-integer value at lattice point");
  return numerator(v);
}

namespace {

// Prefix-sum representation of a PiecewisePoly: piece i evaluates the
// running sum sum_{J' <= X} D for X on the lattice in [two_lo, two_hi],
// and also one step below two_lo (where it returns the sum up to two_lo-1).
struct PrefixPiece {
  Int two_lo, two_hi;
  Poly P;
};

struct Prefix {
  std::vector<PrefixPiece> pieces;
  Int two_min, two_max;
  Rat total;
};

Prefix build_prefix(const PiecewisePoly& d) {
  Prefix pf;
  pf.two_min = d.two_min();
  pf.two_max = d.two_max();
  Rat cum = 0;
  for (const auto& seg : d.segments()) {
    Poly P = poly::prefix_sum_from(seg.coeffs, seg.two_lo);
    if (P.empty()) P.resize(1);
    P[0] += cum;
    pf.pieces.push_back({seg.two_lo, seg.two_hi, poly::trim(std::move(P))});
    cum += poly::sum_over_lattice(seg.coeffs, seg.two_lo, seg.two_hi);
  }
  pf.total = cum;
  return pf;
}

// Prefix value at the linear argument X(J) = s*J + two_c/2, as a polynomial
// in J, selecting the branch that is valid at the representative point.
Poly prefix_at_linear(const Prefix& pf, int s, const Int& two_c, const Int& rep) {
  Int two_X = s * rep + two_c;
  if (two_X < pf.two_min) return {};
  if (two_X > pf.two_max) return Poly{pf.total};
  for (const auto& piece : pf.pieces) {
    if (piece.two_lo <= two_X && two_X <= piece.two_hi)
      return poly::compose_linear(piece.P, Rat(s), Rat(two_c, 2));
  }
  throw std::logic_error("prefix_at_linear: argument fell between pieces");
}

}  // namespace

PiecewisePoly degeneracy_symbolic(const Spin& j, int n) {
  if (n < 1) throw std::invalid_argument("degeneracy_symbolic: n < 1");
  const Int two_j = j.twice();

  PiecewisePoly cur(j, 1, {{two_j, two_j, Poly{Rat(1)}}});
  for (int m = 2; m <= n; ++m) {
    const Int two_max = Int(m) * two_j;
    const Int two_min = two_max % 2;
    Prefix pf = build_prefix(cur);

    std::set<Int> cands;
    auto add_cand = [&](const Int& x) {
      for (int d = 0; d <= 2; d += 2) {
        Int y = x + d;
        y -= ((y - two_min) % 2 + 2) % 2;  // floor onto the lattice
        if (two_min <= y && y <= two_max) cands.insert(y);
      }
    };
    cands.insert(two_min);
    add_cand(two_j);                 // |J-j| branch
    add_cand(Int(m - 2) * two_j);    // min(J+j, (m-1)j) branch
    for (const auto& piece : pf.pieces) {
      for (const Int& b : {piece.two_lo, piece.two_hi}) {
        add_cand(b - two_j);         // upper bound J+j crossing a piece edge
        add_cand(b + two_j + 2);     // lower bound J-j-1 crossing
        add_cand(two_j - 2 - b);     // lower bound j-J-1 crossing
      }
    }

    std::vector<Int> starts(cands.begin(), cands.end());
    std::vector<PiecewisePoly::Segment> segs;
    for (size_t k = 0; k < starts.size(); ++k) {
      const Int& rep = starts[k];
      Int hi = (k + 1 < starts.size()) ? starts[k + 1] - 2 : two_max;
      if (hi < rep) continue;

      Poly upper;
      if (rep < Int(m - 2) * two_j) {
        upper = prefix_at_linear(pf, 1, two_j, rep);
      } else {
        upper = Poly{pf.total};  // capped at (m-1)j, the top of the lattice
      }
      Poly lower;
      if (rep < two_j) {
        lower = prefix_at_linear(pf, -1, two_j - 2, rep);  // X = j - J - 1
      } else {
        lower = prefix_at_linear(pf, 1, -two_j - 2, rep);  // X = J - j - 1
      }
      Poly dseg = poly::sub(upper, lower);
      // merge with the previous segment when the polynomials agree on the
      // shorter side's lattice points (width-1 slivers at branch points
      // evaluate identically under the neighbouring polynomial)
      auto agrees_on = [](const Poly& p, const Poly& q, const Int& lo, const Int& hi) {
        if (hi - lo > 16) return false;
        for (Int t = lo; t <= hi; t += 2)
          if (poly::eval(p, Rat(t, 2)) != poly::eval(q, Rat(t, 2))) return false;
        return true;
      };
      if (!segs.empty()) {
        auto& prev = segs.back();
        if (poly::equal(prev.coeffs, dseg) || agrees_on(prev.coeffs, dseg, rep, hi)) {
          prev.two_hi = hi;
          continue;
        }
        if (agrees_on(dseg, prev.coeffs, prev.two_lo, prev.two_hi)) {
          prev.coeffs = std::move(dseg);
          prev.two_hi = hi;
          continue;
        }
      }
      segs.push_back({rep, hi, std::move(dseg)});
    }
    cur = PiecewisePoly(j, m, std::move(segs));
  }
  return cur;
}

Rat pairing_sum(const PiecewisePoly& a, const PiecewisePoly& b) {
  if ((a.two_min() - b.two_min()) % 2 != 0) return 0;  // disjoint parity
  Rat acc = 0;
  for (const auto& sa : a.segments()) {
    for (const auto& sb : b.segments()) {
      Int lo = std::max(sa.two_lo, sb.two_lo);
      Int hi = std::min(sa.two_hi, sb.two_hi);
      if (lo <= hi)
        acc += poly::sum_over_lattice(poly::mul(sa.coeffs, sb.coeffs), lo, hi);
    }
  }
  return acc;
}

Int invariant_dimension(const Spin& j, int n, int n_a) {
  if (n_a < 1 || n_a > n - 1)
    throw std::invalid_argument("invariant_dimension: need 1 <= n_A <= n-1");
  PiecewisePoly a = degeneracy_symbolic(j, n_a);
  PiecewisePoly b = degeneracy_symbolic(j, n - n_a);
  Rat s = pairing_sum(a, b);
  if (denominator(s) != 1)
    throw std::logic_error("invariant_dimension: non-integer sum");
  return numerator(s);
}

}  // namespace invt

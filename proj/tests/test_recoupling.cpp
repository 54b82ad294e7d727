#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "invt/recoupling.hpp"

using namespace invt;

namespace {

bool cgc_is(const CgcValue& c, int sign, const Rat& square) {
  return c.sign == sign && c.square == square;
}

Spin half() { return parse_spin("1/2"); }

}  // namespace

TEST_CASE("coupling coefficients: table values") {
  CHECK(cgc_is(cgc(half(), Int(1), half(), Int(-1), Spin(0), Int(0)), +1, Rat(1, 2)));
  CHECK(cgc_is(cgc(half(), Int(-1), half(), Int(1), Spin(0), Int(0)), -1, Rat(1, 2)));
  CHECK(cgc_is(cgc(half(), Int(1), half(), Int(1), Spin(2), Int(2)), +1, Rat(1)));
  // stretched states are always 1
  CHECK(cgc_is(cgc(Spin(2), Int(2), Spin(2), Int(2), Spin(4), Int(4)), +1, Rat(1)));
  CHECK(cgc_is(cgc(Spin(4), Int(4), Spin(3), Int(3), Spin(7), Int(7)), +1, Rat(1)));
  // 1 x 1 values
  CHECK(cgc_is(cgc(Spin(2), Int(0), Spin(2), Int(0), Spin(4), Int(0)), +1, Rat(2, 3)));
  CHECK(cgc_is(cgc(Spin(2), Int(0), Spin(2), Int(0), Spin(2), Int(0)), 0, Rat(0)));
  CHECK(cgc_is(cgc(Spin(2), Int(2), Spin(2), Int(-2), Spin(0), Int(0)), +1, Rat(1, 3)));
  CHECK(cgc_is(cgc(Spin(2), Int(0), Spin(2), Int(0), Spin(0), Int(0)), -1, Rat(1, 3)));
  CHECK(cgc_is(cgc(Spin(2), Int(2), Spin(2), Int(-2), Spin(2), Int(0)), +1, Rat(1, 2)));
  CHECK(cgc_is(cgc(Spin(2), Int(-2), Spin(2), Int(2), Spin(2), Int(0)), -1, Rat(1, 2)));
  // 1 x 1/2
  CHECK(cgc_is(cgc(Spin(2), Int(2), half(), Int(-1), Spin(1), Int(1)), +1, Rat(2, 3)));
  CHECK(cgc_is(cgc(Spin(2), Int(0), half(), Int(1), Spin(1), Int(1)), -1, Rat(1, 3)));
}

TEST_CASE("coupling coefficients: selection rules and errors") {
  CHECK(cgc(half(), Int(1), half(), Int(1), Spin(0), Int(0)).is_zero());  // M mismatch
  CHECK(cgc(half(), Int(1), half(), Int(-1), Spin(4), Int(0)).is_zero());  // triangle
  CHECK_THROWS_AS(cgc(Spin(2), Int(0), Spin(2), Int(0), Spin(1), Int(0)),
                  std::invalid_argument);  // M parity incompatible with half-integer J
  CHECK_THROWS_AS(cgc(half(), Int(3), half(), Int(-1), Spin(0), Int(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(cgc(Spin(2), Int(1), Spin(2), Int(1), Spin(2), Int(2)),
                  std::invalid_argument);
}

TEST_CASE("orthogonality identities hold exactly") {
  for (auto [a, b] : std::vector<std::pair<Spin, Spin>>{
           {half(), half()}, {Spin(2), half()}, {parse_spin("3/2"), Spin(2)},
           {Spin(2), Spin(2)}, {parse_spin("3/2"), parse_spin("3/2")}}) {
    OrthogonalityReport r = orthogonality_check(a, b);
    CHECK(r.pass());
    CHECK(r.worst_residual == 0.0);
  }
}

TEST_CASE("root sums stay exact under simplification") {
  RootSum s;
  s.add(Rat(1), Rat(2));
  s.add(Rat(1), Rat(8));  // sqrt(8) = 2 sqrt(2)
  CHECK(s.terms().size() == 1);
  CHECK(s.terms().at(Int(2)) == 3);
  s.add(Rat(-3), Rat(2));
  CHECK(s.is_zero());

  RootSum t;
  t.add(Rat(2), Rat(1, 2));  // 2 sqrt(1/2) = sqrt(2)
  CHECK(t.terms().at(Int(2)) == 1);
  CHECK(!t.is_rational());
  t.add(Rat(-1), Rat(2));
  CHECK(t.is_rational());
  CHECK(t.rational_value() == 0);

  RootSum u;
  u.add(Rat(1, 3), Rat(9));
  CHECK(u.is_rational());
  CHECK(u.rational_value() == 1);
}

TEST_CASE("coupling chains enumerate exactly the degeneracy") {
  for (long tj = 1; tj <= 4; ++tj) {
    for (int n = 1; n <= 6; ++n) {
      Spin j = Spin::from_twice(Int(tj));
      DegeneracyTable t = degeneracy_table(j, n);
      for (Int x = t.two_min; x <= t.two_max; x += 2) {
        auto trees = enumerate_trees(j, n, x);
        CHECK(Int(trees.size()) == t.at_two(x));
        for (const auto& tr : trees) CHECK(tr.admissible());
      }
    }
  }
}

TEST_CASE("chain coefficients: pair and triple examples") {
  CouplingTree pair{half(), 2, {Int(0)}};
  CHECK(cgc_is(tree_coefficient(pair, {Int(1), Int(-1)}, Int(0)), +1, Rat(1, 2)));
  CHECK(tree_coefficient(pair, {Int(1), Int(1)}, Int(0)).is_zero());

  CouplingTree triple{Spin(2), 3, {Int(2), Int(0)}};
  CgcValue v = tree_coefficient(triple, {Int(2), Int(0), Int(-2)}, Int(0));
  CHECK(v.square == Rat(1, 6));  // Levi-Civita normalization

  CouplingTree bad{Spin(2), 3, {Int(8), Int(0)}};
  CHECK_THROWS_AS(tree_coefficient(bad, {Int(2), Int(0), Int(-2)}, Int(0)),
                  std::invalid_argument);
}

TEST_CASE("full change of basis is orthogonal, exactly") {
  // rows indexed by magnetic strings, columns by (chain, J, M)
  for (auto [tj, n] : std::vector<std::pair<long, int>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}, {1, 4}}) {
    Spin j = Spin::from_twice(Int(tj));
    struct Col {
      CouplingTree tree;
      Int tJ, tM;
    };
    std::vector<Col> cols;
    Int top = Int(n) * tj;
    for (Int tJ = top % 2; tJ <= top; tJ += 2)
      for (const auto& tr : enumerate_trees(j, n, tJ))
        for (Int tM = -tJ; tM <= tJ; tM += 2) cols.push_back({tr, tJ, tM});

    std::vector<std::vector<Int>> rows;
    std::vector<Int> cur(n, -tj);
    for (;;) {
      rows.push_back(cur);
      int k = n - 1;
      while (k >= 0 && cur[k] == tj) {
        cur[k] = -tj;
        --k;
      }
      if (k < 0) break;
      cur[k] += 2;
    }
    REQUIRE(rows.size() == cols.size());

    for (size_t x = 0; x < cols.size(); ++x) {
      for (size_t y = x; y < cols.size(); ++y) {
        RootSum dot;
        for (const auto& m : rows)
          dot.add_product(tree_coefficient(cols[x].tree, m, cols[x].tM),
                          tree_coefficient(cols[y].tree, m, cols[y].tM));
        if (x == y) {
          CHECK(dot.is_rational());
          CHECK(dot.rational_value() == 1);
        } else {
          CHECK(dot.is_zero());
        }
      }
    }
  }
}

TEST_CASE("singlet basis: two vectors for four spin-half legs") {
  auto B = invariant_basis(half(), 4);
  REQUIRE(B.dim_inv() == 2);
  Eigen::MatrixXd g = B.vectors.transpose() * B.vectors;
  CHECK((g - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  // oracle: null space of the positive operator Jp'Jp + Jm'Jm + Jz^2 on the
  // full product space, compared as projectors
  const long size = 16;
  Eigen::MatrixXd jz = Eigen::MatrixXd::Zero(size, size);
  Eigen::MatrixXd jp = Eigen::MatrixXd::Zero(size, size);
  for (long idx = 0; idx < size; ++idx) {
    double tm_total = 0;
    for (int leg = 0; leg < 4; ++leg) {
      long digit = (idx >> (3 - leg)) & 1;  // 0 = m up, 1 = m down
      tm_total += digit == 0 ? 0.5 : -0.5;
      if (digit == 1) jp(idx - (1L << (3 - leg)), idx) += 1.0;
    }
    jz(idx, idx) = tm_total;
  }
  Eigen::MatrixXd k = jp.transpose() * jp + jp * jp.transpose() + jz * jz;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
  Eigen::MatrixXd null_vecs(size, 2);
  int found = 0;
  for (long i = 0; i < size; ++i)
    if (es.eigenvalues()[i] < 1e-10) null_vecs.col(found++) = es.eigenvectors().col(i);
  REQUIRE(found == 2);
  Eigen::MatrixXd p_oracle = null_vecs * null_vecs.transpose();
  Eigen::MatrixXd p_basis = B.vectors * B.vectors.transpose();
  CHECK((p_oracle - p_basis).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("singlet basis: three spin-1 legs give the antisymmetric tensor") {
  auto B = invariant_basis(Spin(2), 3, 1);
  REQUIRE(B.dim_inv() == 1);
  double inv6 = 1.0 / std::sqrt(6.0);
  for (long a = 0; a < 3; ++a)
    for (long b = 0; b < 3; ++b)
      for (long c = 0; c < 3; ++c) {
        double v = B.vectors(9 * a + 3 * b + c, 0);
        int eps = (a == b || b == c || a == c) ? 0
                  : ((b - a + 3) % 3 == 1 ? 1 : -1);
        CHECK(std::abs(v - eps * inv6) < 1e-12);
      }
}

TEST_CASE("singlet basis: parity obstruction yields an empty basis") {
  auto B = invariant_basis(half(), 3, 1);
  CHECK(B.dim_inv() == 0);
}

TEST_CASE("singlet bases are orthonormal and annihilated by the generators") {
  for (auto [tj, n] : std::vector<std::pair<long, int>>{{1, 4}, {2, 4}, {2, 5}, {3, 4}, {1, 6}}) {
    Spin j = Spin::from_twice(Int(tj));
    auto B = invariant_basis(j, n);
    CHECK(B.dim_inv() == invariant_dimension(j, n, std::max(1, n / 2)));
    if (B.dim_inv() == 0) continue;
    Eigen::MatrixXd g = B.vectors.transpose() * B.vectors;
    CHECK((g - Eigen::MatrixXd::Identity(B.dim_inv(), B.dim_inv())).cwiseAbs().maxCoeff() <
          1e-12);
    for (long k = 0; k < B.dim_inv(); ++k)
      CHECK(invariance_residual(j, n, B.vectors.col(k)) < 1e-10);
  }
}

TEST_CASE("component guard") {
  CHECK_THROWS_AS(invariant_basis(Spin(40), 6), guard_error);
}

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "stunted/homology.hpp"

namespace stunted {
namespace {

using testing::load_fixture;

// Textbook Gaussian elimination on a dense 0/1 matrix.
std::size_t dense_rank(std::vector<std::vector<int>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r != rank && m[r][c]) {
        for (std::size_t k = 0; k < cols; ++k) m[r][k] ^= m[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

GF2SparseMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, double density) {
  GF2SparseMatrix m(rows, cols);
  std::bernoulli_distribution bit(density);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) {
      if (bit(rng)) m.columns[j].push_back(static_cast<std::uint32_t>(i));
    }
  }
  return m;
}

TEST(Rank, ZeroAndIdentity) {
  EXPECT_EQ(gf2_rank(GF2SparseMatrix(5, 7)), 0u);
  EXPECT_EQ(gf2_rank(GF2SparseMatrix::identity(9)), 9u);
}

TEST(Rank, MatchesDenseElimination) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const GF2SparseMatrix m = random_matrix(rng, 20, 20, trial % 2 ? 0.1 : 0.4);
    m.validate();
    std::vector<std::vector<int>> dense(20, std::vector<int>(20, 0));
    for (std::size_t j = 0; j < 20; ++j) {
      for (auto i : m.columns[j]) dense[i][j] = 1;
    }
    EXPECT_EQ(gf2_rank(m), dense_rank(dense));
  }
}

TEST(Chains, CircleBoundaryIsZero) {
  const auto c = chain_complex(*load_fixture("circle").set, 2);
  EXPECT_EQ(c.basis[1].size(), 1u);
  EXPECT_TRUE(c.boundary[1].is_zero());
}

TEST(Chains, SphereDiscsBoundTheEdge) {
  const auto c = chain_complex(*load_fixture("sphere_two_disc").set, 3);
  ASSERT_EQ(c.basis[2].size(), 2u);
  EXPECT_EQ(c.boundary[2].columns[0], GF2Vector{0});
  EXPECT_EQ(c.boundary[2].columns[1], GF2Vector{0});
}

TEST(Betti, SmallFixtures) {
  EXPECT_EQ(reduced_betti(*load_fixture("circle").set, 2).values(), (std::vector<std::uint64_t>{0, 1, 0}));
  EXPECT_EQ(reduced_betti(*load_fixture("sphere_two_disc").set, 3).values(),
            (std::vector<std::uint64_t>{0, 0, 1, 0}));
  EXPECT_EQ(reduced_betti(*point(4), 3).values(), (std::vector<std::uint64_t>{0, 0, 0, 0}));
  // Two vertices joined by two edges: reduced b0 = 0, b1 = 1.
  EXPECT_EQ(reduced_betti(*load_fixture("free_double_cover").set, 2).values(),
            (std::vector<std::uint64_t>{0, 1, 0}));
}

TEST(Betti, RangeIsCertified) {
  const auto x = circle(3);
  EXPECT_THROW(reduced_betti(*x, 3), BettiRangeError);
  const BettiTable b = reduced_betti(*x, 2);
  EXPECT_EQ(b.certified_max(), 2);
  EXPECT_THROW(b.at(3), BettiRangeError);
  EXPECT_EQ(b.at(-1), 0u);
}

// Complexes that the other tests build, for the structural checks below.
std::vector<SimplicialSetPtr> sample_sets() {
  const auto q = load_fixture("sphere_two_disc").set;
  const auto c = circle(8);
  return {q, c, smash_power(q, 2, 6), smash_power(c, 3, 6), product(q, c, 6),
          product(c, c, 6), load_fixture("four_disc").set, load_fixture("free_double_cover").set};
}

TEST(Chains, BoundarySquaredVanishes) {
  for (const auto& x : sample_sets()) {
    const auto c = chain_complex(*x, std::min<Dim>(x->truncation(), 6));
    EXPECT_NO_THROW(c.check_d_squared()) << x->name();
  }
}

TEST(Chains, EulerCharacteristic) {
  for (const auto& x : sample_sets()) {
    const Dim top = std::min<Dim>(x->truncation(), 6) - 1;
    if (x->top_dim() > top) continue;
    const auto c = chain_complex(*x, top + 1);
    const BettiTable b = reduced_betti(c, top);
    std::int64_t cells = 0;
    std::int64_t betti = 0;
    for (Dim n = 0; n <= top; ++n) {
      const std::int64_t sign = n % 2 ? -1 : 1;
      cells += sign * static_cast<std::int64_t>(c.basis[n].size());
      betti += sign * static_cast<std::int64_t>(b.at(n));
    }
    EXPECT_EQ(cells, betti) << x->name();
  }
}

TEST(Kunneth, SmashOfFixtures) {
  const auto q = load_fixture("sphere_two_disc").set;
  const auto c = circle(8);
  const auto f = load_fixture("free_double_cover").set;
  for (const auto& [x, y] : std::vector<std::pair<SimplicialSetPtr, SimplicialSetPtr>>{
           {q, c}, {c, c}, {q, q}, {f, q}, {f, c}}) {
    const Dim top = 5;
    const auto bx = reduced_betti(*x, top);
    const auto by = reduced_betti(*y, top);
    const auto bs = reduced_betti(*smash(x, y, top + 1), top);
    for (Dim t = 0; t <= top; ++t) {
      std::uint64_t expect = 0;
      for (Dim p = 0; p <= t; ++p) expect += bx.at(p) * by.at(t - p);
      EXPECT_EQ(bs.at(t), expect) << x->name() << " ^ " << y->name() << " t=" << t;
    }
  }
}

TEST(InducedMap, IdentityAndConstant) {
  const auto q = load_fixture("sphere_two_disc").set;
  const auto id = induced_map(SimplicialMap::identity(q), 3);
  for (Dim n = 0; n <= 3; ++n) {
    const auto b = reduced_betti(*q, 3).at(n);
    EXPECT_EQ(id[n], GF2SparseMatrix::identity(b));
  }
  for (const auto& m : induced_map(SimplicialMap::constant(q, q), 3)) EXPECT_TRUE(m.is_zero());
  EXPECT_FALSE(is_homologous_zero(SimplicialMap::identity(circle(4)), 2));
}

TEST(InducedMap, ReducedDiagonals) {
  const auto c = circle(6);
  EXPECT_TRUE(is_homologous_zero(reduced_diagonal(c, smash_power(c, 2, 6)), 2));
  const auto q = load_fixture("sphere_two_disc").set;
  EXPECT_TRUE(is_homologous_zero(reduced_diagonal(q, smash_power(q, 2, q->truncation())), 4));
  // On the torus the diagonal detects the cup product of the two circles.
  const auto torus = product(c, c, 6);
  EXPECT_FALSE(is_homologous_zero(reduced_diagonal(torus, smash_power(torus, 2, 6)), 2));
}

TEST(InducedMap, CompositesMultiply) {
  const auto f = load_fixture("free_double_cover").set;
  const auto c = circle(f->truncation());
  // The double cover wraps twice, so the composite with itself is zero mod 2
  // while each map alone is nonzero on a suitable circle model.
  SimplicialMap wrap(f, c);
  for (SimplexId e = 0; e < 4; ++e) wrap.set(1, e, nondegenerate_ref(0, 1));
  for (SimplexId v = 0; v < 4; ++v) wrap.set(0, v, nondegenerate_ref(0, 0));
  wrap.validate();
  SimplicialMap fold(c, f);
  fold.set(0, 0, nondegenerate_ref(f->basepoint(), 0));
  // The circle's edge is a loop, so it can only go to a degenerate simplex.
  fold.set(1, 0, f->basepoint_ref(1));
  fold.validate();
  const auto a = induced_map(wrap, 1);
  const auto b = induced_map(fold, 1);
  const auto ab = induced_map(wrap.compose_after(fold), 1);
  for (Dim n = 0; n <= 1; ++n) EXPECT_EQ(ab[n], a[n].multiply(b[n]));
  // Four edges onto one: degree 4, zero mod 2.
  EXPECT_TRUE(a[1].is_zero());
}

TEST(Les, BasepointWholeAndPinched) {
  const auto q = load_fixture("sphere_two_disc").set;
  EXPECT_EQ(quotient_betti_via_les(PointedSubset(q), 3), reduced_betti(*q, 3));
  EXPECT_EQ(quotient_betti_via_les(PointedSubset::whole(q), 3), BettiTable(3));
  // Collapsing the circle of the sphere leaves a wedge of two spheres.
  const auto f = load_fixture("sphere_two_disc");
  EXPECT_EQ(quotient_betti_via_les(*f.subset, 3).values(), (std::vector<std::uint64_t>{0, 0, 2, 0}));
  EXPECT_EQ(reduced_betti(*quotient(*f.subset).set, 3).values(), (std::vector<std::uint64_t>{0, 0, 2, 0}));
}

// Random face-closed subsets of random small complexes: exactness bookkeeping
// against direct homology of the quotient.
TEST(Les, RandomPairsMatchDirectQuotient) {
  std::mt19937 rng(5);
  const auto c = circle(8);
  const auto q2 = load_fixture("sphere_two_disc").set;
  const std::vector<SimplicialSetPtr> ambients{product(c, c, 5), smash_power(c, 3, 5), product(q2, c, 5),
                                               smash_power(q2, 2, 5), load_fixture("four_disc").set};
  int pairs = 0;
  for (int trial = 0; pairs < 20; ++trial) {
    const auto& x = ambients[trial % ambients.size()];
    const double keep = std::uniform_real_distribution<double>(0.1, 0.7)(rng);
    std::bernoulli_distribution pick(keep);
    PointedSubset s(x);
    for (Dim n = 0; n <= std::min<Dim>(x->top_dim(), 3); ++n) {
      for (SimplexId id = 0; id < x->count(n); ++id) {
        if (pick(rng)) s.insert(n, id);
      }
    }
    s.close_under_faces();
    const Dim top = std::min<Dim>(x->truncation(), 5) - 1;
    EXPECT_EQ(quotient_betti_via_les(s, top), reduced_betti(*quotient(s).set, top)) << "pair " << pairs;
    ++pairs;
  }
}

}  // namespace
}  // namespace stunted

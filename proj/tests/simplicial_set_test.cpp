#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "stunted/homology.hpp"
#include "stunted/simplicial_set.hpp"

namespace stunted {
namespace {

using testing::load_fixture;

// Every simplex of q in dimension n, degenerate or not.
std::vector<SimplexRef> all_simplices(const FiniteSimplicialSet& q, Dim n) {
  std::vector<SimplexRef> out;
  for (Dim p = 0; p <= n; ++p) {
    for (SimplexId x = 0; x < q.count(p); ++x) {
      for (DegeneracyWord w = 0; w < (DegeneracyWord{1} << n); ++w) {
        if (word::size(w) == n - p) {
          out.push_back(SimplexRef{x, static_cast<std::uint8_t>(p), static_cast<std::uint8_t>(n), w});
        }
      }
    }
  }
  return out;
}

TEST(Word, NormalizeUsesSimplicialIdentity) {
  // s0 s0 = s1 s0 on a vertex.
  const int a[] = {0, 0};
  const int b[] = {0, 1};
  EXPECT_EQ(word::normalize(a, 2, 0), word::normalize(b, 2, 0));
  EXPECT_EQ(word::normalize(a, 2, 0), 0b11u);
  const int bad[] = {2};
  EXPECT_THROW(word::normalize(bad, 1, 1), SimplicialError);
}

TEST(Circle, FacesOfDegenerateEdge) {
  auto c = circle(6);
  const SimplexRef v = nondegenerate_ref(0, 0);
  const SimplexRef e = nondegenerate_ref(0, 1);
  EXPECT_EQ(c->face(c->degenerate(v, 0), 0), v);
  EXPECT_EQ(c->face(c->degenerate(v, 0), 1), v);
  const SimplexRef s1e = c->degenerate(e, 1);
  EXPECT_EQ(c->face(s1e, 1), e);
  EXPECT_EQ(c->face(s1e, 2), e);
  EXPECT_EQ(c->face(s1e, 0), c->degenerate(v, 0));
  EXPECT_THROW(c->face(e, 2), SimplicialError);
  EXPECT_THROW(c->degenerate(e, 2), SimplicialError);
}

// Random operator words checked against all families of simplicial identities.
TEST(OperatorAlgebra, RandomizedSimplicialIdentities) {
  std::mt19937 rng(7);
  for (const char* name : {"circle", "sphere_two_disc", "four_disc", "free_double_cover"}) {
    const auto x = load_fixture(name).set;
    for (int trial = 0; trial < 300; ++trial) {
      const Dim p = std::uniform_int_distribution<Dim>(0, x->top_dim())(rng);
      if (x->count(p) == 0) continue;
      SimplexRef r = nondegenerate_ref(std::uniform_int_distribution<SimplexId>(0, x->count(p) - 1)(rng), p);
      const int k = std::uniform_int_distribution<int>(0, 5)(rng);
      for (int step = 0; step < k; ++step) {
        r = x->degenerate(r, std::uniform_int_distribution<int>(0, r.dim)(rng));
      }
      const int n = r.dim;
      if (n < 1) continue;
      for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n + 1; ++i) {
          const SimplexRef lhs = x->face(x->degenerate(r, j), i);
          if (i < j) {
            EXPECT_EQ(lhs, x->degenerate(x->face(r, i), j - 1));
          } else if (i == j || i == j + 1) {
            EXPECT_EQ(lhs, r);
          } else {
            EXPECT_EQ(lhs, x->degenerate(x->face(r, i - 1), j));
          }
        }
        for (int i = 0; i <= j; ++i) {
          EXPECT_EQ(x->degenerate(x->degenerate(r, j), i), x->degenerate(x->degenerate(r, i), j + 1));
        }
      }
      if (n >= 2) {
        for (int j = 1; j <= n; ++j) {
          for (int i = 0; i < j; ++i) EXPECT_EQ(x->face(x->face(r, j), i), x->face(x->face(r, i), j - 1));
        }
      }
    }
  }
}

TEST(OperatorAlgebra, CanonicalFormIsUnique) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int count = std::uniform_int_distribution<int>(0, 6)(rng);
    std::vector<int> ops;
    int n = 1;
    for (int k = 0; k < count; ++k) {
      ops.push_back(std::uniform_int_distribution<int>(0, n)(rng));
      ++n;
    }
    const DegeneracyWord w = word::normalize(ops.data(), count, 1);
    // Rebuild from the normal form read innermost first and compare.
    std::vector<int> again;
    for (int j = 0; j < 64; ++j) {
      if (word::has(w, j)) again.push_back(j);
    }
    EXPECT_EQ(word::normalize(again.data(), static_cast<int>(again.size()), 1), w);
    EXPECT_EQ(word::size(w), count);
  }
}

TEST(Product, TorusHasTwoTriangles) {
  auto c = circle(4);
  auto t = product(c, c, 4);
  EXPECT_EQ(t->count(0), 1u);
  EXPECT_EQ(t->count(1), 3u);
  EXPECT_EQ(t->count(2), 2u);
  EXPECT_EQ(t->count(3), 0u);
  t->validate();
}

TEST(Product, PointIsUnit) {
  const auto s = load_fixture("sphere_two_disc").set;
  const auto p = product(point(5), s, 5);
  for (Dim n = 0; n <= 5; ++n) EXPECT_EQ(p->count(n), s->count(n));
}

// Counts nondegenerate pairs by listing every pair of simplices and removing
// those that are a degeneracy of a pair one dimension down.
TEST(Product, CountsMatchExhaustiveEnumeration) {
  const auto q = load_fixture("sphere_two_disc").set;
  const auto r = circle(8);
  const auto prod = product(q, r, 4);
  for (Dim n = 0; n <= 4; ++n) {
    std::set<std::pair<SimplexRef, SimplexRef>> degenerate;
    if (n >= 1) {
      for (const auto& a : all_simplices(*q, n - 1)) {
        for (const auto& b : all_simplices(*r, n - 1)) {
          for (int j = 0; j < n; ++j) degenerate.insert({q->degenerate(a, j), r->degenerate(b, j)});
        }
      }
    }
    std::size_t count = 0;
    for (const auto& a : all_simplices(*q, n)) {
      for (const auto& b : all_simplices(*r, n)) count += degenerate.count({a, b}) ? 0 : 1;
    }
    EXPECT_EQ(prod->count(n), count) << "dimension " << n;
  }
}

TEST(Smash, CircleSmashCircleIsTwoSphere) {
  auto c = circle(4);
  auto s2 = smash_power(c, 2, 4);
  EXPECT_EQ(s2->count(0), 1u);
  // The diagonal edge survives; the two triangles of the torus remain.
  EXPECT_EQ(s2->count(1), 1u);
  EXPECT_EQ(s2->count(2), 2u);
  EXPECT_EQ(s2->count(3), 0u);
  s2->validate();
  EXPECT_EQ(reduced_betti(*s2, 3), BettiTable(std::vector<std::uint64_t>{0, 0, 1, 0}));
}

TEST(Smash, TripleSmashCounts) {
  auto c = circle(4);
  auto s3 = smash_power(c, 3, 4);
  // Nondegenerate n-simplices are surjections {1,2,3} -> {1..n}.
  EXPECT_EQ(s3->count(1), 1u);
  EXPECT_EQ(s3->count(2), 6u);
  EXPECT_EQ(s3->count(3), 6u);
  EXPECT_EQ(s3->count(4), 0u);
  s3->validate();
}

TEST(Smash, PowersOfTwoDiscSphere) {
  const auto q = load_fixture("sphere_two_disc").set;
  for (int s = 1; s <= 3; ++s) {
    const auto p = smash_power(q, s, 2 * s + 1);
    const BettiTable b = reduced_betti(*p, 2 * s);
    for (Dim n = 0; n <= 2 * s; ++n) EXPECT_EQ(b.at(n), n == 2 * s ? 1u : 0u) << "s=" << s << " n=" << n;
  }
  EXPECT_THROW(smash_power(q, 0, 3), SimplicialError);
}

TEST(Smash, PointAbsorbs) {
  const auto s = smash(point(4), load_fixture("sphere_two_disc").set, 4);
  EXPECT_EQ(s->total_count(), 1u);
}

TEST(Smash, AssociativeOnHomology) {
  const auto q = load_fixture("sphere_two_disc").set;
  const auto c = circle(8);
  for (const auto& base : {q, c}) {
    for (int a = 1; a <= 2; ++a) {
      for (int b = 1; a + b <= 4 && b <= 2; ++b) {
        if (base == q && a + b > 3) continue;
        const Dim top = (base == q ? 2 : 1) * (a + b) + 1;
        const auto whole = smash_power(base, a + b, top);
        const auto split = smash(smash_power(base, a, top), smash_power(base, b, top), top);
        EXPECT_EQ(reduced_betti(*whole, top - 1), reduced_betti(*split, top - 1)) << a << "+" << b;
      }
    }
  }
}

TEST(Quotient, BasepointAndWhole) {
  const auto q = load_fixture("sphere_two_disc").set;
  const auto same = quotient(PointedSubset(q));
  for (Dim n = 0; n <= 3; ++n) EXPECT_EQ(same.set->count(n), q->count(n));
  same.projection.validate();
  const auto collapsed = quotient(PointedSubset::whole(q));
  EXPECT_EQ(collapsed.set->total_count(), 1u);
  EXPECT_THROW(
      {
        PointedSubset bad(q);
        bad.insert(2, 0);
        quotient(bad);
      },
      SimplicialError);
}

TEST(Image, IdentityConstantDiagonal) {
  const auto q = load_fixture("sphere_two_disc").set;
  EXPECT_EQ(image_subset(SimplicialMap::identity(q)), PointedSubset::whole(q));
  EXPECT_EQ(image_subset(SimplicialMap::constant(q, q)), PointedSubset(q));
  const auto c = circle(4);
  const auto square = smash_power(c, 2, 4);
  const auto d = reduced_diagonal(c, square);
  d.validate();
  const auto img = image_subset(d);
  // (e, e) is the diagonal edge; its two shuffle triangles are not hit.
  EXPECT_EQ(img.count(1), 1u);
  EXPECT_EQ(img.count(2), 0u);
}

TEST(Orbits, FourDiscFoldsToSphere) {
  const auto f = load_fixture("four_disc");
  const auto orbits = orbit_space(*f.involution);
  EXPECT_EQ(orbits.quotient->count(0), 1u);
  EXPECT_EQ(orbits.quotient->count(1), 1u);
  EXPECT_EQ(orbits.quotient->count(2), 2u);
  EXPECT_EQ(orbits.fixed.count(1), 1u);
  EXPECT_EQ(orbits.fixed.count(2), 0u);
  EXPECT_EQ(reduced_betti(*orbits.quotient, 3), reduced_betti(*load_fixture("sphere_two_disc").set, 3));
  orbits.projection.validate();
}

TEST(Orbits, TrivialActionKeepsEverything) {
  const auto f = load_fixture("circle_trivial_action");
  const auto orbits = orbit_space(*f.involution);
  EXPECT_EQ(orbits.quotient->total_count(), f.set->total_count());
  EXPECT_EQ(orbits.fixed, PointedSubset::whole(orbits.quotient));
}

TEST(Orbits, FreeCoverHalvesTheCircle) {
  const auto f = load_fixture("free_double_cover");
  EXPECT_THROW(f.involution->validate(true), SimplicialError);
  const auto orbits = orbit_space(*f.involution);
  EXPECT_EQ(orbits.quotient->count(0), 2u);
  EXPECT_EQ(orbits.quotient->count(1), 2u);
  EXPECT_EQ(orbits.fixed.total_count(), 1u);
}

TEST(Section, FoundWhereExpected) {
  for (const char* name : {"four_disc", "circle_trivial_action"}) {
    const auto f = load_fixture(name);
    const auto y = find_section(*f.involution);
    ASSERT_TRUE(y.has_value()) << name;
    y->validate();
    const auto orbits = orbit_space(*f.involution);
    // The section followed by the projection is the identity.
    const SimplicialMap j = section_map(orbits, *y);
    j.validate();
    const SimplicialMap composite = orbits.projection.compose_after(j);
    for (Dim n = 0; n <= orbits.quotient->top_dim(); ++n) {
      for (SimplexId x = 0; x < orbits.quotient->count(n); ++x) {
        EXPECT_EQ(composite.image(n, x), nondegenerate_ref(x, n));
      }
    }
  }
  EXPECT_FALSE(find_section(*load_fixture("free_double_cover").involution).has_value());
}

TEST(Involution, SquaresToIdentity) {
  for (const char* name : {"four_disc", "free_double_cover", "circle_trivial_action"}) {
    const auto f = load_fixture(name);
    const auto& t = *f.involution;
    for (Dim n = 0; n <= f.set->top_dim(); ++n) {
      for (SimplexId x = 0; x < f.set->count(n); ++x) EXPECT_EQ(t(n, t(n, x)), x);
    }
  }
}

}  // namespace
}  // namespace stunted

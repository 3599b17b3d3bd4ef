// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stunted/closed_form.hpp"
#include "stunted/homology.hpp"
#include "stunted/pinched.hpp"
#include "stunted/serialize.hpp"
#include "stunted/smash_homology.hpp"

namespace stunted {
namespace {

const std::vector<std::uint64_t> kTable{0, 2, 1, 5, 5, 14, 19, 42, 66, 131, 221, 417};

struct Outcome {
  bool ok = true;
  std::string detail;
};

SimplicialSetFile fixture(const std::string& name) {
  return load_simplicial_set(std::string(STUNTED_FIXTURE_DIR) + "/" + name + ".json");
}

// Orbit space and fixed set of a fixture with an involution.
struct Pair {
  SimplicialSetPtr q;
  PointedSubset a;
};

Pair orbit_pair(const std::string& name) {
  const auto f = fixture(name);
  auto orbits = orbit_space(*f.involution);
  return {orbits.quotient, orbits.fixed};
}

// Records the first few mismatches; later ones only count.
class Checker {
 public:
  template <typename T>
  void equal(const T& got, const T& want, const std::string& what) {
    ++checks_;
    if (got == want) return;
    ++failures_;
    if (failures_ <= 3) {
      std::ostringstream out;
      out << what << ": got " << got << ", want " << want << "; ";
      notes_ += out.str();
    }
  }
  void expect(bool cond, const std::string& what) { equal(cond, true, what); }

  Outcome outcome(const std::string& summary) const {
    if (failures_ == 0) return {true, summary + " (" + std::to_string(checks_) + " checks)"};
    return {false, std::to_string(failures_) + " of " + std::to_string(checks_) + " checks failed: " + notes_};
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::string notes_;
};

Outcome loop_table() {
  Checker c;
  for (int n = 1; n <= 12; ++n) c.equal(loop_betti_example(n), kTable[n - 1], "n=" + std::to_string(n));
  return c.outcome("loop Betti numbers for n = 1..12 match the table");
}

Outcome conjecture() {
  Checker c;
  const auto series = poincare_coeffs(24);
  c.expect(series.satisfies_recurrence(), "series recurrence");
  std::string reported;
  for (int n = 1; n <= 24; ++n) {
    const auto closed = static_cast<std::int64_t>(loop_betti_example(n));
    if (n <= 12) {
      c.equal(series.coeffs[n], closed, "a" + std::to_string(n));
    } else {
      reported += " " + std::to_string(n) + (series.coeffs[n] == closed ? ":match" : ":differs");
    }
  }
  return c.outcome("series equals the closed form for n = 1..12; reported n = 13..24:" + reported);
}

Outcome pinched_oracle() {
  Checker c;
  const Pair p = orbit_pair("four_disc");
  const BettiInput input{reduced_betti(*p.q, 8), reduced_betti(*restrict(p.a).set, 8)};
  for (int s = 2; s <= 5; ++s) {
    const BettiTable brute = reduced_betti(*pinched_complex(p.a, s, 7), 6);
    for (int t = 0; t <= 6; ++t) {
      const std::string at = "s=" + std::to_string(s) + " t=" + std::to_string(t);
      c.equal(brute.at(t), betti_pinched_formula(input, s, t), at + " formula");
      c.equal(brute.at(t), betti_pinched_example(s, t), at + " example");
    }
  }
  return c.outcome("chain-level pinched Betti numbers equal both formulas for 2 <= s <= 5, 0 <= t <= 6");
}

Outcome loop_assembly() {
  Checker c;
  const Pair p = orbit_pair("four_disc");
  const int n_max = 5;
  std::vector<BettiTable> quotients(1);
  for (int s = 1; s <= n_max; ++s) {
    if (s <= 4) {
      const auto power = smash_power(p.q, s, n_max + 1);
      quotients.push_back(reduced_betti(*quotient(pinched_set(power, p.a)).set, n_max));
    } else {
      quotients.push_back(pinched_quotient_betti(p.a, s, n_max));
    }
  }
  for (int n = 1; n <= n_max; ++n) {
    c.equal(loop_betti(quotients, n), loop_betti_example(n), "n=" + std::to_string(n));
  }
  return c.outcome("summed quotient homology equals the loop Betti numbers for n = 1..5");
}

Outcome mayer_vietoris() {
  Checker c;
  for (const char* name : {"four_disc", "circle_trivial_action"}) {
    const Pair p = orbit_pair(name);
    c.expect(diagonal_homologous_zero(p.a, 5), std::string(name) + " diagonal");
    const MvInput input = mv_input(p.a, 6);
    for (int s = 2; s <= 4; ++s) {
      const BettiTable brute = reduced_betti(*pinched_complex(p.a, s, 6), 5);
      for (int t = 0; t <= 5; ++t) {
        c.equal(mv_e1_betti(input, s, t), brute.at(t),
                std::string(name) + " s=" + std::to_string(s) + " t=" + std::to_string(t));
      }
    }
  }
  return c.outcome("E1 sums equal chain-level pinched Betti numbers for s <= 4, t <= 5 on both fixtures");
}

void check_composition_multiset(Checker& c, int s) {
  std::map<int, std::map<Composition, int>> by_size;
  for (const auto& index : CoverIndex::all_nonempty(s)) ++by_size[index.size()][intersection_to_composition(index)];
  for (int size = 1; size <= s - 1; ++size) {
    std::map<Composition, int> want;
    for (const auto& alpha : Composition::all_of(s)) {
      if (alpha.dim() == s - size) ++want[alpha];
    }
    c.expect(by_size[size] == want, "composition multiset s=" + std::to_string(s) + " #I=" + std::to_string(size));
  }
}

Outcome intersections() {
  Checker c;
  for (int s = 2; s <= 6; ++s) check_composition_multiset(c, s);

  // Trivial action on the circle: whole smash powers, every dimension.
  const Pair circ = orbit_pair("circle_trivial_action");
  for (int s = 2; s <= 6; ++s) {
    const auto power = smash_power(circ.q, s, s);
    for (const auto& index : CoverIndex::all_nonempty(s)) {
      c.expect(delta_intersection(power, circ.a, index) == delta_alpha(power, circ.a, intersection_to_composition(index)),
               "circle s=" + std::to_string(s) + " I=" + std::to_string(index.members));
    }
  }

  // Two-disc sphere: both sides lie in the pinched set, so its elements are
  // the only ones that can disagree. Complete for s <= 5; s = 6 stops at
  // dimension 4 because the higher pieces run to millions of cells.
  const Pair sphere = orbit_pair("four_disc");
  for (int s = 2; s <= 6; ++s) {
    const Dim top = s <= 5 ? 2 * s - 2 : 4;
    const auto pinched = pinched_complex(sphere.a, s, top);
    std::vector<Composition> gammas;
    for (int j = 1; j < s; ++j) gammas.push_back(Composition::gamma(j, s));
    const auto indices = CoverIndex::all_nonempty(s);
    std::vector<Composition> alphas;
    for (const auto& index : indices) alphas.push_back(intersection_to_composition(index));
    std::uint64_t mismatches = 0;
    for (Dim n = 0; n <= top; ++n) {
      for (SimplexId id = 0; id < pinched->count(n); ++id) {
        if (n == 0 && id == pinched->basepoint()) continue;
        const auto comps = pinched->components(n, id);
        std::uint32_t in_piece = 0;
        for (int j = 1; j < s; ++j) {
          if (in_delta_alpha(comps, sphere.a, gammas[j - 1])) in_piece |= 1U << (j - 1);
        }
        for (std::size_t k = 0; k < indices.size(); ++k) {
          const bool in_intersection = (in_piece & indices[k].members) == indices[k].members;
          if (in_intersection != in_delta_alpha(comps, sphere.a, alphas[k])) ++mismatches;
        }
      }
    }
    c.equal(mismatches, std::uint64_t{0}, "sphere s=" + std::to_string(s));
  }
  return c.outcome("cover intersections equal composition pieces for s <= 6");
}

Outcome sections() {
  Checker c;
  for (const char* name : {"four_disc", "circle_trivial_action"}) {
    const auto f = fixture(name);
    const auto y = find_section(*f.involution);
    c.expect(y.has_value(), std::string(name) + " has a section");
    if (!y) continue;
    const auto orbits = orbit_space(*f.involution);
    const auto j = section_map(orbits, *y);
    j.validate();
    const auto back = orbits.projection.compose_after(j);
    for (Dim n = 0; n <= orbits.quotient->top_dim(); ++n) {
      for (SimplexId x = 0; x < orbits.quotient->count(n); ++x) {
        c.expect(back.image(n, x) == nondegenerate_ref(x, n), std::string(name) + " section splits");
      }
    }
  }
  c.expect(!find_section(*fixture("free_double_cover").involution).has_value(), "free cover has no section");
  return c.outcome("sections on the four-disc and trivial-action fixtures, none on the free double cover");
}

Outcome properties() {
  Checker c;
  std::mt19937 rng(17);

  // Simplicial identities on random operator words.
  for (const char* name : {"circle", "sphere_two_disc", "four_disc", "free_double_cover"}) {
    const auto x = fixture(name).set;
    for (int trial = 0; trial < 200; ++trial) {
      const Dim p = std::uniform_int_distribution<Dim>(0, x->top_dim())(rng);
      SimplexRef r = nondegenerate_ref(std::uniform_int_distribution<SimplexId>(0, x->count(p) - 1)(rng), p);
      const int k = std::uniform_int_distribution<int>(0, 5)(rng);
      for (int step = 0; step < k; ++step) r = x->degenerate(r, std::uniform_int_distribution<int>(0, r.dim)(rng));
      const int n = r.dim;
      for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n + 1; ++i) {
          const SimplexRef lhs = x->face(x->degenerate(r, j), i);
          if (i < j) {
            c.expect(lhs == x->degenerate(x->face(r, i), j - 1), "d_i s_j, i < j");
          } else if (i <= j + 1) {
            c.expect(lhs == r, "d_i s_j = id");
          } else {
            c.expect(lhs == x->degenerate(x->face(r, i - 1), j), "d_i s_j, i > j + 1");
          }
        }
        for (int i = 0; i <= j; ++i) {
          c.expect(x->degenerate(x->degenerate(r, j), i) == x->degenerate(x->degenerate(r, i), j + 1), "s_i s_j");
        }
      }
      for (int j = 1; n >= 2 && j <= n; ++j) {
        for (int i = 0; i < j; ++i) c.expect(x->face(x->face(r, j), i) == x->face(x->face(r, i), j - 1), "d_i d_j");
      }
    }
  }

  // Boundary squared on every kind of constructed complex.
  const auto sphere = fixture("sphere_two_disc");
  const auto q = sphere.set;
  const auto circ = circle(8);
  const Pair four = orbit_pair("four_disc");
  std::vector<SimplicialSetPtr> complexes{q, circ, fixture("four_disc").set, fixture("free_double_cover").set,
                                          product(q, circ, 6), smash_power(q, 3, 6), smash_power(circ, 4, 6),
                                          pinched_complex(four.a, 3, 6), delta_alpha_complex(four.a, Composition({2, 1, 2}), 6),
                                          quotient(*sphere.subset).set, four.q, restrict(four.a).set};
  for (const auto& x : complexes) {
    bool ok = true;
    try {
      chain_complex(*x, std::min<Dim>(x->truncation(), 6)).check_d_squared();
    } catch (const SimplicialError&) {
      ok = false;
    }
    c.expect(ok, "boundary squared on " + x->name());
  }

  // Kunneth for smash products.
  const std::vector<SimplicialSetPtr> spaces{q, circ, fixture("free_double_cover").set, restrict(*sphere.subset).set};
  for (const auto& x : spaces) {
    for (const auto& y : spaces) {
      const Dim top = 5;
      const auto bx = reduced_betti(*x, top);
      const auto by = reduced_betti(*y, top);
      const auto bs = reduced_betti(*smash(x, y, top + 1), top);
      for (Dim t = 0; t <= top; ++t) {
        std::uint64_t want = 0;
        for (Dim p = 0; p <= t; ++p) want += bx.at(p) * by.at(t - p);
        c.equal(bs.at(t), want, "Kunneth " + x->name() + " ^ " + y->name());
      }
    }
  }

  // Long exact sequence bookkeeping on random pairs.
  const std::vector<SimplicialSetPtr> ambients{product(circ, circ, 5), smash_power(circ, 3, 5), product(q, circ, 5),
                                               smash_power(q, 2, 5), fixture("four_disc").set};
  for (int pair = 0; pair < 20; ++pair) {
    const auto& x = ambients[pair % ambients.size()];
    std::bernoulli_distribution pick(std::uniform_real_distribution<double>(0.1, 0.7)(rng));
    PointedSubset s(x);
    for (Dim n = 0; n <= std::min<Dim>(x->top_dim(), 3); ++n) {
      for (SimplexId id = 0; id < x->count(n); ++id) {
        if (pick(rng)) s.insert(n, id);
      }
    }
    s.close_under_faces();
    const Dim top = std::min<Dim>(x->truncation(), 5) - 1;
    c.expect(quotient_betti_via_les(s, top) == reduced_betti(*quotient(s).set, top), "LES pair " + std::to_string(pair));
  }
  return c.outcome("simplicial identities, boundary squared, Kunneth and 20 LES pairs");
}

}  // namespace
}  // namespace stunted

int main() {
  using namespace stunted;
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const std::vector<Criterion> criteria{
      {1, "Betti table", loop_table},
      {2, "series check", conjecture},
      {3, "pinched-set formula", pinched_oracle},
      {4, "loop-space assembly", loop_assembly},
      {5, "E1 collapse", mayer_vietoris},
      {6, "cover intersections", intersections},
      {7, "section search", sections},
      {8, "property suites", properties},
  };
  int failed = 0;
  for (const auto& crit : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = crit.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d (%s): %s [%.2fs]\n", out.ok ? "PASS" : "FAIL", crit.id, crit.name, out.detail.c_str(),
                secs);
    std::fflush(stdout);
    if (!out.ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

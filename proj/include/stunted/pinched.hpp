#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stunted/homology.hpp"
#include "stunted/simplicial_set.hpp"

namespace stunted {

/// A sequence of positive integers (a_1, ..., a_d); may be empty.
class Composition {
 public:
  Composition() = default;
  explicit Composition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  /// Sum of the parts.
  int length() const;
  /// Number of parts.
  int dim() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }

  /// (1, ..., 1, 2, 1, ..., 1) of length s with the 2 in position j (1-based).
  static Composition gamma(int j, int s);
  /// All compositions of s, in lexicographic order.
  static std::vector<Composition> all_of(int s);

  std::string to_string() const;

  friend auto operator<=>(const Composition&, const Composition&) = default;
  friend bool operator==(const Composition&, const Composition&) = default;

 private:
  std::vector<int> parts_;
};

/// A subset I of {1, ..., s-1} naming cover pieces to intersect.
struct CoverIndex {
  int s = 0;
  /// Bit j - 1 set iff j is in I.
  std::uint32_t members = 0;

  int size() const;
  bool contains(int j) const { return j >= 1 && ((members >> (j - 1)) & 1U) != 0; }
  std::vector<int> elements() const;
  /// All nonempty subsets for the given s.
  static std::vector<CoverIndex> all_nonempty(int s);
};

/// Merges positions j and j + 1 for every j in I.
Composition intersection_to_composition(const CoverIndex& index);

// Membership predicates on tuples of components (refs of Q at a common
// ambient dimension). A component lies in A when its base does.

bool is_pinched(std::span<const SimplexRef> comps, const PointedSubset& a);
bool in_delta_alpha(std::span<const SimplexRef> comps, const PointedSubset& a, const Composition& alpha);
/// Some adjacent pair equal, with no condition on A.
bool in_adjacent_fat_diagonal(std::span<const SimplexRef> comps);

/// Subsets of a materialized power = smash_power(Q, s); `a` is a subset of Q.
PointedSubset pinched_set(const SimplicialSetPtr& power, const PointedSubset& a);
PointedSubset delta_alpha(const SimplicialSetPtr& power, const PointedSubset& a, const Composition& alpha);
/// Intersection of the cover pieces delta_alpha(gamma(j)) for j in I.
PointedSubset delta_intersection(const SimplicialSetPtr& power, const PointedSubset& a, const CoverIndex& index);
/// Union of the cover pieces delta_alpha(gamma(j)), j = 1..s-1.
PointedSubset pinched_union(const SimplicialSetPtr& power, const PointedSubset& a);
PointedSubset adjacent_fat_diagonal(const SimplicialSetPtr& power);

/// Builds the pinched set inductively: a tuple belongs at stage s when its
/// first s-1 components form a simplex of the stage s-1 set, or its last two
/// components form a simplex of the diagonal image of A in Q ^ Q. Lower
/// stages are computed inside freshly built smaller smash powers.
PointedSubset pinched_inductive(const SimplicialSetPtr& power, const PointedSubset& a);

/// The piece delta_alpha as a standalone tuple set over s = |alpha| copies
/// of Q, enumerated from the smash of its factors (Q for parts of size 1,
/// A for the rest) instead of filtering a full smash power.
SimplicialSetPtr delta_alpha_complex(const PointedSubset& a, const Composition& alpha, Dim truncation);
/// The pinched set as a standalone tuple set, as the union of its cover pieces.
SimplicialSetPtr pinched_complex(const PointedSubset& a, int s, Dim truncation);

/// Reduced Betti numbers of a smash of spaces from those of the factors.
BettiTable kunneth(const std::vector<const BettiTable*>& factors, Dim max_degree);

class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Whether the reduced diagonal A -> A ^ A induces zero on mod 2 homology
/// through `max_degree`.
bool diagonal_homologous_zero(const PointedSubset& a, Dim max_degree);

/// Betti numbers of Q and A through max_degree, with the diagonal hypothesis
/// checked; throws HypothesisError when it fails.
struct MvInput {
  BettiTable q;
  BettiTable a;
};
MvInput mv_input(const PointedSubset& a, Dim max_degree);

/// Sum over nonempty I of b_q(Delta_I), #I + q - 1 = t, with the Betti
/// table of each piece from the Kunneth formula.
std::uint64_t mv_e1_betti(const MvInput& input, int s, int t);
/// Checks the diagonal hypothesis through degree t, then sums.
std::uint64_t mv_e1_betti(const PointedSubset& a, int s, int t);
/// Same sum with every piece's homology computed from its chains.
std::uint64_t mv_e1_betti_chains(const PointedSubset& a, int s, int t);

}  // namespace stunted

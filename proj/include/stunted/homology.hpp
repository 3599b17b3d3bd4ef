#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stunted/simplicial_set.hpp"

namespace stunted {

/// A GF(2) vector: sorted, duplicate-free list of indices holding a 1.
using GF2Vector = std::vector<std::uint32_t>;

/// Symmetric difference of two sorted index lists.
GF2Vector gf2_add(const GF2Vector& a, const GF2Vector& b);

/// Sorts and cancels repeated indices in pairs.
void gf2_normalize(GF2Vector& v);

struct GF2SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<GF2Vector> columns;

  GF2SparseMatrix() = default;
  GF2SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}
  static GF2SparseMatrix identity(std::size_t n);

  bool is_zero() const;
  /// Throws std::invalid_argument on out-of-range or unsorted entries.
  void validate() const;
  /// this * other.
  GF2SparseMatrix multiply(const GF2SparseMatrix& other) const;

  friend bool operator==(const GF2SparseMatrix&, const GF2SparseMatrix&) = default;
};

std::size_t gf2_rank(const GF2SparseMatrix& m);

class BettiRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Reduced mod 2 Betti numbers for dimensions 0..certified_max().
/// Queries above the certified range throw; negative degrees read as 0.
class BettiTable {
 public:
  BettiTable() = default;
  explicit BettiTable(Dim certified_max) : values_(static_cast<std::size_t>(certified_max + 1), 0) {}
  explicit BettiTable(std::vector<std::uint64_t> values) : values_(std::move(values)) {}

  Dim certified_max() const { return static_cast<Dim>(values_.size()) - 1; }
  std::uint64_t at(Dim n) const;
  std::uint64_t operator[](Dim n) const { return at(n); }
  void set(Dim n, std::uint64_t value);
  const std::vector<std::uint64_t>& values() const { return values_; }
  /// The table cut down to 0..max (max <= certified_max()).
  BettiTable truncated(Dim max) const;

  /// "b0=0 b1=1 b2=0".
  std::string to_string() const;

  friend bool operator==(const BettiTable&, const BettiTable&) = default;

 private:
  std::vector<std::uint64_t> values_;
};

/// Normalized reduced chains: the basis in dimension n is the nondegenerate
/// n-simplices other than the base vertex; boundaries drop faces that are
/// degenerate or the basepoint.
struct ChainComplexGF2 {
  /// Highest dimension with a basis; boundary[max_dim] is available.
  Dim max_dim = -1;
  std::vector<std::vector<SimplexId>> basis;
  /// Simplex id -> position in basis[n], or -1 for the base vertex.
  std::vector<std::vector<std::int64_t>> index;
  /// boundary[n] : C_n -> C_{n-1}; boundary[0] is the zero map to 0 rows.
  std::vector<GF2SparseMatrix> boundary;

  std::size_t rank(Dim n) const { return n < 0 || n > max_dim ? 0 : basis[n].size(); }
  /// Throws SimplicialError if some boundary composite is nonzero.
  void check_d_squared() const;
};

/// Chains through dimension max_dim (<= truncation of q).
ChainComplexGF2 chain_complex(const FiniteSimplicialSet& q, Dim max_dim);

/// Betti numbers through degree `max_degree`; needs boundary[max_degree + 1].
BettiTable reduced_betti(const ChainComplexGF2& c, Dim max_degree);
/// Throws BettiRangeError if the truncation of q is below max_degree + 1.
BettiTable reduced_betti(const FiniteSimplicialSet& q, Dim max_degree);

/// Homology of one degree with cycle representatives and the data to read off
/// the class of any cycle.
class HomologyBasis {
 public:
  HomologyBasis(const ChainComplexGF2& c, Dim degree);

  Dim degree() const { return degree_; }
  std::size_t dimension() const { return reps_.size(); }
  const std::vector<GF2Vector>& representatives() const { return reps_; }

  /// Coordinates of the class of `cycle` in the representative basis.
  /// Throws SimplicialError if it is not a cycle.
  GF2Vector coordinates(const GF2Vector& cycle) const;
  bool is_boundary(const GF2Vector& cycle) const { return coordinates(cycle).empty(); }

 private:
  struct Entry {
    GF2Vector column;
    GF2Vector tag;
  };
  Dim degree_;
  GF2SparseMatrix boundary_;
  std::vector<GF2Vector> reps_;
  /// Echelon of boundaries and representatives keyed by lowest entry.
  std::vector<std::int64_t> pivot_of_row_;
  std::vector<Entry> entries_;
};

/// Matrices of f_* : H_n(source) -> H_n(target) for n = 0..max_degree, in
/// the representative bases of HomologyBasis.
std::vector<GF2SparseMatrix> induced_map(const SimplicialMap& f, Dim max_degree);

/// Whether f_* vanishes in every degree 0..max_degree.
bool is_homologous_zero(const SimplicialMap& f, Dim max_degree);

/// Betti numbers of q/S from those of q and S and the rank of the inclusion
/// on homology, through exactness of the long exact sequence.
BettiTable quotient_betti_via_les(const PointedSubset& s, Dim max_degree);

}  // namespace stunted

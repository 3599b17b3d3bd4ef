#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace stunted {

using Dim = int;
using SimplexId = std::uint32_t;

/// Maximum ambient dimension a SimplexRef can carry.
inline constexpr Dim kMaxDim = 63;

/// Degeneracy word in normal form s_{j_k} ... s_{j_1} with j_1 < ... < j_k,
/// stored as the set {j_1, ..., j_k}. Equivalently, bit j is set iff the
/// underlying surjection [n] -> [p] takes the same value at j and j + 1.
using DegeneracyWord = std::uint64_t;

/// Any simplex, degenerate or not: a degeneracy word applied to a
/// nondegenerate simplex. Two refs are equal iff they denote the same simplex.
struct SimplexRef {
  SimplexId base = 0;
  std::uint8_t base_dim = 0;
  std::uint8_t dim = 0;
  DegeneracyWord word = 0;

  bool nondegenerate() const { return word == 0; }

  friend auto operator<=>(const SimplexRef&, const SimplexRef&) = default;
  friend bool operator==(const SimplexRef&, const SimplexRef&) = default;
};

inline SimplexRef nondegenerate_ref(SimplexId id, Dim n) {
  return SimplexRef{id, static_cast<std::uint8_t>(n), static_cast<std::uint8_t>(n), 0};
}

class SimplicialError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace word {

inline DegeneracyWord low_bits(int k) {
  return k >= 64 ? ~DegeneracyWord{0} : ((DegeneracyWord{1} << k) - 1);
}

inline bool has(DegeneracyWord w, int j) { return j >= 0 && ((w >> j) & 1U) != 0; }

/// Inserts a new position at j holding `bit`; positions >= j move up by one.
inline DegeneracyWord insert(DegeneracyWord w, int j, bool bit) {
  const DegeneracyWord lo = w & low_bits(j);
  const DegeneracyWord hi = (w & ~low_bits(j)) << 1;
  return lo | hi | (bit ? (DegeneracyWord{1} << j) : 0);
}

/// Removes position j; positions above j move down by one.
inline DegeneracyWord erase(DegeneracyWord w, int j) {
  const DegeneracyWord lo = w & low_bits(j);
  const DegeneracyWord hi = (w >> 1) & ~low_bits(j);
  return lo | hi;
}

/// Deposits the low bits of `inner` into the positions of [0, length) that
/// are clear in `outer`, in increasing order, and ORs the result with `outer`.
/// This is the repeat set of the composite surjection inner . outer.
inline DegeneracyWord compose(DegeneracyWord outer, DegeneracyWord inner, int length) {
  DegeneracyWord result = outer;
  int k = 0;
  for (int pos = 0; pos < length; ++pos) {
    if (has(outer, pos)) continue;
    if (has(inner, k)) result |= DegeneracyWord{1} << pos;
    ++k;
  }
  return result;
}

/// Removes every position of `drop` from `w` and packs the rest downwards.
inline DegeneracyWord extract(DegeneracyWord w, DegeneracyWord drop, int length) {
  DegeneracyWord result = 0;
  int k = 0;
  for (int pos = 0; pos < length; ++pos) {
    if (has(drop, pos)) continue;
    if (has(w, pos)) result |= DegeneracyWord{1} << k;
    ++k;
  }
  return result;
}

inline int size(DegeneracyWord w) { return std::popcount(w); }

/// Value of the surjection at position i, i.e. the number of non-repeat
/// positions below i.
inline int value_at(DegeneracyWord w, int i) { return i - std::popcount(w & low_bits(i)); }

/// Normal form of an arbitrary degeneracy sequence, given innermost first.
/// Uses s_i s_j = s_{j+1} s_i for i <= j.
DegeneracyWord normalize(const int* ops_innermost_first, int count, Dim base_dim);

/// Renders the word as "s3s1s0" (outermost first), empty for no degeneracies.
std::string to_string(DegeneracyWord w);

}  // namespace word

struct SimplexRefHash {
  std::size_t operator()(const SimplexRef& r) const noexcept {
    std::uint64_t h = r.word * 0x9E3779B97F4A7C15ULL;
    h ^= (static_cast<std::uint64_t>(r.base) << 16) ^ (static_cast<std::uint64_t>(r.dim) << 8) ^
         r.base_dim;
    h *= 0xBF58476D1CE4E5B9ULL;
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

}  // namespace stunted

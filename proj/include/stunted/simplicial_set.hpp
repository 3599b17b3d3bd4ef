#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stunted/simplex.hpp"

namespace stunted {

class FiniteSimplicialSet;
namespace detail {
struct TupleIndex;
}
using SimplicialSetPtr = std::shared_ptr<const FiniteSimplicialSet>;

/// A finite pointed simplicial set stored through its nondegenerate simplices
/// and their face tables, for dimensions 0..truncation.
///
/// Sets built as products or smash products additionally carry, for every
/// nondegenerate simplex, its tuple of components (one SimplexRef per factor,
/// at the ambient dimension). Instances are immutable once built.
class FiniteSimplicialSet {
 public:
  class Builder;

  Dim truncation() const { return static_cast<Dim>(levels_.size()) - 1; }
  std::size_t count(Dim n) const { return n < 0 || n > truncation() ? 0 : levels_[n].size; }
  std::size_t total_count() const;
  /// Highest dimension holding a nondegenerate simplex.
  Dim top_dim() const;

  SimplexId basepoint() const { return basepoint_; }
  bool is_basepoint(const SimplexRef& r) const { return r.base_dim == 0 && r.base == basepoint_; }
  SimplexRef basepoint_ref(Dim n) const {
    return SimplexRef{basepoint_, 0, static_cast<std::uint8_t>(n), word::low_bits(n)};
  }

  /// Stored face d_i of the nondegenerate simplex (n, id), n >= 1.
  const SimplexRef& stored_face(Dim n, SimplexId id, int i) const {
    return levels_[n].faces[static_cast<std::size_t>(id) * (n + 1) + i];
  }
  std::span<const SimplexRef> stored_faces(Dim n, SimplexId id) const {
    return {levels_[n].faces.data() + static_cast<std::size_t>(id) * (n + 1),
            static_cast<std::size_t>(n + 1)};
  }

  /// d_i applied to any simplex, in canonical form.
  SimplexRef face(const SimplexRef& r, int i) const;
  /// s_j applied to any simplex, in canonical form.
  SimplexRef degenerate(const SimplexRef& r, int j) const;
  /// Applies the degeneracy surjection with repeat set `outer` (at ambient
  /// dimension r.dim + |outer|) to r.
  static SimplexRef apply_degeneracies(const SimplexRef& r, DegeneracyWord outer);

  void check_ref(const SimplexRef& r) const;

  std::string label(Dim n, SimplexId id) const;
  std::string ref_label(const SimplexRef& r) const;
  bool has_labels() const { return has_labels_; }
  std::optional<SimplexRef> find(std::string_view label) const;

  std::size_t arity() const { return factors_.size(); }
  const std::vector<SimplicialSetPtr>& factors() const { return factors_; }
  bool is_smash() const { return smash_; }
  std::span<const SimplexRef> components(Dim n, SimplexId id) const {
    const std::size_t k = factors_.size();
    return {levels_[n].components.data() + static_cast<std::size_t>(id) * k, k};
  }

  /// Canonical ref of a tuple of components at ambient dimension n (tuple
  /// sets only). Fat-wedge tuples of a smash map to the basepoint; nullopt if
  /// the nondegenerate tuple is not part of this set.
  std::optional<SimplexRef> find_tuple(std::span<const SimplexRef> comps, Dim n) const;

  const std::string& name() const { return name_; }

  /// Verifies d_i d_j = d_{j-1} d_i (i < j) on every stored simplex and that
  /// every stored face is canonical and in range. Throws SimplicialError.
  void validate() const;

 private:
  struct Level {
    std::size_t size = 0;
    std::vector<std::string> labels;
    std::vector<SimplexRef> faces;
    std::vector<SimplexRef> components;
  };

  std::vector<Level> levels_;
  SimplexId basepoint_ = 0;
  bool has_labels_ = false;
  bool smash_ = false;
  std::vector<SimplicialSetPtr> factors_;
  std::string name_;
  std::shared_ptr<const std::unordered_map<std::string, SimplexRef>> label_index_;
  std::shared_ptr<const detail::TupleIndex> tuple_index_;

  friend class Builder;
  friend class TupleSetBuilder;
};

class FiniteSimplicialSet::Builder {
 public:
  explicit Builder(Dim truncation, std::string name = {});

  /// Adds a nondegenerate simplex; faces may be supplied later.
  SimplexId add(Dim n, std::string label = {});
  void set_faces(Dim n, SimplexId id, std::span<const SimplexRef> faces);
  void set_basepoint(SimplexId vertex);
  /// Canonical simplices are validated unless `validate` is false.
  SimplicialSetPtr build(bool validate = true);

  std::size_t count(Dim n) const;

 private:
  FiniteSimplicialSet set_;
  std::vector<std::vector<char>> faces_set_;
  SimplexId basepoint_ = 0;
};

/// Builds tuple sets (products, smash products and their face-closed
/// subsets) from nondegenerate tuples of factor simplices; faces are derived
/// componentwise and renormalized.
class TupleSetBuilder {
 public:
  TupleSetBuilder(std::vector<SimplicialSetPtr> factors, bool smash, Dim truncation,
                  std::string name = {});
  ~TupleSetBuilder();
  TupleSetBuilder(TupleSetBuilder&&) noexcept;
  TupleSetBuilder& operator=(TupleSetBuilder&&) noexcept;

  /// Registers a nondegenerate tuple at ambient dimension n (deduplicated).
  SimplexId add(Dim n, std::span<const SimplexRef> comps);
  std::optional<SimplexId> find(Dim n, std::span<const SimplexRef> comps) const;
  std::size_t count(Dim n) const;
  std::span<const SimplexRef> components(Dim n, SimplexId id) const;

  /// Computes all faces. Throws SimplicialError if a face is missing, i.e.
  /// the registered tuples are not closed under faces.
  SimplicialSetPtr build();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Per dimension, a set of nondegenerate simplices of an ambient set.
/// Contains the basepoint and is closed under faces.
class PointedSubset {
 public:
  PointedSubset() = default;
  /// The basepoint-only subset.
  explicit PointedSubset(SimplicialSetPtr ambient);

  static PointedSubset whole(SimplicialSetPtr ambient);
  static PointedSubset from_predicate(SimplicialSetPtr ambient,
                                      const std::function<bool(Dim, SimplexId)>& member);

  const SimplicialSetPtr& ambient() const { return ambient_; }
  bool contains(Dim n, SimplexId id) const {
    return n >= 0 && n < static_cast<Dim>(members_.size()) && members_[n][id] != 0;
  }
  bool contains(const SimplexRef& r) const { return contains(r.base_dim, r.base); }
  void insert(Dim n, SimplexId id) { members_[n][id] = 1; }
  std::size_t count(Dim n) const;
  std::size_t total_count() const;

  /// Adds every face of every member (transitively).
  void close_under_faces();
  /// Throws SimplicialError unless the subset is pointed and face-closed.
  void validate() const;

  friend bool operator==(const PointedSubset& a, const PointedSubset& b) {
    return a.members_ == b.members_;
  }
  PointedSubset operator&(const PointedSubset& other) const;
  PointedSubset operator|(const PointedSubset& other) const;

 private:
  SimplicialSetPtr ambient_;
  std::vector<std::vector<char>> members_;
};

/// Pointed simplicial map, given by the image of every nondegenerate simplex.
class SimplicialMap {
 public:
  SimplicialMap(SimplicialSetPtr source, SimplicialSetPtr target);

  static SimplicialMap identity(SimplicialSetPtr set);
  static SimplicialMap constant(SimplicialSetPtr source, SimplicialSetPtr target);

  const SimplicialSetPtr& source() const { return source_; }
  const SimplicialSetPtr& target() const { return target_; }

  void set(Dim n, SimplexId id, const SimplexRef& image) { images_[n][id] = image; }
  const SimplexRef& image(Dim n, SimplexId id) const { return images_[n][id]; }
  SimplexRef apply(const SimplexRef& r) const;

  /// Commutes with faces, sends basepoint to basepoint. Throws SimplicialError.
  void validate() const;

  /// this after `first`.
  SimplicialMap compose_after(const SimplicialMap& first) const;

 private:
  SimplicialSetPtr source_;
  SimplicialSetPtr target_;
  std::vector<std::vector<SimplexRef>> images_;
};

/// C2-action: a permutation of nondegenerate simplices per dimension.
class Involution {
 public:
  Involution() = default;
  explicit Involution(SimplicialSetPtr set);
  static Involution trivial(SimplicialSetPtr set);

  const SimplicialSetPtr& set() const { return set_; }
  SimplexId operator()(Dim n, SimplexId id) const { return perm_[n][id]; }
  void assign(Dim n, SimplexId id, SimplexId image) { perm_[n][id] = image; }
  SimplexRef apply(const SimplexRef& r) const {
    SimplexRef out = r;
    out.base = perm_[r.base_dim][r.base];
    return out;
  }
  bool fixes(Dim n, SimplexId id) const { return perm_[n][id] == id; }

  /// Order <= 2 and compatible with faces. When `pointed` is set the
  /// basepoint must be fixed. Throws SimplicialError.
  void validate(bool pointed = true) const;

 private:
  SimplicialSetPtr set_;
  std::vector<std::vector<SimplexId>> perm_;
};

struct SubsetInclusion {
  SimplicialSetPtr set;
  SimplicialMap inclusion;
};

struct QuotientResult {
  SimplicialSetPtr set;
  SimplicialMap projection;
};

struct OrbitSpace {
  SimplicialSetPtr quotient;
  SimplicialMap projection;
  PointedSubset fixed;
};

// Named fixtures.
SimplicialSetPtr point(Dim truncation = 8);
SimplicialSetPtr circle(Dim truncation = 16);

/// The subset as a simplicial set in its own right, with its inclusion.
/// Tuple representations are carried over.
SubsetInclusion restrict(const PointedSubset& subset);

/// Q/S with its projection. Faces landing in S become basepoint degeneracies.
QuotientResult quotient(const PointedSubset& subset);

PointedSubset image_subset(const SimplicialMap& f);

/// Dimensionwise product, nondegenerate simplices enumerated via shuffles.
SimplicialSetPtr product(const SimplicialSetPtr& q, const SimplicialSetPtr& r, Dim truncation);
SimplicialSetPtr smash(const SimplicialSetPtr& q, const SimplicialSetPtr& r, Dim truncation);
/// s-fold smash power with components flattened to refs of q; s >= 1.
SimplicialSetPtr smash_power(const SimplicialSetPtr& q, int s, Dim truncation);
/// Smash of an arbitrary list of factors with flattened components.
SimplicialSetPtr smash_of(const std::vector<SimplicialSetPtr>& factors, Dim truncation);
SimplicialSetPtr product_of(const std::vector<SimplicialSetPtr>& factors, Dim truncation);

/// Reduced diagonal a -> a ^ a ^ ... (k copies) into the given smash power.
SimplicialMap reduced_diagonal(const SimplicialSetPtr& a, const SimplicialSetPtr& power);

OrbitSpace orbit_space(const Involution& t);

/// A face-closed set of orbit representatives Y with Y u Yt = X and
/// Y n Yt = the fixed set, when the orbit projection admits a section.
std::optional<PointedSubset> find_section(const Involution& t);

/// The section Q -> X induced by a witness Y from find_section.
SimplicialMap section_map(const OrbitSpace& orbits, const PointedSubset& witness);

}  // namespace stunted

#include "stunted/simplicial_set.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace stunted {

namespace detail {

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& key) const noexcept {
    std::uint64_t h = 0x84222325CBF29CE4ULL;
    for (std::uint64_t v : key) {
      h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
      h *= 0xBF58476D1CE4E5B9ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

using TupleMap = std::unordered_map<std::vector<std::uint64_t>, SimplexId, KeyHash>;

struct TupleIndex {
  std::vector<TupleMap> levels;
};

// Components at a fixed ambient dimension determine their base dimension,
// so (word, base) identifies them.
inline std::uint64_t pack_component(const SimplexRef& c) {
  return (static_cast<std::uint64_t>(c.word) << 32) | c.base;
}

std::vector<std::uint64_t> make_key(std::span<const SimplexRef> comps) {
  std::vector<std::uint64_t> key(comps.size());
  for (std::size_t k = 0; k < comps.size(); ++k) key[k] = pack_component(comps[k]);
  return key;
}

}  // namespace detail

namespace {

[[noreturn]] void fail(const std::string& msg) { throw SimplicialError(msg); }

std::string dim_id(Dim n, SimplexId id) {
  return "(" + std::to_string(n) + "," + std::to_string(id) + ")";
}

// Iterates over all k-subsets of [0, n) as bitmasks (Gosper's hack).
template <class F>
void for_each_subset(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    f(DegeneracyWord{0});
    return;
  }
  DegeneracyWord s = word::low_bits(k);
  const DegeneracyWord limit = DegeneracyWord{1} << n;
  while (s < limit) {
    f(s);
    const DegeneracyWord c = s & (~s + 1);
    const DegeneracyWord r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteSimplicialSet

std::size_t FiniteSimplicialSet::total_count() const {
  std::size_t total = 0;
  for (const auto& level : levels_) total += level.size;
  return total;
}

Dim FiniteSimplicialSet::top_dim() const {
  for (Dim n = truncation(); n >= 0; --n) {
    if (levels_[n].size > 0) return n;
  }
  return -1;
}

void FiniteSimplicialSet::check_ref(const SimplexRef& r) const {
  if (r.base_dim > truncation() || r.base >= levels_[r.base_dim].size) {
    fail("simplex " + dim_id(r.base_dim, r.base) + " does not exist");
  }
  if (r.dim < r.base_dim || word::size(r.word) != r.dim - r.base_dim ||
      (r.word & ~word::low_bits(r.dim)) != 0) {
    fail("malformed degeneracy word on simplex " + dim_id(r.base_dim, r.base));
  }
}

SimplexRef FiniteSimplicialSet::face(const SimplexRef& r, int i) const {
  const int n = r.dim;
  if (n < 1 || i < 0 || i > n) {
    fail("face index d" + std::to_string(i) + " out of range in dimension " + std::to_string(n));
  }
  if (r.base_dim > truncation() || r.base >= levels_[r.base_dim].size) {
    fail("simplex " + dim_id(r.base_dim, r.base) + " does not exist");
  }
  const DegeneracyWord w = r.word;
  SimplexRef out = r;
  out.dim = static_cast<std::uint8_t>(n - 1);
  if (word::has(w, i)) {
    out.word = word::erase(w, i);
    return out;
  }
  if (word::has(w, i - 1)) {
    out.word = word::erase(w, i - 1);
    return out;
  }
  const int v = word::value_at(w, i);
  const DegeneracyWord rest = word::erase(w, i);
  const SimplexRef& f = stored_face(r.base_dim, r.base, v);
  out.base = f.base;
  out.base_dim = f.base_dim;
  out.word = word::compose(rest, f.word, n - 1);
  return out;
}

SimplexRef FiniteSimplicialSet::degenerate(const SimplexRef& r, int j) const {
  if (j < 0 || j > r.dim) {
    fail("degeneracy index s" + std::to_string(j) + " out of range in dimension " +
         std::to_string(r.dim));
  }
  if (r.dim + 1 > kMaxDim) fail("dimension exceeds supported maximum");
  SimplexRef out = r;
  out.dim = static_cast<std::uint8_t>(r.dim + 1);
  out.word = word::insert(r.word, j, true);
  return out;
}

SimplexRef FiniteSimplicialSet::apply_degeneracies(const SimplexRef& r, DegeneracyWord outer) {
  const int n = r.dim + word::size(outer);
  SimplexRef out = r;
  out.dim = static_cast<std::uint8_t>(n);
  out.word = word::compose(outer, r.word, n);
  return out;
}

std::string FiniteSimplicialSet::label(Dim n, SimplexId id) const {
  if (has_labels_) return levels_[n].labels[id];
  if (!factors_.empty()) {
    std::string out = "(";
    const auto comps = components(n, id);
    for (std::size_t k = 0; k < comps.size(); ++k) {
      if (k) out += ",";
      out += factors_[k]->ref_label(comps[k]);
    }
    return out + ")";
  }
  return "x" + std::to_string(n) + "_" + std::to_string(id);
}

std::string FiniteSimplicialSet::ref_label(const SimplexRef& r) const {
  const std::string base = label(r.base_dim, r.base);
  if (r.word == 0) return base;
  return word::to_string(r.word) + "@" + base;
}

std::optional<SimplexRef> FiniteSimplicialSet::find(std::string_view label) const {
  if (!label_index_) return std::nullopt;
  auto it = label_index_->find(std::string(label));
  if (it == label_index_->end()) return std::nullopt;
  return it->second;
}

std::optional<SimplexRef> FiniteSimplicialSet::find_tuple(std::span<const SimplexRef> comps,
                                                          Dim n) const {
  if (!tuple_index_) fail("set '" + name_ + "' carries no tuple representation");
  if (comps.size() != factors_.size()) fail("tuple arity mismatch");
  if (smash_) {
    for (std::size_t k = 0; k < comps.size(); ++k) {
      if (factors_[k]->is_basepoint(comps[k])) return basepoint_ref(n);
    }
  }
  DegeneracyWord common = word::low_bits(n);
  for (const auto& c : comps) common &= c.word;
  const int m = n - word::size(common);
  std::vector<SimplexRef> reduced(comps.begin(), comps.end());
  for (auto& c : reduced) {
    c.word = word::extract(c.word, common, n);
    c.dim = static_cast<std::uint8_t>(m);
  }
  if (m > truncation()) return std::nullopt;
  const auto& map = tuple_index_->levels[m];
  auto it = map.find(detail::make_key(reduced));
  if (it == map.end()) return std::nullopt;
  return SimplexRef{it->second, static_cast<std::uint8_t>(m), static_cast<std::uint8_t>(n), common};
}

void FiniteSimplicialSet::validate() const {
  if (levels_.empty() || levels_[0].size == 0) fail("simplicial set has no vertices");
  if (basepoint_ >= levels_[0].size) fail("basepoint is not a vertex");
  for (Dim n = 1; n <= truncation(); ++n) {
    for (SimplexId x = 0; x < levels_[n].size; ++x) {
      for (int i = 0; i <= n; ++i) {
        const SimplexRef& f = stored_face(n, x, i);
        if (f.dim != n - 1) fail("face d" + std::to_string(i) + " of " + label(n, x) + " has wrong dimension");
        check_ref(f);
      }
    }
  }
  for (Dim n = 2; n <= truncation(); ++n) {
    for (SimplexId x = 0; x < levels_[n].size; ++x) {
      const SimplexRef xr = nondegenerate_ref(x, n);
      for (int j = 1; j <= n; ++j) {
        const SimplexRef dj = face(xr, j);
        for (int i = 0; i < j; ++i) {
          if (face(dj, i) != face(face(xr, i), j - 1)) {
            fail("simplicial identity d" + std::to_string(i) + "d" + std::to_string(j) + " = d" +
                 std::to_string(j - 1) + "d" + std::to_string(i) + " fails on " + label(n, x));
          }
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Builder

FiniteSimplicialSet::Builder::Builder(Dim truncation, std::string name) {
  if (truncation < 0 || truncation > kMaxDim) fail("invalid truncation " + std::to_string(truncation));
  set_.levels_.resize(truncation + 1);
  set_.name_ = std::move(name);
  faces_set_.resize(truncation + 1);
}

SimplexId FiniteSimplicialSet::Builder::add(Dim n, std::string label) {
  if (n < 0 || n > set_.truncation()) fail("dimension " + std::to_string(n) + " beyond truncation");
  auto& level = set_.levels_[n];
  const auto id = static_cast<SimplexId>(level.size++);
  level.labels.push_back(std::move(label));
  level.faces.resize(level.size * (n + 1));
  faces_set_[n].push_back(n == 0 ? 1 : 0);
  return id;
}

void FiniteSimplicialSet::Builder::set_faces(Dim n, SimplexId id, std::span<const SimplexRef> faces) {
  if (faces.size() != static_cast<std::size_t>(n + 1)) fail("wrong number of faces");
  std::copy(faces.begin(), faces.end(), set_.levels_[n].faces.begin() + static_cast<std::ptrdiff_t>(id) * (n + 1));
  faces_set_[n][id] = 1;
}

void FiniteSimplicialSet::Builder::set_basepoint(SimplexId vertex) { basepoint_ = vertex; }

std::size_t FiniteSimplicialSet::Builder::count(Dim n) const { return set_.count(n); }

SimplicialSetPtr FiniteSimplicialSet::Builder::build(bool validate) {
  for (Dim n = 1; n <= set_.truncation(); ++n) {
    for (SimplexId x = 0; x < set_.levels_[n].size; ++x) {
      if (!faces_set_[n][x]) fail("faces of simplex " + dim_id(n, x) + " were never set");
    }
  }
  set_.basepoint_ = basepoint_;
  bool any = false;
  bool all = true;
  for (const auto& level : set_.levels_) {
    for (const auto& l : level.labels) {
      any = any || !l.empty();
      all = all && !l.empty();
    }
  }
  if (any && !all) fail("either every simplex or none must carry a label");
  set_.has_labels_ = any;
  if (any) {
    auto index = std::make_shared<std::unordered_map<std::string, SimplexRef>>();
    for (Dim n = 0; n <= set_.truncation(); ++n) {
      for (SimplexId x = 0; x < set_.levels_[n].size; ++x) {
        if (!index->emplace(set_.levels_[n].labels[x], nondegenerate_ref(x, n)).second) {
          fail("duplicate simplex label '" + set_.levels_[n].labels[x] + "'");
        }
      }
    }
    set_.label_index_ = std::move(index);
  } else {
    for (auto& level : set_.levels_) level.labels.clear();
  }
  auto out = std::make_shared<FiniteSimplicialSet>(std::move(set_));
  if (validate) out->validate();
  return out;
}

// ---------------------------------------------------------------------------
// TupleSetBuilder

struct TupleSetBuilder::Impl {
  FiniteSimplicialSet set;
  std::shared_ptr<detail::TupleIndex> index;
};

TupleSetBuilder::TupleSetBuilder(std::vector<SimplicialSetPtr> factors, bool smash, Dim truncation,
                                 std::string name)
    : impl_(std::make_unique<Impl>()) {
  if (factors.empty()) fail("a tuple set needs at least one factor");
  if (truncation < 0 || truncation > 32) fail("tuple sets support truncation 0..32");
  for (const auto& f : factors) {
    if (f->truncation() < truncation) {
      fail("factor '" + f->name() + "' truncated at " + std::to_string(f->truncation()) +
           " cannot support truncation " + std::to_string(truncation));
    }
  }
  auto& set = impl_->set;
  set.levels_.resize(truncation + 1);
  set.factors_ = std::move(factors);
  set.smash_ = smash;
  set.name_ = std::move(name);
  impl_->index = std::make_shared<detail::TupleIndex>();
  impl_->index->levels.resize(truncation + 1);
  std::vector<SimplexRef> bp;
  for (const auto& f : set.factors_) bp.push_back(nondegenerate_ref(f->basepoint(), 0));
  add(0, bp);
  set.basepoint_ = 0;
}

TupleSetBuilder::~TupleSetBuilder() = default;
TupleSetBuilder::TupleSetBuilder(TupleSetBuilder&&) noexcept = default;
TupleSetBuilder& TupleSetBuilder::operator=(TupleSetBuilder&&) noexcept = default;

SimplexId TupleSetBuilder::add(Dim n, std::span<const SimplexRef> comps) {
  auto& set = impl_->set;
  if (n < 0 || n > set.truncation()) fail("tuple dimension beyond truncation");
  auto& map = impl_->index->levels[n];
  auto& level = set.levels_[n];
  auto [it, inserted] = map.emplace(detail::make_key(comps), static_cast<SimplexId>(level.size));
  if (inserted) {
    ++level.size;
    level.components.insert(level.components.end(), comps.begin(), comps.end());
  }
  return it->second;
}

std::optional<SimplexId> TupleSetBuilder::find(Dim n, std::span<const SimplexRef> comps) const {
  const auto& map = impl_->index->levels[n];
  auto it = map.find(detail::make_key(comps));
  if (it == map.end()) return std::nullopt;
  return it->second;
}

std::size_t TupleSetBuilder::count(Dim n) const { return impl_->set.count(n); }

std::span<const SimplexRef> TupleSetBuilder::components(Dim n, SimplexId id) const {
  return impl_->set.components(n, id);
}

SimplicialSetPtr TupleSetBuilder::build() {
  auto& set = impl_->set;
  set.tuple_index_ = impl_->index;
  const std::size_t k = set.factors_.size();
  std::vector<SimplexRef> comps(k);
  for (Dim n = 1; n <= set.truncation(); ++n) {
    auto& level = set.levels_[n];
    level.faces.resize(level.size * (n + 1));
    for (SimplexId x = 0; x < level.size; ++x) {
      const SimplexRef* src = level.components.data() + static_cast<std::size_t>(x) * k;
      for (int i = 0; i <= n; ++i) {
        for (std::size_t c = 0; c < k; ++c) comps[c] = set.factors_[c]->face(src[c], i);
        auto f = set.find_tuple(comps, n - 1);
        if (!f) fail("tuple set '" + set.name_ + "' is not closed under faces at " + set.label(n, x));
        level.faces[static_cast<std::size_t>(x) * (n + 1) + i] = *f;
      }
    }
  }
  auto out = std::make_shared<FiniteSimplicialSet>(std::move(set));
  impl_.reset();
  return out;
}

// ---------------------------------------------------------------------------
// Products and smash products

namespace {

// Appends every nondegenerate simplex of `factor` to the tuples of `prefix`
// by shuffles: (s_I y, s_J x) with I, J disjoint.
TupleSetBuilder extend_by_shuffles(const TupleSetBuilder& prefix, std::vector<SimplicialSetPtr> factors,
                                   bool smash, Dim truncation, std::string name) {
  const SimplicialSetPtr factor = factors.back();
  TupleSetBuilder out(factors, smash, truncation, std::move(name));
  const std::size_t k = factors.size() - 1;
  std::vector<SimplexRef> comps(k + 1);
  for (Dim n = 0; n <= truncation; ++n) {
    for (Dim p = 0; p <= n; ++p) {
      for (Dim q = n - p; q <= n; ++q) {
        for (SimplexId x = 0; x < factor->count(q); ++x) {
          const SimplexRef xr = nondegenerate_ref(x, q);
          if (smash && factor->is_basepoint(xr)) continue;
          for (SimplexId y = 0; y < prefix.count(p); ++y) {
            const auto ycomps = prefix.components(p, y);
            if (smash) {
              bool based = false;
              for (std::size_t c = 0; c < k; ++c) based = based || factors[c]->is_basepoint(ycomps[c]);
              if (based) continue;
            }
            for_each_subset(n, n - p, [&](DegeneracyWord ymask) {
              for_each_subset(p, n - q, [&](DegeneracyWord packed) {
                const DegeneracyWord xmask = word::compose(ymask, packed, n) & ~ymask;
                for (std::size_t c = 0; c < k; ++c) {
                  comps[c] = FiniteSimplicialSet::apply_degeneracies(ycomps[c], ymask);
                }
                comps[k] = SimplexRef{x, static_cast<std::uint8_t>(q), static_cast<std::uint8_t>(n), xmask};
                out.add(n, comps);
              });
            });
          }
        }
      }
    }
  }
  return out;
}

SimplicialSetPtr tuple_product(const std::vector<SimplicialSetPtr>& factors, bool smash, Dim truncation,
                               const std::string& name) {
  if (factors.empty()) fail("product of zero factors");
  std::vector<SimplicialSetPtr> used{factors[0]};
  TupleSetBuilder current(used, smash, truncation, name);
  for (Dim n = 0; n <= truncation; ++n) {
    for (SimplexId x = 0; x < factors[0]->count(n); ++x) {
      const SimplexRef r = nondegenerate_ref(x, n);
      if (smash && factors[0]->is_basepoint(r)) continue;
      current.add(n, std::span<const SimplexRef>(&r, 1));
    }
  }
  for (std::size_t f = 1; f < factors.size(); ++f) {
    used.push_back(factors[f]);
    current = extend_by_shuffles(current, used, smash, truncation, name);
  }
  return current.build();
}

}  // namespace

SimplicialSetPtr product_of(const std::vector<SimplicialSetPtr>& factors, Dim truncation) {
  return tuple_product(factors, false, truncation, "product");
}

SimplicialSetPtr smash_of(const std::vector<SimplicialSetPtr>& factors, Dim truncation) {
  return tuple_product(factors, true, truncation, "smash");
}

SimplicialSetPtr product(const SimplicialSetPtr& q, const SimplicialSetPtr& r, Dim truncation) {
  return product_of({q, r}, truncation);
}

SimplicialSetPtr smash(const SimplicialSetPtr& q, const SimplicialSetPtr& r, Dim truncation) {
  return smash_of({q, r}, truncation);
}

SimplicialSetPtr smash_power(const SimplicialSetPtr& q, int s, Dim truncation) {
  if (s < 1) fail("smash power requires s >= 1; use point() for s = 0");
  return tuple_product(std::vector<SimplicialSetPtr>(static_cast<std::size_t>(s), q), true, truncation,
                       q->name() + "^" + std::to_string(s));
}

// ---------------------------------------------------------------------------
// PointedSubset

PointedSubset::PointedSubset(SimplicialSetPtr ambient) : ambient_(std::move(ambient)) {
  members_.resize(ambient_->truncation() + 1);
  for (Dim n = 0; n <= ambient_->truncation(); ++n) members_[n].assign(ambient_->count(n), 0);
  members_[0][ambient_->basepoint()] = 1;
}

PointedSubset PointedSubset::whole(SimplicialSetPtr ambient) {
  PointedSubset s(std::move(ambient));
  for (auto& level : s.members_) std::fill(level.begin(), level.end(), 1);
  return s;
}

PointedSubset PointedSubset::from_predicate(SimplicialSetPtr ambient,
                                            const std::function<bool(Dim, SimplexId)>& member) {
  PointedSubset s(std::move(ambient));
  for (Dim n = 0; n < static_cast<Dim>(s.members_.size()); ++n) {
    for (SimplexId x = 0; x < s.members_[n].size(); ++x) {
      if (member(n, x)) s.members_[n][x] = 1;
    }
  }
  return s;
}

std::size_t PointedSubset::count(Dim n) const {
  if (n < 0 || n >= static_cast<Dim>(members_.size())) return 0;
  return static_cast<std::size_t>(std::count(members_[n].begin(), members_[n].end(), 1));
}

std::size_t PointedSubset::total_count() const {
  std::size_t total = 0;
  for (Dim n = 0; n < static_cast<Dim>(members_.size()); ++n) total += count(n);
  return total;
}

void PointedSubset::close_under_faces() {
  for (Dim n = static_cast<Dim>(members_.size()) - 1; n >= 1; --n) {
    for (SimplexId x = 0; x < members_[n].size(); ++x) {
      if (!members_[n][x]) continue;
      for (const auto& f : ambient_->stored_faces(n, x)) members_[f.base_dim][f.base] = 1;
    }
  }
}

void PointedSubset::validate() const {
  if (!ambient_) fail("subset has no ambient set");
  if (!members_[0][ambient_->basepoint()]) fail("subset does not contain the basepoint");
  for (Dim n = 1; n < static_cast<Dim>(members_.size()); ++n) {
    for (SimplexId x = 0; x < members_[n].size(); ++x) {
      if (!members_[n][x]) continue;
      for (const auto& f : ambient_->stored_faces(n, x)) {
        if (!members_[f.base_dim][f.base]) {
          fail("subset is not closed under faces: " + ambient_->label(n, x) + " has face " +
               ambient_->ref_label(f) + " outside it");
        }
      }
    }
  }
}

PointedSubset PointedSubset::operator&(const PointedSubset& other) const {
  PointedSubset out = *this;
  for (std::size_t n = 0; n < members_.size(); ++n) {
    for (std::size_t x = 0; x < members_[n].size(); ++x) out.members_[n][x] &= other.members_[n][x];
  }
  return out;
}

PointedSubset PointedSubset::operator|(const PointedSubset& other) const {
  PointedSubset out = *this;
  for (std::size_t n = 0; n < members_.size(); ++n) {
    for (std::size_t x = 0; x < members_[n].size(); ++x) out.members_[n][x] |= other.members_[n][x];
  }
  return out;
}

// ---------------------------------------------------------------------------
// SimplicialMap

SimplicialMap::SimplicialMap(SimplicialSetPtr source, SimplicialSetPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
  images_.resize(source_->truncation() + 1);
  for (Dim n = 0; n <= source_->truncation(); ++n) {
    images_[n].assign(source_->count(n), target_->basepoint_ref(n));
  }
}

SimplicialMap SimplicialMap::identity(SimplicialSetPtr set) {
  SimplicialMap f(set, set);
  for (Dim n = 0; n <= set->truncation(); ++n) {
    for (SimplexId x = 0; x < set->count(n); ++x) f.images_[n][x] = nondegenerate_ref(x, n);
  }
  return f;
}

SimplicialMap SimplicialMap::constant(SimplicialSetPtr source, SimplicialSetPtr target) {
  return SimplicialMap(std::move(source), std::move(target));
}

SimplexRef SimplicialMap::apply(const SimplexRef& r) const {
  return FiniteSimplicialSet::apply_degeneracies(images_[r.base_dim][r.base], r.word);
}

void SimplicialMap::validate() const {
  if (target_->truncation() < source_->truncation()) fail("map target truncated below its source");
  if (!target_->is_basepoint(images_[0][source_->basepoint()])) fail("map does not preserve the basepoint");
  for (Dim n = 0; n <= source_->truncation(); ++n) {
    for (SimplexId x = 0; x < source_->count(n); ++x) {
      const SimplexRef& img = images_[n][x];
      if (img.dim != n) fail("image of " + source_->label(n, x) + " has wrong dimension");
      target_->check_ref(img);
      for (int i = 0; n >= 1 && i <= n; ++i) {
        if (apply(source_->stored_face(n, x, i)) != target_->face(img, i)) {
          fail("map does not commute with d" + std::to_string(i) + " on " + source_->label(n, x));
        }
      }
    }
  }
}

SimplicialMap SimplicialMap::compose_after(const SimplicialMap& first) const {
  if (first.target_ != source_) fail("maps are not composable");
  SimplicialMap out(first.source_, target_);
  for (Dim n = 0; n <= first.source_->truncation(); ++n) {
    for (SimplexId x = 0; x < first.source_->count(n); ++x) {
      out.images_[n][x] = apply(first.images_[n][x]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Involution

Involution::Involution(SimplicialSetPtr set) : set_(std::move(set)) {
  perm_.resize(set_->truncation() + 1);
  for (Dim n = 0; n <= set_->truncation(); ++n) {
    perm_[n].resize(set_->count(n));
    std::iota(perm_[n].begin(), perm_[n].end(), SimplexId{0});
  }
}

Involution Involution::trivial(SimplicialSetPtr set) { return Involution(std::move(set)); }

void Involution::validate(bool pointed) const {
  for (Dim n = 0; n <= set_->truncation(); ++n) {
    for (SimplexId x = 0; x < perm_[n].size(); ++x) {
      const SimplexId y = perm_[n][x];
      if (y >= perm_[n].size()) fail("involution image out of range");
      if (perm_[n][y] != x) fail("action is not an involution on " + set_->label(n, x));
      for (int i = 0; n >= 1 && i <= n; ++i) {
        if (apply(set_->stored_face(n, x, i)) != set_->stored_face(n, y, i)) {
          fail("action does not commute with d" + std::to_string(i) + " on " + set_->label(n, x));
        }
      }
    }
  }
  if (pointed && !fixes(0, set_->basepoint())) fail("action does not fix the basepoint");
}

// ---------------------------------------------------------------------------
// Fixtures

SimplicialSetPtr point(Dim truncation) {
  FiniteSimplicialSet::Builder b(truncation, "point");
  b.add(0, "pt");
  return b.build();
}

SimplicialSetPtr circle(Dim truncation) {
  FiniteSimplicialSet::Builder b(truncation, "circle");
  b.add(0, "pt");
  const SimplexId e = b.add(1, "e");
  const SimplexRef pt = nondegenerate_ref(0, 0);
  const SimplexRef faces[] = {pt, pt};
  b.set_faces(1, e, faces);
  return b.build();
}

// ---------------------------------------------------------------------------
// Subsets, quotients, images

SubsetInclusion restrict(const PointedSubset& subset) {
  subset.validate();
  const auto& amb = *subset.ambient();
  const Dim T = amb.truncation();
  std::vector<std::vector<SimplexId>> renumber(T + 1);
  if (amb.arity() > 0) {
    TupleSetBuilder tb(amb.factors(), amb.is_smash(), T, amb.name() + "|sub");
    for (Dim n = 0; n <= T; ++n) {
      for (SimplexId x = 0; x < amb.count(n); ++x) {
        if (subset.contains(n, x)) tb.add(n, amb.components(n, x));
      }
    }
    auto set = tb.build();
    SimplicialMap inc(set, subset.ambient());
    for (Dim n = 0; n <= T; ++n) {
      for (SimplexId x = 0; x < set->count(n); ++x) {
        auto r = amb.find_tuple(set->components(n, x), n);
        inc.set(n, x, *r);
      }
    }
    return {set, std::move(inc)};
  }
  FiniteSimplicialSet::Builder b(T, amb.name() + "|sub");
  for (Dim n = 0; n <= T; ++n) {
    renumber[n].assign(amb.count(n), SimplexId(-1));
    for (SimplexId x = 0; x < amb.count(n); ++x) {
      if (subset.contains(n, x)) renumber[n][x] = b.add(n, amb.has_labels() ? amb.label(n, x) : "");
    }
  }
  b.set_basepoint(renumber[0][amb.basepoint()]);
  std::vector<SimplexRef> faces;
  for (Dim n = 1; n <= T; ++n) {
    for (SimplexId x = 0; x < amb.count(n); ++x) {
      if (!subset.contains(n, x)) continue;
      faces.clear();
      for (auto f : amb.stored_faces(n, x)) {
        f.base = renumber[f.base_dim][f.base];
        faces.push_back(f);
      }
      b.set_faces(n, renumber[n][x], faces);
    }
  }
  auto set = b.build(false);
  SimplicialMap inc(set, subset.ambient());
  for (Dim n = 0; n <= T; ++n) {
    for (SimplexId x = 0; x < amb.count(n); ++x) {
      if (subset.contains(n, x)) inc.set(n, renumber[n][x], nondegenerate_ref(x, n));
    }
  }
  return {set, std::move(inc)};
}

QuotientResult quotient(const PointedSubset& subset) {
  subset.validate();
  const auto& amb = *subset.ambient();
  const Dim T = amb.truncation();
  FiniteSimplicialSet::Builder b(T, amb.name() + "/sub");
  std::vector<std::vector<SimplexId>> renumber(T + 1);
  const bool labels = amb.has_labels();
  const SimplexId bp = b.add(0, labels ? amb.label(0, amb.basepoint()) : "");
  for (Dim n = 0; n <= T; ++n) {
    renumber[n].assign(amb.count(n), SimplexId(-1));
    for (SimplexId x = 0; x < amb.count(n); ++x) {
      if (!subset.contains(n, x)) renumber[n][x] = b.add(n, labels ? amb.label(n, x) : "");
    }
  }
  std::vector<SimplexRef> faces;
  for (Dim n = 1; n <= T; ++n) {
    for (SimplexId x = 0; x < amb.count(n); ++x) {
      if (subset.contains(n, x)) continue;
      faces.clear();
      for (auto f : amb.stored_faces(n, x)) {
        if (subset.contains(f)) {
          faces.push_back(SimplexRef{bp, 0, static_cast<std::uint8_t>(n - 1), word::low_bits(n - 1)});
        } else {
          f.base = renumber[f.base_dim][f.base];
          faces.push_back(f);
        }
      }
      b.set_faces(n, renumber[n][x], faces);
    }
  }
  b.set_basepoint(bp);
  auto set = b.build(false);
  SimplicialMap proj(subset.ambient(), set);
  for (Dim n = 0; n <= T; ++n) {
    for (SimplexId x = 0; x < amb.count(n); ++x) {
      if (!subset.contains(n, x)) proj.set(n, x, nondegenerate_ref(renumber[n][x], n));
    }
  }
  return {set, std::move(proj)};
}

PointedSubset image_subset(const SimplicialMap& f) {
  PointedSubset out(f.target());
  const auto& src = *f.source();
  for (Dim n = 0; n <= src.truncation(); ++n) {
    for (SimplexId x = 0; x < src.count(n); ++x) out.insert(f.image(n, x).base_dim, f.image(n, x).base);
  }
  out.close_under_faces();
  return out;
}

SimplicialMap reduced_diagonal(const SimplicialSetPtr& a, const SimplicialSetPtr& power) {
  for (const auto& f : power->factors()) {
    if (f != a) fail("diagonal target must be a smash power of the source");
  }
  if (!power->is_smash()) fail("diagonal target must be a smash power");
  const std::size_t k = power->arity();
  SimplicialMap d(a, power);
  std::vector<SimplexRef> comps(k);
  for (Dim n = 0; n <= std::min(a->truncation(), power->truncation()); ++n) {
    for (SimplexId x = 0; x < a->count(n); ++x) {
      std::fill(comps.begin(), comps.end(), nondegenerate_ref(x, n));
      auto r = power->find_tuple(comps, n);
      if (!r) fail("diagonal image missing from smash power");
      d.set(n, x, *r);
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Orbits and sections

OrbitSpace orbit_space(const Involution& t) {
  t.validate(false);
  const auto& x = *t.set();
  const Dim T = x.truncation();
  FiniteSimplicialSet::Builder b(T, x.name() + "/C2");
  std::vector<std::vector<SimplexId>> orbit(T + 1);
  std::vector<std::vector<SimplexId>> rep(T + 1);
  const bool labels = x.has_labels();
  for (Dim n = 0; n <= T; ++n) {
    orbit[n].assign(x.count(n), SimplexId(-1));
    for (SimplexId s = 0; s < x.count(n); ++s) {
      const SimplexId partner = t(n, s);
      if (partner < s) {
        orbit[n][s] = orbit[n][partner];
        continue;
      }
      orbit[n][s] = b.add(n, labels ? x.label(n, s) : "");
      rep[n].push_back(s);
    }
  }
  std::vector<SimplexRef> faces;
  for (Dim n = 1; n <= T; ++n) {
    for (SimplexId o = 0; o < rep[n].size(); ++o) {
      faces.clear();
      for (auto f : x.stored_faces(n, rep[n][o])) {
        f.base = orbit[f.base_dim][f.base];
        faces.push_back(f);
      }
      b.set_faces(n, o, faces);
    }
  }
  b.set_basepoint(orbit[0][x.basepoint()]);
  auto q = b.build();
  SimplicialMap proj(t.set(), q);
  for (Dim n = 0; n <= T; ++n) {
    for (SimplexId s = 0; s < x.count(n); ++s) proj.set(n, s, nondegenerate_ref(orbit[n][s], n));
  }
  PointedSubset fixed(q);
  for (Dim n = 0; n <= T; ++n) {
    for (SimplexId s = 0; s < x.count(n); ++s) {
      if (t.fixes(n, s)) fixed.insert(n, orbit[n][s]);
    }
  }
  return {q, std::move(proj), std::move(fixed)};
}

std::optional<PointedSubset> find_section(const Involution& t) {
  t.validate(false);
  const auto& x = *t.set();
  const Dim T = x.truncation();
  PointedSubset chosen(t.set());
  // Fixed simplices always belong to Y.
  for (Dim n = 0; n <= T; ++n) {
    for (SimplexId s = 0; s < x.count(n); ++s) {
      if (t.fixes(n, s)) chosen.insert(n, s);
    }
  }
  chosen.insert(0, x.basepoint());

  struct Orbit {
    Dim n;
    SimplexId a;
    SimplexId b;
  };
  std::vector<std::vector<Orbit>> by_dim(T + 1);
  for (Dim n = 0; n <= T; ++n) {
    for (SimplexId s = 0; s < x.count(n); ++s) {
      const SimplexId p = t(n, s);
      if (p <= s) continue;
      if (n == 0 && (s == x.basepoint() || p == x.basepoint())) continue;
      by_dim[n].push_back({n, s, p});
    }
  }

  auto feasible = [&](const PointedSubset& y, Dim n, SimplexId s) {
    if (n == 0) return true;
    for (const auto& f : x.stored_faces(n, s)) {
      if (!y.contains(f)) return false;
    }
    return true;
  };

  // Choices in dimension n only constrain dimension n + 1, so each dimension
  // assigns its forced orbits and then branches over the rest.
  std::function<bool(PointedSubset&, Dim)> search = [&](PointedSubset& y, Dim n) -> bool {
    if (n > T) return true;
    std::vector<const Orbit*> free;
    PointedSubset base = y;
    for (const auto& o : by_dim[n]) {
      const bool fa = feasible(y, n, o.a);
      const bool fb = feasible(y, n, o.b);
      if (!fa && !fb) return false;
      if (fa && fb) free.push_back(&o);
      else base.insert(n, fa ? o.a : o.b);
    }
    std::function<bool(PointedSubset&, std::size_t)> branch = [&](PointedSubset& z, std::size_t k) -> bool {
      if (k == free.size()) return search(z, n + 1);
      for (SimplexId pick : {free[k]->a, free[k]->b}) {
        PointedSubset next = z;
        next.insert(n, pick);
        if (branch(next, k + 1)) {
          z = std::move(next);
          return true;
        }
      }
      return false;
    };
    if (!branch(base, 0)) return false;
    y = std::move(base);
    return true;
  };

  PointedSubset y = chosen;
  if (!search(y, 0)) return std::nullopt;
  return y;
}

SimplicialMap section_map(const OrbitSpace& orbits, const PointedSubset& witness) {
  const auto& x = *witness.ambient();
  SimplicialMap j(orbits.quotient, witness.ambient());
  for (Dim n = 0; n <= x.truncation(); ++n) {
    for (SimplexId s = 0; s < x.count(n); ++s) {
      if (!witness.contains(n, s)) continue;
      const SimplexRef o = orbits.projection.image(n, s);
      j.set(n, o.base, nondegenerate_ref(s, n));
    }
  }
  return j;
}

}  // namespace stunted

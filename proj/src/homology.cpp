#include "stunted/homology.hpp"

#include <algorithm>
#include <stdexcept>

namespace stunted {

GF2Vector gf2_add(const GF2Vector& a, const GF2Vector& b) {
  GF2Vector out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void gf2_normalize(GF2Vector& v) {
  std::sort(v.begin(), v.end());
  std::size_t w = 0;
  for (std::size_t r = 0; r < v.size();) {
    if (r + 1 < v.size() && v[r] == v[r + 1]) {
      r += 2;
    } else {
      v[w++] = v[r++];
    }
  }
  v.resize(w);
}

GF2SparseMatrix GF2SparseMatrix::identity(std::size_t n) {
  GF2SparseMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) m.columns[j] = {static_cast<std::uint32_t>(j)};
  return m;
}

bool GF2SparseMatrix::is_zero() const {
  return std::all_of(columns.begin(), columns.end(), [](const GF2Vector& c) { return c.empty(); });
}

void GF2SparseMatrix::validate() const {
  if (columns.size() != cols) throw std::invalid_argument("column count mismatch");
  for (const auto& c : columns) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] >= rows) throw std::invalid_argument("row index out of range");
      if (k > 0 && c[k - 1] >= c[k]) throw std::invalid_argument("column entries not strictly increasing");
    }
  }
}

GF2SparseMatrix GF2SparseMatrix::multiply(const GF2SparseMatrix& other) const {
  if (cols != other.rows) throw std::invalid_argument("matrix dimensions do not compose");
  GF2SparseMatrix out(rows, other.cols);
  for (std::size_t j = 0; j < other.cols; ++j) {
    GF2Vector acc;
    for (std::uint32_t k : other.columns[j]) acc.insert(acc.end(), columns[k].begin(), columns[k].end());
    gf2_normalize(acc);
    out.columns[j] = std::move(acc);
  }
  return out;
}

namespace {

struct Reduction {
  std::size_t rank = 0;
  std::vector<std::uint32_t> pivot_rows;
};

// Column reduction by lowest entry. Columns listed in `skip` are known to
// reduce to zero and are not processed.
Reduction reduce(const GF2SparseMatrix& m, const std::vector<char>* skip) {
  Reduction out;
  std::vector<std::int64_t> pivot(m.rows, -1);
  std::vector<GF2Vector> stored(m.cols);
  for (std::size_t j = 0; j < m.cols; ++j) {
    if (skip && (*skip)[j]) continue;
    GF2Vector v = m.columns[j];
    while (!v.empty()) {
      const std::uint32_t low = v.back();
      if (pivot[low] < 0) {
        pivot[low] = static_cast<std::int64_t>(j);
        out.pivot_rows.push_back(low);
        ++out.rank;
        stored[j] = std::move(v);
        break;
      }
      v = gf2_add(v, stored[pivot[low]]);
    }
  }
  return out;
}

}  // namespace

std::size_t gf2_rank(const GF2SparseMatrix& m) { return reduce(m, nullptr).rank; }

std::uint64_t BettiTable::at(Dim n) const {
  if (n < 0) return 0;
  if (n > certified_max()) {
    throw BettiRangeError("Betti number in degree " + std::to_string(n) + " requested beyond certified range 0.." +
                          std::to_string(certified_max()));
  }
  return values_[n];
}

void BettiTable::set(Dim n, std::uint64_t value) {
  if (n < 0) throw BettiRangeError("negative degree");
  if (n > certified_max()) values_.resize(static_cast<std::size_t>(n + 1), 0);
  values_[n] = value;
}

BettiTable BettiTable::truncated(Dim max) const {
  if (max > certified_max()) throw BettiRangeError("cannot extend a Betti table beyond its certified range");
  return BettiTable(std::vector<std::uint64_t>(values_.begin(), values_.begin() + (max + 1)));
}

std::string BettiTable::to_string() const {
  std::string out;
  for (Dim n = 0; n <= certified_max(); ++n) {
    if (n) out += ' ';
    out += "b" + std::to_string(n) + "=" + std::to_string(values_[n]);
  }
  return out;
}

void ChainComplexGF2::check_d_squared() const {
  for (Dim n = 2; n <= max_dim; ++n) {
    if (!boundary[n - 1].multiply(boundary[n]).is_zero()) {
      throw SimplicialError("boundary squared is nonzero in dimension " + std::to_string(n));
    }
  }
}

ChainComplexGF2 chain_complex(const FiniteSimplicialSet& q, Dim max_dim) {
  if (max_dim > q.truncation()) {
    throw BettiRangeError("chains through dimension " + std::to_string(max_dim) + " need truncation >= " +
                          std::to_string(max_dim) + ", set '" + q.name() + "' has " +
                          std::to_string(q.truncation()));
  }
  ChainComplexGF2 c;
  c.max_dim = max_dim;
  c.basis.resize(max_dim + 1);
  c.index.resize(max_dim + 1);
  c.boundary.resize(max_dim + 1);
  for (Dim n = 0; n <= max_dim; ++n) {
    c.index[n].assign(q.count(n), -1);
    for (SimplexId x = 0; x < q.count(n); ++x) {
      if (n == 0 && x == q.basepoint()) continue;
      c.index[n][x] = static_cast<std::int64_t>(c.basis[n].size());
      c.basis[n].push_back(x);
    }
  }
  c.boundary[0] = GF2SparseMatrix(0, c.basis[0].size());
  for (Dim n = 1; n <= max_dim; ++n) {
    GF2SparseMatrix m(c.basis[n - 1].size(), c.basis[n].size());
    for (std::size_t j = 0; j < c.basis[n].size(); ++j) {
      GF2Vector col;
      for (const auto& f : q.stored_faces(n, c.basis[n][j])) {
        if (!f.nondegenerate() || q.is_basepoint(f)) continue;
        col.push_back(static_cast<std::uint32_t>(c.index[n - 1][f.base]));
      }
      gf2_normalize(col);
      m.columns[j] = std::move(col);
    }
    c.boundary[n] = std::move(m);
  }
  return c;
}

BettiTable reduced_betti(const ChainComplexGF2& c, Dim max_degree) {
  if (max_degree + 1 > c.max_dim) {
    throw BettiRangeError("Betti numbers through degree " + std::to_string(max_degree) +
                          " need chains through dimension " + std::to_string(max_degree + 1));
  }
  std::vector<std::size_t> rank(max_degree + 3, 0);
  std::vector<char> skip;
  for (Dim n = max_degree + 1; n >= 1; --n) {
    const Reduction r = reduce(c.boundary[n], skip.empty() ? nullptr : &skip);
    rank[n] = r.rank;
    // Pivot rows of this matrix index columns of the next one that reduce to 0.
    skip.assign(c.basis[n - 1].size(), 0);
    for (std::uint32_t row : r.pivot_rows) skip[row] = 1;
  }
  BettiTable out(max_degree);
  for (Dim n = 0; n <= max_degree; ++n) out.set(n, c.basis[n].size() - rank[n] - rank[n + 1]);
  return out;
}

BettiTable reduced_betti(const FiniteSimplicialSet& q, Dim max_degree) {
  return reduced_betti(chain_complex(q, max_degree + 1), max_degree);
}

HomologyBasis::HomologyBasis(const ChainComplexGF2& c, Dim degree) : degree_(degree) {
  if (degree < 0 || degree + 1 > c.max_dim) {
    throw BettiRangeError("homology basis in degree " + std::to_string(degree) + " needs chains through dimension " +
                          std::to_string(degree + 1));
  }
  boundary_ = c.boundary[degree];
  pivot_of_row_.assign(c.basis[degree].size(), -1);

  auto reduce_into = [&](GF2Vector& v, GF2Vector& tag) {
    while (!v.empty()) {
      const std::int64_t p = pivot_of_row_[v.back()];
      if (p < 0) return;
      v = gf2_add(v, entries_[p].column);
      tag = gf2_add(tag, entries_[p].tag);
    }
  };
  auto insert = [&](GF2Vector v, GF2Vector tag) {
    pivot_of_row_[v.back()] = static_cast<std::int64_t>(entries_.size());
    entries_.push_back({std::move(v), std::move(tag)});
  };

  for (const auto& col : c.boundary[degree + 1].columns) {
    GF2Vector v = col;
    GF2Vector tag;
    reduce_into(v, tag);
    if (!v.empty()) insert(std::move(v), {});
  }

  // Cycles: kernel of the boundary out of this degree, tracked through the
  // column operations.
  const GF2SparseMatrix& d = c.boundary[degree];
  std::vector<std::int64_t> pivot(d.rows, -1);
  std::vector<GF2Vector> reduced(d.cols);
  std::vector<GF2Vector> combo(d.cols);
  for (std::size_t j = 0; j < d.cols; ++j) {
    GF2Vector v = d.columns[j];
    GF2Vector w{static_cast<std::uint32_t>(j)};
    while (!v.empty() && pivot[v.back()] >= 0) {
      const auto p = pivot[v.back()];
      v = gf2_add(v, reduced[p]);
      w = gf2_add(w, combo[p]);
    }
    if (!v.empty()) {
      pivot[v.back()] = static_cast<std::int64_t>(j);
      reduced[j] = std::move(v);
      combo[j] = std::move(w);
      continue;
    }
    GF2Vector rem = w;
    GF2Vector tag;
    reduce_into(rem, tag);
    if (rem.empty()) continue;
    const auto k = static_cast<std::uint32_t>(reps_.size());
    reps_.push_back(std::move(w));
    tag = gf2_add(tag, GF2Vector{k});
    insert(std::move(rem), std::move(tag));
  }
}

GF2Vector HomologyBasis::coordinates(const GF2Vector& cycle) const {
  GF2Vector image;
  for (std::uint32_t j : cycle) image.insert(image.end(), boundary_.columns[j].begin(), boundary_.columns[j].end());
  gf2_normalize(image);
  if (!image.empty()) throw SimplicialError("chain is not a cycle in degree " + std::to_string(degree_));
  GF2Vector v = cycle;
  GF2Vector tag;
  while (!v.empty()) {
    const std::int64_t p = pivot_of_row_[v.back()];
    if (p < 0) throw SimplicialError("cycle not spanned by homology basis");
    v = gf2_add(v, entries_[p].column);
    tag = gf2_add(tag, entries_[p].tag);
  }
  return tag;
}

std::vector<GF2SparseMatrix> induced_map(const SimplicialMap& f, Dim max_degree) {
  f.validate();
  const auto& src = *f.source();
  const auto& tgt = *f.target();
  const ChainComplexGF2 cs = chain_complex(src, max_degree + 1);
  const ChainComplexGF2 ct = chain_complex(tgt, max_degree + 1);
  std::vector<GF2SparseMatrix> out;
  for (Dim n = 0; n <= max_degree; ++n) {
    const HomologyBasis hs(cs, n);
    const HomologyBasis ht(ct, n);
    GF2SparseMatrix m(ht.dimension(), hs.dimension());
    for (std::size_t k = 0; k < hs.dimension(); ++k) {
      GF2Vector image;
      for (std::uint32_t b : hs.representatives()[k]) {
        const SimplexRef& r = f.image(n, cs.basis[n][b]);
        if (!r.nondegenerate() || tgt.is_basepoint(r)) continue;
        image.push_back(static_cast<std::uint32_t>(ct.index[n][r.base]));
      }
      gf2_normalize(image);
      m.columns[k] = ht.coordinates(image);
    }
    out.push_back(std::move(m));
  }
  return out;
}

bool is_homologous_zero(const SimplicialMap& f, Dim max_degree) {
  const auto maps = induced_map(f, max_degree);
  return std::all_of(maps.begin(), maps.end(), [](const GF2SparseMatrix& m) { return m.is_zero(); });
}

BettiTable quotient_betti_via_les(const PointedSubset& s, Dim max_degree) {
  const auto sub = restrict(s);
  const BettiTable bq = reduced_betti(*s.ambient(), max_degree);
  const BettiTable bs = reduced_betti(*sub.set, max_degree);
  const auto maps = induced_map(sub.inclusion, max_degree);
  std::vector<std::uint64_t> rank(max_degree + 1);
  for (Dim n = 0; n <= max_degree; ++n) rank[n] = gf2_rank(maps[n]);
  BettiTable out(max_degree);
  for (Dim n = 0; n <= max_degree; ++n) {
    std::uint64_t value = bq.at(n) - rank[n];
    if (n >= 1) value += bs.at(n - 1) - rank[n - 1];
    out.set(n, value);
  }
  return out;
}

}  // namespace stunted

#include "stunted/smash_homology.hpp"

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "stunted/pinched.hpp"

namespace stunted {

namespace {

// All non-basepoint simplices of q at one ambient dimension, numbered.
struct RefLevel {
  std::vector<SimplexRef> refs;
  std::unordered_map<SimplexRef, std::uint32_t, SimplexRefHash> code;
  // cofaces[c * (m + 2) + i]: codes at m + 1 whose d_i is refs[c].
  std::vector<std::vector<std::uint32_t>> cofaces;
};

class Engine {
 public:
  Engine(const SimplicialSetPtr& q, int s, Dim max_degree, const TupleFilter& keep)
      : q_(*q), s_(s), top_(max_degree + 1), keep_(keep) {
    if (s < 1) throw std::invalid_argument("smash power needs s >= 1");
    if (top_ > q->truncation()) {
      throw BettiRangeError("Betti numbers through degree " + std::to_string(max_degree) +
                            " need simplices through dimension " + std::to_string(top_));
    }
    levels_.resize(top_ + 1);
    for (Dim m = 0; m <= top_; ++m) {
      auto& level = levels_[m];
      for (Dim p = 0; p <= m; ++p) {
        for (SimplexId x = 0; x < q_.count(p); ++x) {
          if (p == 0 && x == q_.basepoint()) continue;
          enumerate_words(m, m - p, [&](DegeneracyWord w) {
            const SimplexRef r{x, static_cast<std::uint8_t>(p), static_cast<std::uint8_t>(m), w};
            level.code.emplace(r, static_cast<std::uint32_t>(level.refs.size()));
            level.refs.push_back(r);
          });
        }
      }
      radix_.push_back(level.refs.size());
      long double range = 1;
      for (int k = 0; k < s_; ++k) range *= static_cast<long double>(std::max<std::size_t>(level.refs.size(), 1));
      if (range >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max())) {
        throw std::length_error("smash power too large to index");
      }
    }
    for (Dim m = 0; m < top_; ++m) {
      auto& level = levels_[m];
      level.cofaces.resize(level.refs.size() * static_cast<std::size_t>(m + 2));
      const auto& up = levels_[m + 1];
      for (std::uint32_t c = 0; c < up.refs.size(); ++c) {
        for (int i = 0; i <= m + 1; ++i) {
          const SimplexRef f = q_.face(up.refs[c], i);
          if (q_.is_basepoint(f)) continue;
          level.cofaces[level.code.at(f) * static_cast<std::size_t>(m + 2) + i].push_back(c);
        }
      }
    }
  }

  BettiTable run() {
    const Dim max_degree = top_ - 1;
    std::vector<std::uint64_t> cells(max_degree + 1, 0);
    std::vector<std::uint64_t> rank(max_degree + 2, 0);
    absl::flat_hash_set<std::uint64_t> paired;
    for (Dim n = 0; n <= max_degree; ++n) {
      const std::vector<std::uint64_t> basis = enumerate_cells(n);
      cells[n] = basis.size();
      absl::flat_hash_set<std::uint64_t> next_paired;
      rank[n] = reduce(n, basis, paired, next_paired);
      paired = std::move(next_paired);
    }
    BettiTable out(max_degree);
    for (Dim n = 0; n <= max_degree; ++n) {
      out.set(n, cells[n] - (n > 0 ? rank[n - 1] : 0) - rank[n]);
    }
    return out;
  }

 private:
  template <class F>
  static void enumerate_words(int n, int k, F&& f) {
    if (k < 0 || k > n) return;
    if (k == 0) {
      f(DegeneracyWord{0});
      return;
    }
    DegeneracyWord w = word::low_bits(k);
    const DegeneracyWord limit = DegeneracyWord{1} << n;
    while (w < limit) {
      f(w);
      const DegeneracyWord c = w & (~w + 1);
      const DegeneracyWord r = w + c;
      w = (((r ^ w) >> 2) / c) | r;
    }
  }

  std::uint64_t pack(Dim m, const std::uint32_t* codes) const {
    std::uint64_t v = 0;
    for (int k = 0; k < s_; ++k) v = v * radix_[m] + codes[k];
    return v;
  }

  void unpack(Dim m, std::uint64_t v, std::uint32_t* codes) const {
    for (int k = s_ - 1; k >= 0; --k) {
      codes[k] = static_cast<std::uint32_t>(v % radix_[m]);
      v /= radix_[m];
    }
  }

  std::vector<std::uint64_t> enumerate_cells(Dim n) {
    std::vector<std::uint64_t> out;
    const auto& level = levels_[n];
    if (level.refs.empty()) return out;
    std::vector<std::uint32_t> codes(s_, 0);
    std::vector<SimplexRef> comps(s_);
    std::vector<DegeneracyWord> acc(s_ + 1);
    acc[0] = word::low_bits(n);
    // Lexicographic odometer, so the output is sorted by packed code.
    int k = 0;
    codes[0] = 0;
    while (k >= 0) {
      if (codes[k] >= level.refs.size()) {
        --k;
        if (k >= 0) ++codes[k];
        continue;
      }
      comps[k] = level.refs[codes[k]];
      acc[k + 1] = acc[k] & comps[k].word;
      if (k + 1 < s_) {
        ++k;
        codes[k] = 0;
        continue;
      }
      if (acc[s_] == 0 && keep_(comps)) out.push_back(pack(n, codes.data()));
      ++codes[k];
    }
    return out;
  }

  // Coboundary of the n-cell with packed code `cell`, as sorted (n+1)-codes.
  std::vector<std::uint64_t> coboundary(Dim n, std::uint64_t cell) {
    std::vector<std::uint64_t> out;
    std::uint32_t codes[64];
    unpack(n, cell, codes);
    const auto& level = levels_[n];
    const auto& up = levels_[n + 1];
    const std::size_t stride = static_cast<std::size_t>(n + 2);
    std::vector<std::uint32_t> pick(s_);
    std::vector<SimplexRef> comps(s_);
    std::vector<DegeneracyWord> clearable(s_ + 1);
    for (int i = 0; i <= n + 1; ++i) {
      // Bits some later component can still clear.
      clearable[s_] = 0;
      bool empty = false;
      for (int k = s_ - 1; k >= 0; --k) {
        DegeneracyWord m = 0;
        const auto& opts = level.cofaces[codes[k] * stride + i];
        empty = empty || opts.empty();
        for (std::uint32_t c : opts) m |= ~up.refs[c].word;
        clearable[k] = clearable[k + 1] | m;
      }
      if (empty) continue;
      dfs(n, i, 0, word::low_bits(n + 1), codes, pick, comps, clearable, out);
    }
    std::sort(out.begin(), out.end());
    std::size_t w = 0;
    for (std::size_t r = 0; r < out.size();) {
      if (r + 1 < out.size() && out[r] == out[r + 1]) {
        r += 2;
      } else {
        out[w++] = out[r++];
      }
    }
    out.resize(w);
    return out;
  }

  void dfs(Dim n, int i, int k, DegeneracyWord acc, const std::uint32_t* codes, std::vector<std::uint32_t>& pick,
           std::vector<SimplexRef>& comps, const std::vector<DegeneracyWord>& clearable,
           std::vector<std::uint64_t>& out) {
    if ((acc & ~clearable[k]) != 0) return;
    if (k == s_) {
      if (keep_(comps)) out.push_back(pack(n + 1, pick.data()));
      return;
    }
    const auto& up = levels_[n + 1];
    for (std::uint32_t c : levels_[n].cofaces[codes[k] * static_cast<std::size_t>(n + 2) + i]) {
      pick[k] = c;
      comps[k] = up.refs[c];
      dfs(n, i, k + 1, acc & comps[k].word, codes, pick, comps, clearable, out);
    }
  }

  static void add_into(std::vector<std::uint64_t>& v, const std::vector<std::uint64_t>& other) {
    std::vector<std::uint64_t> sum;
    sum.reserve(v.size() + other.size());
    std::set_symmetric_difference(v.begin(), v.end(), other.begin(), other.end(), std::back_inserter(sum));
    v.swap(sum);
  }

  // Rank of the coboundary out of dimension n. Cells in `skip` are known to
  // reduce to zero; the pivots found are returned in `pivots_out`.
  std::uint64_t reduce(Dim n, const std::vector<std::uint64_t>& basis, const absl::flat_hash_set<std::uint64_t>& skip,
                       absl::flat_hash_set<std::uint64_t>& pivots_out) {
    absl::flat_hash_map<std::uint64_t, std::uint32_t> pivot;
    // Only columns changed by reduction are kept; the rest are regenerated.
    absl::flat_hash_map<std::uint32_t, std::vector<std::uint64_t>> stored;
    for (std::uint32_t j = 0; j < basis.size(); ++j) {
      if (skip.contains(basis[j])) continue;
      std::vector<std::uint64_t> v = coboundary(n, basis[j]);
      bool modified = false;
      while (!v.empty()) {
        auto it = pivot.find(v.back());
        if (it == pivot.end()) {
          pivot.emplace(v.back(), j);
          if (modified) stored.emplace(j, std::move(v));
          break;
        }
        auto st = stored.find(it->second);
        if (st != stored.end()) {
          add_into(v, st->second);
        } else {
          add_into(v, coboundary(n, basis[it->second]));
        }
        modified = true;
      }
    }
    pivots_out.reserve(pivot.size());
    for (const auto& [row, col] : pivot) pivots_out.insert(row);
    return pivot.size();
  }

  const FiniteSimplicialSet& q_;
  int s_;
  Dim top_;
  const TupleFilter& keep_;
  std::vector<RefLevel> levels_;
  std::vector<std::uint64_t> radix_;
};

}  // namespace

BettiTable smash_cells_betti(const SimplicialSetPtr& q, int s, Dim max_degree, const TupleFilter& keep) {
  return Engine(q, s, max_degree, keep).run();
}

BettiTable pinched_quotient_betti(const PointedSubset& a, int s, Dim max_degree) {
  return smash_cells_betti(a.ambient(), s, max_degree,
                           [&a](std::span<const SimplexRef> c) { return !is_pinched(c, a); });
}

}  // namespace stunted

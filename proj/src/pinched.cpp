#include "stunted/pinched.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace stunted {

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_) {
    if (p < 1) throw std::invalid_argument("composition parts must be positive");
  }
}

int Composition::length() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Composition Composition::gamma(int j, int s) {
  if (j < 1 || j >= s) throw std::invalid_argument("gamma index out of range");
  std::vector<int> parts(static_cast<std::size_t>(s - 1), 1);
  parts[j - 1] = 2;
  return Composition(std::move(parts));
}

std::vector<Composition> Composition::all_of(int s) {
  std::vector<Composition> out;
  if (s == 0) {
    out.emplace_back();
    return out;
  }
  for (int first = 1; first <= s; ++first) {
    for (auto& rest : all_of(s - first)) {
      std::vector<int> parts{first};
      parts.insert(parts.end(), rest.parts().begin(), rest.parts().end());
      out.emplace_back(std::move(parts));
    }
  }
  return out;
}

std::string Composition::to_string() const {
  std::string out = "(";
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(parts_[k]);
  }
  return out + ")";
}

int CoverIndex::size() const { return std::popcount(members); }

std::vector<int> CoverIndex::elements() const {
  std::vector<int> out;
  for (int j = 1; j < s; ++j) {
    if (contains(j)) out.push_back(j);
  }
  return out;
}

std::vector<CoverIndex> CoverIndex::all_nonempty(int s) {
  std::vector<CoverIndex> out;
  if (s < 2) return out;
  for (std::uint32_t m = 1; m < (1U << (s - 1)); ++m) out.push_back({s, m});
  return out;
}

Composition intersection_to_composition(const CoverIndex& index) {
  if (index.s < 1 || index.s > 32 || (index.s < 33 && (index.members >> std::max(index.s - 1, 0)) != 0)) {
    throw std::invalid_argument("cover index out of range for s = " + std::to_string(index.s));
  }
  std::vector<int> parts;
  int run = 1;
  for (int j = 1; j < index.s; ++j) {
    if (index.contains(j)) {
      ++run;
    } else {
      parts.push_back(run);
      run = 1;
    }
  }
  parts.push_back(run);
  return Composition(std::move(parts));
}

bool is_pinched(std::span<const SimplexRef> comps, const PointedSubset& a) {
  for (std::size_t i = 0; i + 1 < comps.size(); ++i) {
    if (comps[i] == comps[i + 1] && a.contains(comps[i])) return true;
  }
  return false;
}

bool in_delta_alpha(std::span<const SimplexRef> comps, const PointedSubset& a, const Composition& alpha) {
  if (alpha.empty()) throw std::invalid_argument("empty composition");
  if (static_cast<std::size_t>(alpha.length()) != comps.size()) {
    throw std::invalid_argument("composition length differs from the number of factors");
  }
  std::size_t pos = 0;
  for (int part : alpha.parts()) {
    if (part >= 2) {
      if (!a.contains(comps[pos])) return false;
      for (int k = 1; k < part; ++k) {
        if (comps[pos + k] != comps[pos]) return false;
      }
    }
    pos += static_cast<std::size_t>(part);
  }
  return true;
}

bool in_adjacent_fat_diagonal(std::span<const SimplexRef> comps) {
  for (std::size_t i = 0; i + 1 < comps.size(); ++i) {
    if (comps[i] == comps[i + 1]) return true;
  }
  return false;
}

namespace {

void require_power(const SimplicialSetPtr& power, const PointedSubset& a) {
  if (!power->is_smash()) throw std::invalid_argument("expected a smash power");
  for (const auto& f : power->factors()) {
    if (f != a.ambient()) throw std::invalid_argument("subset A does not live in the smash factor");
  }
}

PointedSubset filter(const SimplicialSetPtr& power, const std::function<bool(std::span<const SimplexRef>)>& pred) {
  PointedSubset out = PointedSubset::from_predicate(power, [&](Dim n, SimplexId x) {
    if (n == 0 && x == power->basepoint()) return true;
    return pred(power->components(n, x));
  });
  out.validate();
  return out;
}

}  // namespace

PointedSubset pinched_set(const SimplicialSetPtr& power, const PointedSubset& a) {
  require_power(power, a);
  return filter(power, [&](std::span<const SimplexRef> c) { return is_pinched(c, a); });
}

PointedSubset delta_alpha(const SimplicialSetPtr& power, const PointedSubset& a, const Composition& alpha) {
  require_power(power, a);
  return filter(power, [&](std::span<const SimplexRef> c) { return in_delta_alpha(c, a, alpha); });
}

PointedSubset delta_intersection(const SimplicialSetPtr& power, const PointedSubset& a, const CoverIndex& index) {
  require_power(power, a);
  const int s = static_cast<int>(power->arity());
  if (index.s != s) throw std::invalid_argument("cover index built for a different s");
  PointedSubset out = PointedSubset::whole(power);
  for (int j : index.elements()) out = out & delta_alpha(power, a, Composition::gamma(j, s));
  return out;
}

PointedSubset pinched_union(const SimplicialSetPtr& power, const PointedSubset& a) {
  require_power(power, a);
  const int s = static_cast<int>(power->arity());
  PointedSubset out(power);
  for (int j = 1; j < s; ++j) out = out | delta_alpha(power, a, Composition::gamma(j, s));
  return out;
}

PointedSubset adjacent_fat_diagonal(const SimplicialSetPtr& power) {
  return filter(power, [](std::span<const SimplexRef> c) { return in_adjacent_fat_diagonal(c); });
}

PointedSubset pinched_inductive(const SimplicialSetPtr& power, const PointedSubset& a) {
  require_power(power, a);
  const int s = static_cast<int>(power->arity());
  if (s <= 1) return PointedSubset(power);
  if (s == 2) return delta_alpha(power, a, Composition({2}));
  const Dim T = power->truncation();
  const auto& q = a.ambient();
  const auto prev_power = smash_power(q, s - 1, T);
  const PointedSubset prev = pinched_inductive(prev_power, a);
  const auto pair_power = smash_power(q, 2, T);
  const PointedSubset diag = delta_alpha(pair_power, a, Composition({2}));

  auto member = [&](const SimplicialSetPtr& p, const PointedSubset& sub, std::span<const SimplexRef> c, Dim n) {
    const auto r = p->find_tuple(c, n);
    if (!r) throw SimplicialError("tuple missing from a smaller smash power");
    return sub.contains(*r);
  };
  return filter(power, [&](std::span<const SimplexRef> c) {
    const Dim n = c.front().dim;
    return member(prev_power, prev, c.first(c.size() - 1), n) || member(pair_power, diag, c.last(2), n);
  });
}

SimplicialSetPtr delta_alpha_complex(const PointedSubset& a, const Composition& alpha, Dim truncation) {
  if (alpha.empty()) throw std::invalid_argument("empty composition");
  const SimplicialSetPtr q = a.ambient();
  const int s = alpha.length();
  bool need_a = false;
  for (int p : alpha.parts()) need_a = need_a || p >= 2;
  SubsetInclusion sub{nullptr, SimplicialMap(q, q)};
  if (need_a) sub = restrict(a);
  std::vector<SimplicialSetPtr> factors;
  for (int p : alpha.parts()) factors.push_back(p >= 2 ? sub.set : q);
  const auto pieces = smash_of(factors, truncation);

  TupleSetBuilder out(std::vector<SimplicialSetPtr>(static_cast<std::size_t>(s), q), true, truncation,
                      "delta" + alpha.to_string());
  std::vector<SimplexRef> comps(static_cast<std::size_t>(s));
  for (Dim n = 0; n <= truncation; ++n) {
    for (SimplexId x = 0; x < pieces->count(n); ++x) {
      if (n == 0 && x == pieces->basepoint()) continue;
      const auto src = pieces->components(n, x);
      std::size_t pos = 0;
      for (std::size_t k = 0; k < src.size(); ++k) {
        const int part = alpha.parts()[k];
        const SimplexRef r = part >= 2 ? sub.inclusion.apply(src[k]) : src[k];
        for (int c = 0; c < part; ++c) comps[pos++] = r;
      }
      out.add(n, comps);
    }
  }
  return out.build();
}

SimplicialSetPtr pinched_complex(const PointedSubset& a, int s, Dim truncation) {
  const SimplicialSetPtr q = a.ambient();
  std::vector<SimplicialSetPtr> factors(static_cast<std::size_t>(std::max(s, 1)), q);
  TupleSetBuilder out(factors, true, truncation, "pinched" + std::to_string(s));
  for (int j = 1; j < s; ++j) {
    const auto piece = delta_alpha_complex(a, Composition::gamma(j, s), truncation);
    for (Dim n = 0; n <= truncation; ++n) {
      for (SimplexId x = 0; x < piece->count(n); ++x) out.add(n, piece->components(n, x));
    }
  }
  return out.build();
}

BettiTable kunneth(const std::vector<const BettiTable*>& factors, Dim max_degree) {
  // The smash of nothing is S^0, whose reduced homology is F2 in degree 0.
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(max_degree + 1), 0);
  if (max_degree >= 0) acc[0] = 1;
  for (const BettiTable* f : factors) {
    std::vector<std::uint64_t> next(acc.size(), 0);
    for (Dim p = 0; p <= max_degree; ++p) {
      if (acc[p] == 0) continue;
      for (Dim q = 0; p + q <= max_degree; ++q) next[p + q] += acc[p] * f->at(q);
    }
    acc = std::move(next);
  }
  return BettiTable(std::move(acc));
}

bool diagonal_homologous_zero(const PointedSubset& a, Dim max_degree) {
  const auto sub = restrict(a);
  // Built at the full truncation so the diagonal is defined on every simplex.
  const auto square = smash_power(sub.set, 2, sub.set->truncation());
  return is_homologous_zero(reduced_diagonal(sub.set, square), max_degree);
}

MvInput mv_input(const PointedSubset& a, Dim max_degree) {
  if (!diagonal_homologous_zero(a, max_degree)) {
    throw HypothesisError(
        "the reduced diagonal A -> A ^ A is not mod 2 homologous to zero, so the Mayer-Vietoris "
        "E1 term need not compute the homology of the pinched set");
  }
  const auto sub = restrict(a);
  return {reduced_betti(*a.ambient(), max_degree), reduced_betti(*sub.set, max_degree)};
}

std::uint64_t mv_e1_betti(const MvInput& input, int s, int t) {
  if (s < 2) throw std::invalid_argument("the E1 sum needs s >= 2");
  if (t < 0) return 0;
  std::uint64_t total = 0;
  for (const auto& index : CoverIndex::all_nonempty(s)) {
    const int q = t - index.size() + 1;
    if (q < 0) continue;
    const Composition alpha = intersection_to_composition(index);
    std::vector<const BettiTable*> factors;
    for (int p : alpha.parts()) factors.push_back(p >= 2 ? &input.a : &input.q);
    total += kunneth(factors, q).at(q);
  }
  return total;
}

std::uint64_t mv_e1_betti(const PointedSubset& a, int s, int t) {
  return mv_e1_betti(mv_input(a, std::max(t, 0)), s, t);
}

std::uint64_t mv_e1_betti_chains(const PointedSubset& a, int s, int t) {
  if (s < 2) throw std::invalid_argument("the E1 sum needs s >= 2");
  if (t < 0) return 0;
  std::uint64_t total = 0;
  for (const auto& index : CoverIndex::all_nonempty(s)) {
    const int q = t - index.size() + 1;
    if (q < 0) continue;
    const auto piece = delta_alpha_complex(a, intersection_to_composition(index), q + 1);
    total += reduced_betti(*piece, q).at(q);
  }
  return total;
}

}  // namespace stunted

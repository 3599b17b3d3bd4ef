#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "stunted/simplicial_set.hpp"

namespace stunted {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Contents of a simplicial-set document: the set, an optional involution
/// and an optional distinguished subset (e.g. the fixed circle of an orbit
/// space given directly).
struct SimplicialSetFile {
  SimplicialSetPtr set;
  std::optional<Involution> involution;
  std::optional<PointedSubset> subset;
};

/// Parses a JSON document with fields `name`, `truncation`, `basepoint`,
/// `simplices` (label lists per dimension), `faces` (label -> list of
/// "word@label" refs, e.g. "s1s0@pt"), `involution` (label -> label) and
/// `subset` (label list). Throws FormatError or SimplicialError.
SimplicialSetFile parse_simplicial_set(std::string_view text);
SimplicialSetFile load_simplicial_set(const std::filesystem::path& path);

/// Canonical JSON rendering; parse(serialize(f)) reproduces f and
/// serialize(parse(serialize(f))) is byte-identical. Requires labels.
std::string serialize_simplicial_set(const SimplicialSetFile& file);

/// Parses "s1s0@label" (outermost operator first) against `set`.
SimplexRef parse_ref(const FiniteSimplicialSet& set, std::string_view text, Dim ambient);

}  // namespace stunted

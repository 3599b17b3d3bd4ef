#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stunted/serialize.hpp"

namespace stunted {

/// One (s, t) cell: b_t of the pinched set by each computation path.
/// Absent values were not computed (hypothesis failed or out of range).
struct GridCell {
  int s = 0;
  int t = 0;
  std::optional<std::uint64_t> brute;
  std::optional<std::uint64_t> mv;
  std::optional<std::uint64_t> closed;
  bool agree = true;
};

/// Loop-space Betti number in degree n: from chain-level quotient homology
/// and from the closed formulas.
struct LoopRow {
  int n = 0;
  std::optional<std::uint64_t> brute;
  std::optional<std::uint64_t> closed;
  bool agree = true;
};

struct Timing {
  std::string phase;
  double seconds = 0;
};

struct RunReport {
  std::string fixture;
  Dim truncation = 0;
  int s_max = 0;
  int t_max = 0;
  bool section_found = false;
  bool diagonal_ok = false;
  std::vector<std::string> messages;
  std::vector<GridCell> cells;
  std::vector<LoopRow> loop;
  std::vector<Timing> timings;

  bool all_agree() const;
};

/// Runs every computation path on a set with an involution: pinched-set
/// Betti numbers for 2 <= s <= s_max, 0 <= t <= t_max, and loop-space Betti
/// numbers for 1 <= n <= t_max (chain-level only while n <= s_max).
/// Throws FormatError if the file carries no involution.
RunReport run_verify(const SimplicialSetFile& file, int s_max, int t_max);

std::string report_table(const RunReport& r);
std::string report_json(const RunReport& r);
std::string report_csv(const RunReport& r);

/// One row of the comparison between the closed-form loop Betti numbers and
/// the conjectured series.
struct ConjectureRow {
  int n = 0;
  std::uint64_t closed = 0;
  std::int64_t series = 0;
  /// Rows through degree 12 are asserted; later ones are only reported.
  bool asserted = false;
  bool match = false;
};

std::vector<ConjectureRow> conjecture_rows(int n_max);

}  // namespace stunted

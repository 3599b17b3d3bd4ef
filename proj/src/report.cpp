#include "stunted/report.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "stunted/closed_form.hpp"
#include "stunted/pinched.hpp"
#include "stunted/smash_homology.hpp"

namespace stunted {

namespace {

class Stopwatch {
 public:
  Stopwatch(RunReport& r, std::string phase)
      : report_(r), phase_(std::move(phase)), start_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start_;
    report_.timings.push_back({phase_, d.count()});
  }

 private:
  RunReport& report_;
  std::string phase_;
  std::chrono::steady_clock::time_point start_;
};

struct Timed {
  BettiTable table;
  double seconds = 0;
};

// Runs job(s) for s = first..last on separate threads; results in order of s.
std::vector<Timed> per_s(int first, int last, const std::function<BettiTable(int)>& job) {
  std::vector<std::future<Timed>> pending;
  for (int s = first; s <= last; ++s) {
    pending.push_back(std::async(std::launch::async, [&job, s] {
      const auto start = std::chrono::steady_clock::now();
      BettiTable t = job(s);
      return Timed{std::move(t), std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()};
    }));
  }
  std::vector<Timed> out;
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

template <class T>
bool all_equal(std::initializer_list<std::optional<T>> values) {
  std::optional<T> first;
  for (const auto& v : values) {
    if (!v) continue;
    if (first && *first != *v) return false;
    if (!first) first = v;
  }
  return true;
}

// Closed-form quotient homology from the LES, available when the pinched set
// and the smash power never have homology in the same degree (the inclusion
// then induces zero).
std::optional<BettiTable> closed_quotient(const BettiInput& in, int s, Dim max_degree) {
  std::vector<const BettiTable*> factors(static_cast<std::size_t>(s), &in.q);
  const BettiTable power = kunneth(factors, max_degree);
  BettiTable pinched(max_degree);
  if (s >= 2) {
    for (Dim t = 0; t <= max_degree; ++t) pinched.set(t, betti_pinched_formula(in, s, t));
  }
  BettiTable out(max_degree);
  for (Dim n = 0; n <= max_degree; ++n) {
    if (power.at(n) != 0 && pinched.at(n) != 0) return std::nullopt;
    out.set(n, power.at(n) + pinched.at(n - 1));
  }
  return out;
}

std::string cell(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : "-"; }

}  // namespace

bool RunReport::all_agree() const {
  for (const auto& c : cells) {
    if (!c.agree) return false;
  }
  for (const auto& l : loop) {
    if (!l.agree) return false;
  }
  return true;
}

RunReport run_verify(const SimplicialSetFile& file, int s_max, int t_max) {
  if (!file.involution) throw FormatError("verify needs a set with an involution");
  if (s_max < 2 || t_max < 0) throw std::invalid_argument("verify needs s_max >= 2 and t_max >= 0");
  RunReport r;
  r.fixture = file.set->name();
  r.truncation = file.set->truncation();
  r.s_max = s_max;
  r.t_max = t_max;
  if (t_max + 2 > r.truncation) {
    throw BettiRangeError("verify through degree " + std::to_string(t_max) + " needs truncation >= " +
                          std::to_string(t_max + 2));
  }

  OrbitSpace orbits = orbit_space(*file.involution);
  const PointedSubset& a = orbits.fixed;
  {
    Stopwatch w(r, "section");
    r.section_found = find_section(*file.involution).has_value();
  }
  if (!r.section_found) {
    r.messages.push_back("the orbit projection has no section; loop-space columns are disabled");
  }
  {
    Stopwatch w(r, "diagonal");
    r.diagonal_ok = diagonal_homologous_zero(a, t_max);
  }
  if (!r.diagonal_ok) {
    r.messages.push_back(
        "the reduced diagonal of the fixed set is not homologous to zero; Mayer-Vietoris and closed-form "
        "columns are disabled");
  }

  std::optional<BettiInput> input;
  if (r.diagonal_ok) {
    const auto fixed = restrict(a);
    input = BettiInput{reduced_betti(*orbits.quotient, t_max + 1), reduced_betti(*fixed.set, t_max + 1)};
  }

  const auto pinched = per_s(2, s_max, [&](int s) { return reduced_betti(*pinched_complex(a, s, t_max + 1), t_max); });
  for (int s = 2; s <= s_max; ++s) {
    const BettiTable& brute = pinched[s - 2].table;
    r.timings.push_back({"pinched s=" + std::to_string(s), pinched[s - 2].seconds});
    for (int t = 0; t <= t_max; ++t) {
      GridCell c{s, t, brute.at(t), std::nullopt, std::nullopt, true};
      if (input) {
        c.mv = mv_e1_betti(MvInput{input->q, input->a}, s, t);
        c.closed = betti_pinched_formula(*input, s, t);
      }
      c.agree = all_equal({c.brute, c.mv, c.closed});
      r.cells.push_back(c);
    }
  }

  if (r.section_found) {
    std::vector<BettiTable> brute_quotients(1);
    const int brute_s = std::min(s_max, t_max);
    const auto quotients = per_s(1, brute_s, [&](int s) { return pinched_quotient_betti(a, s, t_max); });
    for (int s = 1; s <= brute_s; ++s) {
      brute_quotients.push_back(quotients[s - 1].table);
      r.timings.push_back({"quotient s=" + std::to_string(s), quotients[s - 1].seconds});
    }
    std::vector<BettiTable> closed_quotients(1);
    bool closed_ok = input.has_value();
    for (int s = 1; closed_ok && s <= t_max; ++s) {
      auto q = closed_quotient(*input, s, t_max);
      if (!q) {
        r.messages.push_back("the closed-form quotient for s = " + std::to_string(s) +
                             " is undetermined (pinched set and smash power share a degree)");
        closed_ok = false;
        break;
      }
      closed_quotients.push_back(std::move(*q));
    }
    for (int n = 1; n <= t_max; ++n) {
      LoopRow row{n, std::nullopt, std::nullopt, true};
      if (n <= brute_s) row.brute = loop_betti(brute_quotients, n);
      if (closed_ok) row.closed = loop_betti(closed_quotients, n);
      row.agree = all_equal({row.brute, row.closed});
      r.loop.push_back(row);
    }
  }
  return r;
}

std::string report_table(const RunReport& r) {
  std::ostringstream out;
  out << "fixture " << r.fixture << " (truncation " << r.truncation << ")\n";
  out << "section: " << (r.section_found ? "found" : "none") << "\n";
  out << "diagonal homologous to zero: " << (r.diagonal_ok ? "yes" : "no") << "\n";
  for (const auto& m : r.messages) out << "note: " << m << "\n";
  out << "\npinched-set Betti numbers\n";
  out << std::setw(4) << "s" << std::setw(4) << "t" << std::setw(10) << "chains" << std::setw(10) << "mv-e1"
      << std::setw(10) << "formula" << "  agree\n";
  for (const auto& c : r.cells) {
    out << std::setw(4) << c.s << std::setw(4) << c.t << std::setw(10) << cell(c.brute) << std::setw(10)
        << cell(c.mv) << std::setw(10) << cell(c.closed) << "  " << (c.agree ? "yes" : "NO") << "\n";
  }
  if (!r.loop.empty()) {
    out << "\nloop-space Betti numbers\n";
    out << std::setw(4) << "n" << std::setw(10) << "chains" << std::setw(10) << "formula" << "  agree\n";
    for (const auto& l : r.loop) {
      out << std::setw(4) << l.n << std::setw(10) << cell(l.brute) << std::setw(10) << cell(l.closed) << "  "
          << (l.agree ? "yes" : "NO") << "\n";
    }
  }
  out << "\nresult: " << (r.all_agree() ? "all computed values agree" : "DISAGREEMENT") << "\n";
  return out.str();
}

std::string report_json(const RunReport& r) {
  using nlohmann::json;
  auto opt = [](const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); };
  json doc;
  doc["fixture"] = r.fixture;
  doc["truncation"] = r.truncation;
  doc["s_max"] = r.s_max;
  doc["t_max"] = r.t_max;
  doc["section_found"] = r.section_found;
  doc["diagonal_homologous_zero"] = r.diagonal_ok;
  doc["messages"] = r.messages;
  json cells = json::array();
  for (const auto& c : r.cells) {
    cells.push_back({{"s", c.s}, {"t", c.t}, {"chains", opt(c.brute)}, {"mv_e1", opt(c.mv)},
                     {"formula", opt(c.closed)}, {"agree", c.agree}});
  }
  doc["pinched"] = std::move(cells);
  json loop = json::array();
  for (const auto& l : r.loop) {
    loop.push_back({{"n", l.n}, {"chains", opt(l.brute)}, {"formula", opt(l.closed)}, {"agree", l.agree}});
  }
  doc["loop"] = std::move(loop);
  json timings = json::object();
  for (const auto& t : r.timings) timings[t.phase] = t.seconds;
  doc["timings"] = std::move(timings);
  doc["all_agree"] = r.all_agree();
  return doc.dump(2) + "\n";
}

std::string report_csv(const RunReport& r) {
  std::ostringstream out;
  out << "kind,s,t,chains,mv_e1,formula,agree\n";
  auto v = [](const std::optional<std::uint64_t>& x) { return x ? std::to_string(*x) : std::string(); };
  for (const auto& c : r.cells) {
    out << "pinched," << c.s << "," << c.t << "," << v(c.brute) << "," << v(c.mv) << "," << v(c.closed) << ","
        << (c.agree ? "true" : "false") << "\n";
  }
  for (const auto& l : r.loop) {
    out << "loop,," << l.n << "," << v(l.brute) << ",," << v(l.closed) << "," << (l.agree ? "true" : "false")
        << "\n";
  }
  return out.str();
}

std::vector<ConjectureRow> conjecture_rows(int n_max) {
  const RecurrenceSeries series = poincare_coeffs(n_max);
  std::vector<ConjectureRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    ConjectureRow row;
    row.n = n;
    row.closed = loop_betti_example(n);
    row.series = series.coeffs[n];
    row.asserted = n <= 12;
    row.match = static_cast<std::int64_t>(row.closed) == row.series;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace stunted

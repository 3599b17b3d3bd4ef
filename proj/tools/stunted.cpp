// Command-line front end: betti, verify and conjecture subcommands.

#include <fstream>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stunted/closed_form.hpp"
#include "stunted/homology.hpp"
#include "stunted/report.hpp"
#include "stunted/serialize.hpp"

namespace {

using namespace stunted;

int cmd_betti(const std::string& path, std::optional<int> max_dim, bool json) {
  const SimplicialSetFile file = load_simplicial_set(path);
  const auto& x = *file.set;
  const Dim t = max_dim ? *max_dim : std::min(std::max(x.top_dim(), 0), x.truncation() - 1);
  const BettiTable b = reduced_betti(x, t);
  if (json) {
    nlohmann::json doc;
    doc["name"] = x.name();
    doc["max_dim"] = t;
    doc["betti"] = b.values();
    std::cout << doc.dump(2) << "\n";
    return 0;
  }
  std::cout << x.name() << ": reduced mod 2 Betti numbers\n";
  for (Dim n = 0; n <= t; ++n) std::cout << "b" << n << " = " << b.at(n) << "\n";
  return 0;
}

int cmd_verify(const std::string& path, int s_max, int t_max, bool json, bool csv) {
  const SimplicialSetFile file = load_simplicial_set(path);
  const RunReport r = run_verify(file, s_max, t_max);
  if (json) {
    std::cout << report_json(r);
  } else if (csv) {
    std::cout << report_csv(r);
  } else {
    std::cout << report_table(r);
  }
  return r.all_agree() ? 0 : 1;
}

int cmd_conjecture(int n_max) {
  if (n_max < 1) throw std::invalid_argument("--n-max must be >= 1");
  bool ok = true;
  std::cout << std::setw(4) << "n" << std::setw(12) << "closed" << std::setw(12) << "series" << "  status\n";
  for (const auto& row : conjecture_rows(n_max)) {
    std::string status;
    if (row.asserted) {
      status = row.match ? "match" : "MISMATCH";
      ok = ok && row.match;
    } else {
      status = row.match ? "conjectured (match)" : "conjectured (differs)";
    }
    std::cout << std::setw(4) << row.n << std::setw(12) << row.closed << std::setw(12) << row.series << "  "
              << status << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mod 2 Betti numbers of pinched sets, their quotients and loop spaces"};
  app.require_subcommand(1);

  std::string betti_file;
  std::optional<int> betti_max;
  bool betti_json = false;
  auto* betti = app.add_subcommand("betti", "reduced mod 2 Betti numbers of a simplicial set");
  betti->add_option("file", betti_file, "simplicial-set document")->required()->check(CLI::ExistingFile);
  betti->add_option("--max-dim", betti_max, "highest degree to report");
  betti->add_flag("--json", betti_json, "machine-readable output");

  std::string verify_file;
  int s_max = 4;
  int t_max = 6;
  bool verify_json = false;
  bool verify_csv = false;
  auto* verify = app.add_subcommand("verify", "compare chain-level, Mayer-Vietoris and closed-form values");
  verify->add_option("file", verify_file, "simplicial set with involution")->required()->check(CLI::ExistingFile);
  verify->add_option("--s-max", s_max, "largest smash exponent")->check(CLI::Range(2, 8));
  verify->add_option("--t-max", t_max, "highest degree")->check(CLI::Range(0, 30));
  auto* j = verify->add_flag("--json", verify_json, "JSON output");
  verify->add_flag("--csv", verify_csv, "CSV output")->excludes(j);

  int n_max = 12;
  auto* conjecture = app.add_subcommand("conjecture", "closed-form loop Betti numbers against the series");
  conjecture->add_option("--n-max", n_max, "highest degree")->check(CLI::Range(1, 60));

  CLI11_PARSE(app, argc, argv);
  try {
    if (*betti) return cmd_betti(betti_file, betti_max, betti_json);
    if (*verify) return cmd_verify(verify_file, s_max, t_max, verify_json, verify_csv);
    if (*conjecture) return cmd_conjecture(n_max);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

#ifndef POISSON_THEOREMS_HPP
#define POISSON_THEOREMS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "poisson/io.hpp"

namespace poisson {

struct RunOptions {
  std::uint64_t budget = 1000000;
  std::uint64_t seed = 0;
  int threads = 1;
  std::vector<std::string> t_values = {"1", "2"};  // parameterized table rows
  std::vector<int> filiform_ns = {4, 5, 6, 7};
};

struct CheckInstance {
  std::string algebra;
  std::string field;
  bool hypothesis_met = false;
  bool conclusion_holds = false;
  std::string skip_reason;  // which hypothesis failed, for skipped instances
  std::string evidence;
};

struct CheckReport {
  std::string check_id;
  std::vector<CheckInstance> instances;
  std::string verdict;  // pass | fail | skipped

  void finalize();
  bool failed() const { return verdict == "fail"; }
};

const std::vector<std::string>& known_checks();

/// Runs one executable check. An empty field list selects the check's
/// default fields (primes pinned per statement: splitting checks use
/// p = 1 mod 4, irreducibility checks p = 3 mod 4).
CheckReport run_check(const std::string& check_id, std::vector<const Field*> fields = {},
                      const RunOptions& opts = {});

std::vector<CheckReport> run_all_checks(const RunOptions& opts = {});

/// Recomputes every invariant profile of the builtin classification tables
/// and diffs them cell by cell against the stored six-tuples.
CheckReport reproduce_table(int which, std::vector<const Field*> fields, const std::vector<std::string>& t_values,
                            const RunOptions& opts = {});

Json check_report_to_json(const CheckReport& rep);
std::string render_check_report_text(const CheckReport& rep);

}  // namespace poisson

#endif

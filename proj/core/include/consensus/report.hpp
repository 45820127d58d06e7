#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace consensus {

// One evaluation result row.  Identical seeds and inputs reproduce rows bit
// for bit, which is why wall-clock time is deliberately not a column.
struct EvalReport {
  std::string graph_id;  // e.g. "named:karate", "er:n=100,p=0.1,seed=7"
  std::string method;    // proposed | static | finite_time | best_constant
  std::string dist;      // initial distribution name
  int horizon = 0;       // schedule length T (rounds for finite-time plans)
  int eval_time = 0;     // k at which epsilon was estimated
  long n_samples = 0;
  double epsilon = 0.0;
  double std_error = 0.0;
  std::optional<double> r_asym;  // per-round factor, when defined
  std::uint64_t seed = 0;
};

inline constexpr std::string_view kEvalCsvHeader =
    "graph,method,dist,T,k,n_samples,epsilon,stderr,r_asym,seed";
inline constexpr std::string_view kSweepCsvHeader =
    "graph,method,dist,T,k,n_samples,epsilon,stderr,r_asym,seed,error";

// Row without / with the trailing sweep `error` column.  Fields containing
// commas or quotes (generator graph ids do) are quoted per usual CSV rules.
std::string to_csv_row(const EvalReport& report);
std::string to_csv_row(const EvalReport& report, std::string_view error);

}  // namespace consensus

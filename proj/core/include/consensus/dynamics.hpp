#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "consensus/graph.hpp"
#include "consensus/linalg.hpp"

namespace consensus {

// One consensus round: x'_i = x_i + sum_{j ~ i} w_ij (x_j - x_i), with the
// edge weights in canonical edge order.
std::vector<double> step(const Graph& g, std::span<const double> weights,
                         std::span<const double> x);
void step_into(const Graph& g, std::span<const double> weights,
               std::span<const double> x_in, std::span<double> x_out);

// Deviation from the average: x - mean(x) * 1.
std::vector<double> consensus_error(std::span<const double> x);

// Time-varying weights: row k holds the weights applied at round k.  Rows
// must be nonnegative and finite unless allow_negative is set (static
// optimal weights may legitimately dip below zero).
class WeightSchedule {
 public:
  WeightSchedule(Graph graph, int horizon, std::vector<double> weights,
                 bool allow_negative = false);

  const Graph& graph() const noexcept { return graph_; }
  int horizon() const noexcept { return horizon_; }
  bool allow_negative() const noexcept { return allow_negative_; }

  std::span<const double> row(int k) const;
  std::span<double> row(int k);
  std::span<const double> flat() const noexcept { return weights_; }

 private:
  Graph graph_;
  int horizon_ = 0;
  bool allow_negative_ = false;
  std::vector<double> weights_;  // horizon * edge_count, row-major
};

struct Trajectory {
  std::vector<std::vector<double>> states;  // states[k], k = 0..horizon
  std::vector<double> error_norms;          // ||states[k] - mean(x0) 1||
  bool truncated = false;  // stopped early after a non-finite state
};

// Runs `horizon` rounds from x0.  With periodic=false the horizon may not
// exceed the schedule length (Errc::horizon_exceeds_schedule); with
// periodic=true row (k mod T) is applied at round k.
Trajectory simulate(const WeightSchedule& schedule, std::span<const double> x0,
                    int horizon, bool periodic);

// --- initial conditions --------------------------------------------------

enum class InitialKind { uniform, lognormal, exponential, binomial };

// Per-node i.i.d. initial values.  Defaults match the evaluation setups used
// throughout: uniform on [-1,1], log-normal with (mu, sigma) = (0, 1.5),
// exponential with mean 1, binomial with 50 trials at p = 0.5.
struct InitialDistribution {
  InitialKind kind = InitialKind::uniform;
  double uniform_lo = -1.0;
  double uniform_hi = 1.0;
  double lognormal_mu = 0.0;
  double lognormal_sigma = 1.5;
  double exponential_mean = 1.0;
  int binomial_trials = 50;
  double binomial_p = 0.5;

  static InitialDistribution from_name(std::string_view name);
  std::string_view name() const noexcept;
};

std::vector<double> sample_initial(const InitialDistribution& dist, int n,
                                   std::mt19937_64& eng);

// --- Monte Carlo error estimates -----------------------------------------

struct EpsilonEstimate {
  double mean = 0.0;       // average of ||e(k)|| over samples
  double std_error = 0.0;  // sample standard deviation / sqrt(n_samples)
};

// Engine that evaluation sample s draws its initial vector from.  All the
// epsilon estimators share it, so different methods compared under the same
// seed see identical initial vectors, sample by sample.
std::mt19937_64 eval_sample_engine(std::uint64_t seed, int sample);

// Estimates E||e(k)|| at k = eval_time over n_samples independent initial
// vectors.  Sample s always uses the sub-stream mix_seed(seed, s), so the
// result is bit-reproducible and independent of evaluation order.
EpsilonEstimate estimate_epsilon(const WeightSchedule& schedule,
                                 const InitialDistribution& dist,
                                 int eval_time, int n_samples, bool periodic,
                                 std::uint64_t seed);

// Same estimator reported at every k = 0..max_time in one pass (entry k of
// the result equals estimate_epsilon at k, bit for bit).
std::vector<EpsilonEstimate> estimate_epsilon_curve(
    const WeightSchedule& schedule, const InitialDistribution& dist,
    int max_time, int n_samples, bool periodic, std::uint64_t seed);

// --- asymptotic rate ------------------------------------------------------

// Product of the round matrices over one period, latest round leftmost:
// M = (I - L(T-1)) ... (I - L(1)) (I - L(0)).
DenseMatrix period_product(const WeightSchedule& schedule);

// Worst-case per-round contraction factor of the periodically continued
// schedule: rho^(1/T), where rho is the spectral radius of the period
// product restricted to the complement of the consensus direction.  When
// that radius reaches 1 and the product has a second fixed direction (so
// consensus is never reached), throws Errc::eigenvalue_one_not_simple.
double asymptotic_convergence_factor(const WeightSchedule& schedule);

}  // namespace consensus

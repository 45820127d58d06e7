#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "consensus/dynamics.hpp"
#include "consensus/graph.hpp"

namespace consensus {

// --- constant-weight baseline --------------------------------------------

struct BestConstant {
  double weight = 0.0;  // w* = 2 / (lambda_2 + lambda_n) of the Laplacian
  double factor = 0.0;  // (lambda_n - lambda_2) / (lambda_n + lambda_2)
};

BestConstant best_constant_weight(const Graph& g);

// --- static optimal weights ----------------------------------------------

struct StaticSolveOptions {
  double tolerance = 1e-7;   // required f improvement per patience window
  int patience = 200;        // window length, in iterations
  int max_iterations = 50000;
};

struct StaticWeights {
  WeightSchedule schedule;  // horizon 1; entries may be negative
  double achieved_factor;   // contraction factor of the returned weights
  bool converged;           // stopped by the improvement rule, not the cap
  int iterations;
};

// Minimizes f(w) = || I - L(w) - (1/n) 1 1^T ||_2 over unconstrained edge
// weights by projected-free subgradient descent with Polyak target steps:
// the subgradient at the dominant eigenpair (lambda, u) of the deflated
// averaging matrix is -/+ (u_i - u_j)^2 per edge, the target is
// f_best - delta with delta halved after stretches without improvement, and
// iterates recentre on the incumbent.  Starts from the best constant weight.
StaticWeights static_optimal_weights(const Graph& g,
                                     const StaticSolveOptions& opts = {});

// --- finite-time consensus -----------------------------------------------

// Round k applies (a(k) I - L) with L the unweighted Laplacian; with the
// distinct Laplacian eigenvalues lambda_1 > ... > lambda_K (= 0) each round
// deletes one eigenspace.
//   literal: K rounds; a(k) = lambda_(k+1) for k < K-1 and the last round
//     uses a(K-1) = 1 / prod_{j<K} (lambda_j - lambda_K) + lambda_K, which
//     restores the average in-protocol.
//   nulling: the K-1 deletion rounds only, followed by one local rescale of
//     the state by final_scale = 1 / prod_{j<K} (lambda_j - lambda_K).
enum class FiniteTimeVariant { literal, nulling };

struct FiniteTimePlan {
  FiniteTimeVariant variant = FiniteTimeVariant::literal;
  int node_count = 0;
  std::vector<double> coefficients;  // a(k), application order
  double final_scale = 1.0;          // 1 except for the nulling variant

  int rounds() const noexcept { return static_cast<int>(coefficients.size()); }
};

FiniteTimeVariant finite_time_variant_from_name(std::string_view name);
std::string_view finite_time_variant_name(FiniteTimeVariant v);

FiniteTimePlan finite_time_plan(const Graph& g,
                                FiniteTimeVariant variant =
                                    FiniteTimeVariant::literal);

// Executes the plan from x0.  States and error norms are recorded per round
// (final_scale is folded into the last state).  If a state stops being
// finite, the trajectory ends at the last finite state with truncated set.
Trajectory run_finite_time(const Graph& g, const FiniteTimePlan& plan,
                           std::span<const double> x0);

// Monte Carlo E||e(final)|| for the plan, drawing sample s from the same
// sub-stream as estimate_epsilon does, so methods compared under one seed
// see identical initial vectors.  Truncated samples contribute +inf.
EpsilonEstimate estimate_epsilon_finite(const Graph& g,
                                        const FiniteTimePlan& plan,
                                        const InitialDistribution& dist,
                                        int n_samples, std::uint64_t seed);

}  // namespace consensus

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "consensus/dynamics.hpp"
#include "consensus/graph.hpp"

namespace consensus {

// How the nonnegativity constraint on weights is enforced during training:
// clip after every optimizer step, or reparameterize through softplus so the
// constraint can never be violated.
enum class NonnegMode { project, softplus };

struct TrainConfig {
  int horizon = 10;               // layers in the fully unfolded network
  int samples_per_generation = 1000;
  int batch_size = 1;             // 1 = fully online updates
  double learning_rate = 0.01;
  double init_weight = 0.1;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  InitialDistribution distribution{};
  NonnegMode nonneg = NonnegMode::project;
  std::uint64_t seed = 0;

  void validate() const;  // throws Errc::invalid_params
};

struct AdamState {
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  long steps = 0;

  void resize(std::size_t size);
};

// One Adam step on params in place (bias-corrected moments).  With
// project=true, parameters are clamped to [0, inf) afterwards.
void adam_update(AdamState& state, std::span<double> params,
                 std::span<const double> grads, const TrainConfig& cfg,
                 bool project);

// States of the unfolded network: x[0] = input, x[k] = state after round k.
struct LayerStates {
  std::vector<std::vector<double>> x;
  int layers() const noexcept { return static_cast<int>(x.size()) - 1; }
};

// Forward pass through `layers` rounds; layer_weights holds exactly
// layers * edge_count entries, row k being the weights of round k.
LayerStates unfold_forward(const Graph& g,
                           std::span<const double> layer_weights, int layers,
                           std::span<const double> x0);

// Squared deviation of the final state from the initial average:
// ||x(G) - mean(x0) 1||^2.
double unfold_loss(const LayerStates& states);

// Exact gradient of unfold_loss with respect to every layer weight, by the
// adjoint recursion: delta(G) = 2 e(G), delta(k) = (I - L(k)) delta(k+1)
// (round matrices are symmetric), and
// d loss / d w_e(k) = -(delta_i(k+1) - delta_j(k+1)) (x_i(k) - x_j(k)).
std::vector<double> unfold_backward(const Graph& g,
                                    std::span<const double> layer_weights,
                                    const LayerStates& states);

struct TrainResult {
  WeightSchedule schedule;
  std::vector<double> generation_loss;  // mean sample loss per generation
};

// Incremental deep-unfolding training.  Generation g (g = 1..horizon) trains
// a g-layer network on samples_per_generation fresh initial vectors with
// online Adam; layers carry their weights over from the previous generation,
// the new layer starts at init_weight, and the optimizer moments are reset.
// Every generation g draws from the sub-stream mix_seed(seed, g), so partial
// retraining reproduces longer runs exactly.
TrainResult train_incremental(const Graph& g, const TrainConfig& cfg);

}  // namespace consensus

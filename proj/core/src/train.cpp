#include "consensus/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "consensus/rng.hpp"

namespace consensus {

namespace {

constexpr std::uint64_t kStreamTrain = 0x5452414eull;  // "TRAN"

double softplus(double t) {
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double inverse_softplus(double w) { return std::log(std::expm1(w)); }

}  // namespace

void TrainConfig::validate() const {
  if (horizon < 1)
    raise(Errc::invalid_params, "TrainConfig: horizon must be >= 1");
  if (samples_per_generation < 1)
    raise(Errc::invalid_params,
          "TrainConfig: samples_per_generation must be >= 1");
  if (batch_size < 1 || batch_size > samples_per_generation)
    raise(Errc::invalid_params,
          "TrainConfig: batch_size must lie in [1, samples_per_generation]");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    raise(Errc::invalid_params, "TrainConfig: learning_rate must be > 0");
  if (!(init_weight >= 0.0) || !std::isfinite(init_weight))
    raise(Errc::invalid_params, "TrainConfig: init_weight must be >= 0");
  if (nonneg == NonnegMode::softplus && !(init_weight > 0.0))
    raise(Errc::invalid_params,
          "TrainConfig: softplus mode needs init_weight > 0");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) ||
      !(adam_beta2 >= 0.0 && adam_beta2 < 1.0))
    raise(Errc::invalid_params, "TrainConfig: betas must lie in [0,1)");
  if (!(adam_epsilon > 0.0))
    raise(Errc::invalid_params, "TrainConfig: adam_epsilon must be > 0");
}

void AdamState::resize(std::size_t size) {
  first_moment.assign(size, 0.0);
  second_moment.assign(size, 0.0);
  steps = 0;
}

void adam_update(AdamState& state, std::span<double> params,
                 std::span<const double> grads, const TrainConfig& cfg,
                 bool project) {
  if (params.size() != grads.size() ||
      params.size() != state.first_moment.size())
    raise(Errc::dimension_mismatch, "adam_update: size mismatch");
  ++state.steps;
  const double c1 =
      1.0 - std::pow(cfg.adam_beta1, static_cast<double>(state.steps));
  const double c2 =
      1.0 - std::pow(cfg.adam_beta2, static_cast<double>(state.steps));
  for (std::size_t i = 0; i < params.size(); ++i) {
    double& m = state.first_moment[i];
    double& v = state.second_moment[i];
    m = cfg.adam_beta1 * m + (1.0 - cfg.adam_beta1) * grads[i];
    v = cfg.adam_beta2 * v + (1.0 - cfg.adam_beta2) * grads[i] * grads[i];
    const double m_hat = m / c1;
    const double v_hat = v / c2;
    params[i] -=
        cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.adam_epsilon);
    if (project) params[i] = std::max(params[i], 0.0);
  }
}

LayerStates unfold_forward(const Graph& g,
                           std::span<const double> layer_weights, int layers,
                           std::span<const double> x0) {
  const auto m = static_cast<std::size_t>(g.edge_count());
  if (layers < 1)
    raise(Errc::invalid_params, "unfold_forward: need >= 1 layer");
  if (layer_weights.size() != static_cast<std::size_t>(layers) * m)
    raise(Errc::dimension_mismatch,
          "unfold_forward: need layers * edge_count weights");
  LayerStates states;
  states.x.reserve(static_cast<std::size_t>(layers) + 1);
  states.x.emplace_back(x0.begin(), x0.end());
  for (int k = 0; k < layers; ++k) {
    std::vector<double> next(x0.size());
    step_into(g, layer_weights.subspan(static_cast<std::size_t>(k) * m, m),
              states.x.back(), next);
    states.x.push_back(std::move(next));
  }
  return states;
}

double unfold_loss(const LayerStates& states) {
  const auto& x0 = states.x.front();
  const auto& xg = states.x.back();
  const double c = std::accumulate(x0.begin(), x0.end(), 0.0) /
                   static_cast<double>(x0.size());
  double loss = 0.0;
  for (double v : xg) loss += (v - c) * (v - c);
  return loss;
}

std::vector<double> unfold_backward(const Graph& g,
                                    std::span<const double> layer_weights,
                                    const LayerStates& states) {
  const auto m = static_cast<std::size_t>(g.edge_count());
  const int layers = states.layers();
  if (layers < 1)
    raise(Errc::invalid_params, "unfold_backward: need >= 1 layer");
  if (layer_weights.size() != static_cast<std::size_t>(layers) * m)
    raise(Errc::dimension_mismatch,
          "unfold_backward: need layers * edge_count weights");

  const auto& x0 = states.x.front();
  const double c = std::accumulate(x0.begin(), x0.end(), 0.0) /
                   static_cast<double>(x0.size());
  std::vector<double> delta(x0.size());
  for (std::size_t i = 0; i < delta.size(); ++i)
    delta[i] = 2.0 * (states.x.back()[i] - c);

  std::vector<double> grads(static_cast<std::size_t>(layers) * m, 0.0);
  std::vector<double> prev(delta.size());
  for (int k = layers - 1; k >= 0; --k) {
    const auto row = layer_weights.subspan(static_cast<std::size_t>(k) * m, m);
    const auto& xk = states.x[static_cast<std::size_t>(k)];
    for (std::size_t e = 0; e < m; ++e) {
      const auto [i, j] = g.edges()[e];
      grads[static_cast<std::size_t>(k) * m + e] =
          -(delta[static_cast<std::size_t>(i)] -
            delta[static_cast<std::size_t>(j)]) *
          (xk[static_cast<std::size_t>(i)] - xk[static_cast<std::size_t>(j)]);
    }
    if (k > 0) {
      step_into(g, row, delta, prev);  // round matrices are symmetric
      std::swap(delta, prev);
    }
  }
  return grads;
}

TrainResult train_incremental(const Graph& graph, const TrainConfig& cfg) {
  cfg.validate();
  const auto m = static_cast<std::size_t>(graph.edge_count());
  const bool reparam = cfg.nonneg == NonnegMode::softplus;
  const double init_param =
      reparam ? inverse_softplus(cfg.init_weight) : cfg.init_weight;

  std::vector<double> params;
  std::vector<double> weights;  // materialized, equals params when projecting
  std::vector<double> generation_loss;
  AdamState adam;

  for (int gen = 1; gen <= cfg.horizon; ++gen) {
    params.resize(static_cast<std::size_t>(gen) * m, init_param);
    adam.resize(params.size());
    auto eng =
        make_engine(mix_seed(mix_seed(cfg.seed, kStreamTrain),
                             static_cast<std::uint64_t>(gen)));

    const int updates = cfg.samples_per_generation / cfg.batch_size;
    double loss_sum = 0.0;
    long loss_count = 0;
    std::vector<double> grad_sum(params.size());
    for (int u = 0; u < updates; ++u) {
      std::fill(grad_sum.begin(), grad_sum.end(), 0.0);
      for (int b = 0; b < cfg.batch_size; ++b) {
        const std::vector<double> x0 =
            sample_initial(cfg.distribution, graph.node_count(), eng);
        if (reparam) {
          weights.resize(params.size());
          for (std::size_t i = 0; i < params.size(); ++i)
            weights[i] = softplus(params[i]);
        } else {
          weights.assign(params.begin(), params.end());
        }
        const LayerStates states = unfold_forward(graph, weights, gen, x0);
        loss_sum += unfold_loss(states);
        ++loss_count;
        std::vector<double> grads = unfold_backward(graph, weights, states);
        if (reparam)
          for (std::size_t i = 0; i < grads.size(); ++i)
            grads[i] *= sigmoid(params[i]);
        for (std::size_t i = 0; i < grads.size(); ++i)
          grad_sum[i] += grads[i];
      }
      for (auto& v : grad_sum) {
        v /= static_cast<double>(cfg.batch_size);
        if (!std::isfinite(v))
          raise(Errc::non_finite,
                "train_incremental: non-finite gradient in generation " +
                    std::to_string(gen) + ", update " + std::to_string(u));
      }
      adam_update(adam, params, grad_sum, cfg, !reparam);
      for (double p : params)
        if (!std::isfinite(p))
          raise(Errc::non_finite,
                "train_incremental: non-finite weight in generation " +
                    std::to_string(gen) + ", update " + std::to_string(u));
    }
    generation_loss.push_back(loss_count > 0
                                  ? loss_sum / static_cast<double>(loss_count)
                                  : 0.0);
  }

  if (reparam) {
    weights.resize(params.size());
    for (std::size_t i = 0; i < params.size(); ++i)
      weights[i] = softplus(params[i]);
  } else {
    weights.assign(params.begin(), params.end());
  }
  return TrainResult{
      WeightSchedule(graph, cfg.horizon, std::move(weights)),
      std::move(generation_loss)};
}

}  // namespace consensus

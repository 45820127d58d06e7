#include "consensus/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "consensus/rng.hpp"

namespace consensus {

namespace {

// Sub-stream tags, chained through mix_seed so different consumers of the
// same user seed never overlap.
constexpr std::uint64_t kStreamEval = 0x4556414cull;  // "EVAL"

double mean_of(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return std::accumulate(x.begin(), x.end(), 0.0) /
         static_cast<double>(x.size());
}

}  // namespace

void step_into(const Graph& g, std::span<const double> weights,
               std::span<const double> x_in, std::span<double> x_out) {
  if (static_cast<int>(weights.size()) != g.edge_count())
    raise(Errc::dimension_mismatch, "step: weight count differs from edges");
  if (static_cast<int>(x_in.size()) != g.node_count() ||
      x_out.size() != x_in.size())
    raise(Errc::dimension_mismatch, "step: state size differs from nodes");
  std::copy(x_in.begin(), x_in.end(), x_out.begin());
  for (std::size_t e = 0; e < weights.size(); ++e) {
    const auto [i, j] = g.edges()[e];
    const double flow = weights[e] * (x_in[static_cast<std::size_t>(j)] -
                                      x_in[static_cast<std::size_t>(i)]);
    x_out[static_cast<std::size_t>(i)] += flow;
    x_out[static_cast<std::size_t>(j)] -= flow;
  }
}

std::vector<double> step(const Graph& g, std::span<const double> weights,
                         std::span<const double> x) {
  std::vector<double> out(x.size());
  step_into(g, weights, x, out);
  return out;
}

std::vector<double> consensus_error(std::span<const double> x) {
  const double c = mean_of(x);
  std::vector<double> e(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) e[i] = x[i] - c;
  return e;
}

WeightSchedule::WeightSchedule(Graph graph, int horizon,
                               std::vector<double> weights,
                               bool allow_negative)
    : graph_(std::move(graph)),
      horizon_(horizon),
      allow_negative_(allow_negative),
      weights_(std::move(weights)) {
  if (horizon_ < 1)
    raise(Errc::invalid_params, "WeightSchedule: horizon must be >= 1");
  const auto expected = static_cast<std::size_t>(horizon_) *
                        static_cast<std::size_t>(graph_.edge_count());
  if (weights_.size() != expected)
    raise(Errc::dimension_mismatch,
          "WeightSchedule: need horizon * edge_count weights");
  for (double w : weights_) {
    if (!std::isfinite(w))
      raise(Errc::non_finite, "WeightSchedule: non-finite weight");
    if (!allow_negative_ && w < 0.0)
      raise(Errc::invalid_params, "WeightSchedule: negative weight");
  }
}

std::span<const double> WeightSchedule::row(int k) const {
  if (k < 0 || k >= horizon_)
    raise(Errc::invalid_params, "WeightSchedule::row: index out of range");
  const auto m = static_cast<std::size_t>(graph_.edge_count());
  return std::span<const double>(weights_).subspan(
      static_cast<std::size_t>(k) * m, m);
}

std::span<double> WeightSchedule::row(int k) {
  if (k < 0 || k >= horizon_)
    raise(Errc::invalid_params, "WeightSchedule::row: index out of range");
  const auto m = static_cast<std::size_t>(graph_.edge_count());
  return std::span<double>(weights_).subspan(static_cast<std::size_t>(k) * m,
                                             m);
}

Trajectory simulate(const WeightSchedule& schedule, std::span<const double> x0,
                    int horizon, bool periodic) {
  if (horizon < 0)
    raise(Errc::invalid_params, "simulate: horizon must be >= 0");
  if (!periodic && horizon > schedule.horizon())
    raise(Errc::horizon_exceeds_schedule,
          "simulate: horizon " + std::to_string(horizon) +
              " exceeds schedule length " +
              std::to_string(schedule.horizon()) + " (periodic not set)");
  if (static_cast<int>(x0.size()) != schedule.graph().node_count())
    raise(Errc::dimension_mismatch, "simulate: x0 size differs from nodes");

  Trajectory traj;
  traj.states.reserve(static_cast<std::size_t>(horizon) + 1);
  traj.states.emplace_back(x0.begin(), x0.end());
  for (int k = 0; k < horizon; ++k) {
    traj.states.push_back(step(schedule.graph(),
                               schedule.row(k % schedule.horizon()),
                               traj.states.back()));
  }
  const double c = mean_of(x0);
  std::vector<double> dev(x0.size());
  for (const auto& state : traj.states) {
    for (std::size_t i = 0; i < dev.size(); ++i) dev[i] = state[i] - c;
    traj.error_norms.push_back(robust_norm(dev));
  }
  return traj;
}

InitialDistribution InitialDistribution::from_name(std::string_view name) {
  InitialDistribution d;
  if (name == "uniform") d.kind = InitialKind::uniform;
  else if (name == "lognormal") d.kind = InitialKind::lognormal;
  else if (name == "exponential") d.kind = InitialKind::exponential;
  else if (name == "binomial") d.kind = InitialKind::binomial;
  else
    raise(Errc::unknown_name,
          "unknown distribution '" + std::string(name) +
              "' (known: uniform, lognormal, exponential, binomial)");
  return d;
}

std::string_view InitialDistribution::name() const noexcept {
  switch (kind) {
    case InitialKind::uniform: return "uniform";
    case InitialKind::lognormal: return "lognormal";
    case InitialKind::exponential: return "exponential";
    case InitialKind::binomial: return "binomial";
  }
  return "uniform";
}

std::vector<double> sample_initial(const InitialDistribution& dist, int n,
                                   std::mt19937_64& eng) {
  if (n < 1) raise(Errc::invalid_params, "sample_initial: n must be >= 1");
  std::vector<double> x(static_cast<std::size_t>(n));
  switch (dist.kind) {
    case InitialKind::uniform:
      if (!(dist.uniform_lo < dist.uniform_hi))
        raise(Errc::invalid_params, "sample_initial: empty uniform range");
      for (auto& v : x)
        v = uniform_range(eng, dist.uniform_lo, dist.uniform_hi);
      break;
    case InitialKind::lognormal:
      if (!(dist.lognormal_sigma >= 0.0))
        raise(Errc::invalid_params, "sample_initial: sigma must be >= 0");
      for (auto& v : x)
        v = lognormal_sample(eng, dist.lognormal_mu, dist.lognormal_sigma);
      break;
    case InitialKind::exponential:
      if (!(dist.exponential_mean > 0.0))
        raise(Errc::invalid_params, "sample_initial: mean must be > 0");
      for (auto& v : x) v = exponential_sample(eng, dist.exponential_mean);
      break;
    case InitialKind::binomial:
      if (dist.binomial_trials < 1 ||
          !(dist.binomial_p >= 0.0 && dist.binomial_p <= 1.0))
        raise(Errc::invalid_params, "sample_initial: bad binomial params");
      for (auto& v : x)
        v = binomial_sample(eng, dist.binomial_trials, dist.binomial_p);
      break;
  }
  return x;
}

std::mt19937_64 eval_sample_engine(std::uint64_t seed, int sample) {
  return make_engine(
      mix_seed(mix_seed(seed, kStreamEval), static_cast<std::uint64_t>(sample)));
}

std::vector<EpsilonEstimate> estimate_epsilon_curve(
    const WeightSchedule& schedule, const InitialDistribution& dist,
    int max_time, int n_samples, bool periodic, std::uint64_t seed) {
  if (max_time < 0)
    raise(Errc::invalid_params, "estimate_epsilon: eval time must be >= 0");
  if (n_samples < 1)
    raise(Errc::invalid_params, "estimate_epsilon: need >= 1 samples");
  if (!periodic && max_time > schedule.horizon())
    raise(Errc::horizon_exceeds_schedule,
          "estimate_epsilon: eval time exceeds schedule length");

  const Graph& g = schedule.graph();
  const auto n = static_cast<std::size_t>(g.node_count());
  const auto rounds = static_cast<std::size_t>(max_time);

  // norms[k][s] = ||e(k)|| for sample s; summed over s afterwards in index
  // order so the result does not depend on evaluation order.
  std::vector<std::vector<double>> norms(
      rounds + 1, std::vector<double>(static_cast<std::size_t>(n_samples)));
  std::vector<double> cur(n), nxt(n), dev(n);
  for (int s = 0; s < n_samples; ++s) {
    auto eng = eval_sample_engine(seed, s);
    cur = sample_initial(dist, g.node_count(), eng);
    const double c = mean_of(cur);
    for (std::size_t k = 0; k <= rounds; ++k) {
      for (std::size_t i = 0; i < n; ++i) dev[i] = cur[i] - c;
      norms[k][static_cast<std::size_t>(s)] = robust_norm(dev);
      if (k == rounds) break;
      step_into(g, schedule.row(static_cast<int>(k) % schedule.horizon()),
                cur, nxt);
      std::swap(cur, nxt);
    }
  }

  std::vector<EpsilonEstimate> out(rounds + 1);
  for (std::size_t k = 0; k <= rounds; ++k) {
    double sum = 0.0;
    for (double v : norms[k]) sum += v;
    const double mean = sum / static_cast<double>(n_samples);
    double ss = 0.0;
    for (double v : norms[k]) ss += (v - mean) * (v - mean);
    const double sd =
        n_samples > 1 ? std::sqrt(ss / static_cast<double>(n_samples - 1))
                      : 0.0;
    out[k] = {mean, sd / std::sqrt(static_cast<double>(n_samples))};
  }
  return out;
}

EpsilonEstimate estimate_epsilon(const WeightSchedule& schedule,
                                 const InitialDistribution& dist,
                                 int eval_time, int n_samples, bool periodic,
                                 std::uint64_t seed) {
  return estimate_epsilon_curve(schedule, dist, eval_time, n_samples, periodic,
                                seed)
      .back();
}

DenseMatrix period_product(const WeightSchedule& schedule) {
  const Graph& g = schedule.graph();
  const int n = g.node_count();
  auto round_matrix = [&](int k) {
    DenseMatrix a = DenseMatrix::identity(n);
    const auto row = schedule.row(k);
    for (std::size_t e = 0; e < row.size(); ++e) {
      const auto [i, j] = g.edges()[e];
      a(i, i) -= row[e];
      a(j, j) -= row[e];
      a(i, j) += row[e];
      a(j, i) += row[e];
    }
    return a;
  };
  DenseMatrix m = round_matrix(0);
  for (int k = 1; k < schedule.horizon(); ++k)
    m = mat_product(round_matrix(k), m);  // later rounds act from the left
  return m;
}

double asymptotic_convergence_factor(const WeightSchedule& schedule) {
  const DenseMatrix m = period_product(schedule);
  const double rho = spectral_radius_complement(m);

  if (rho >= 1.0 - 1e-8) {
    // The complement still carries a unit-radius direction.  If that
    // direction is a genuine second fixed vector of the product, periodic
    // continuation never contracts it and no per-round rate exists.  Power
    // iteration on B = (A + I) / 2 turns eigenvalue 1 of the deflated
    // product A into the dominant one while damping -1 and complex pairs.
    const DenseMatrix a = deflate_ones_complement(m);
    const int n = a.rows();
    auto eng = make_engine(0xF1EDBEEFull);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = uniform01(eng) - 0.5;

    auto recentre = [&](std::vector<double>& y) {
      const double c = mean_of(y);
      for (auto& x : y) x -= c;
    };
    recentre(v);
    double nrm = robust_norm(v);
    if (nrm > 0.0) {
      for (auto& x : v) x /= nrm;
      double mu = 0.0;
      bool settled = false;
      for (int it = 0; it < 5000 && !settled; ++it) {
        std::vector<double> av = mat_vec(a, v);
        std::vector<double> bv(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
          bv[i] = 0.5 * (av[i] + v[i]);
        recentre(bv);
        mu = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) mu += v[i] * bv[i];
        double resid = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
          const double r = bv[i] - mu * v[i];
          resid += r * r;
        }
        settled = std::sqrt(resid) <= 1e-6 * std::max(1.0, std::abs(mu));
        nrm = robust_norm(bv);
        if (nrm == 0.0) break;  // complement annihilated: no fixed vector
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = bv[i] / nrm;
      }
      if (settled && std::abs(mu - 1.0) <= 1e-8)
        raise(Errc::eigenvalue_one_not_simple,
              "asymptotic_convergence_factor: period product has a second "
              "fixed direction; consensus is never reached");
    }
  }
  return std::pow(rho, 1.0 / static_cast<double>(schedule.horizon()));
}

}  // namespace consensus

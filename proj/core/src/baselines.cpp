#include "consensus/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "consensus/linalg.hpp"
#include "consensus/rng.hpp"

namespace consensus {

namespace {

constexpr std::uint64_t kStaticSolverSeed = 0x57415449ull;

double vec_mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return std::accumulate(x.begin(), x.end(), 0.0) /
         static_cast<double>(x.size());
}

void recentre(std::vector<double>& x) {
  const double c = vec_mean(x);
  for (auto& v : x) v -= c;
}

// y = B x with B = I - L(w) - (1/n) 1 1^T (the deflated averaging matrix).
void apply_deflated(const Graph& g, std::span<const double> w,
                    const std::vector<double>& x, std::vector<double>& y) {
  const double c = vec_mean(x);
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - c;
  for (std::size_t e = 0; e < w.size(); ++e) {
    const auto [i, j] = g.edges()[e];
    const double flow = w[e] * (x[static_cast<std::size_t>(j)] -
                                x[static_cast<std::size_t>(i)]);
    y[static_cast<std::size_t>(i)] += flow;
    y[static_cast<std::size_t>(j)] -= flow;
  }
}

struct ExtremeEig {
  double value = 0.0;  // |lambda| of the dominant eigenvalue of B
  std::vector<double> vector;
  bool positive = true;  // sign of that eigenvalue
};

// Dominant-modulus eigenpair of the symmetric deflated matrix B by power
// iteration on B^2 (immune to a +/- pair sharing the top modulus), warm
// started from the previous iterate.  The +/- components are separated
// afterwards via (B + f I) v vs (B - f I) v.
//
// The warm vector is always blended with fresh randomness: on graphs whose
// eigenvectors do not move with w (edge-transitive cases), the previous
// dominant eigenvector can be exactly orthogonal to the current one, and a
// pure warm start would then lock onto the subdominant eigenvalue for good.
ExtremeEig extreme_eigenpair(const Graph& g, std::span<const double> w,
                             std::vector<double>& warm, std::mt19937_64& eng) {
  const auto n = static_cast<std::size_t>(g.node_count());
  std::vector<double> v = warm;
  recentre(v);
  double nrm = robust_norm(v);
  if (!(nrm > 0.0)) {
    for (auto& x : v) x = uniform01(eng) - 0.5;
    recentre(v);
    nrm = robust_norm(v);
  }
  for (auto& x : v) x /= nrm;
  std::vector<double> jitter(n);
  for (auto& x : jitter) x = uniform01(eng) - 0.5;
  recentre(jitter);
  const double jn = robust_norm(jitter);
  if (jn > 0.0)
    for (std::size_t i = 0; i < n; ++i) v[i] += 0.5 * jitter[i] / jn;
  recentre(v);
  nrm = robust_norm(v);
  for (auto& x : v) x /= nrm;

  std::vector<double> bv(n), bbv(n);
  double mu2 = 0.0, mu2_prev = -1.0;
  for (int it = 0; it < 500; ++it) {
    apply_deflated(g, w, v, bv);
    mu2 = 0.0;
    for (double x : bv) mu2 += x * x;  // v^T B^2 v with ||v|| = 1
    if (mu2 == 0.0) {
      warm = v;
      return {0.0, v, true};
    }
    apply_deflated(g, w, bv, bbv);
    recentre(bbv);
    nrm = robust_norm(bbv);
    if (!(nrm > 0.0)) {
      warm = v;
      return {0.0, v, true};
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = bbv[i] / nrm;
    if (std::abs(mu2 - mu2_prev) <= 1e-13 * std::max(mu2, 1e-300)) break;
    mu2_prev = mu2;
  }
  const double f = std::sqrt(mu2);

  apply_deflated(g, w, v, bv);
  std::vector<double> plus(n), minus(n);
  for (std::size_t i = 0; i < n; ++i) {
    plus[i] = bv[i] + f * v[i];
    minus[i] = bv[i] - f * v[i];
  }
  const double np = robust_norm(plus);
  const double nm = robust_norm(minus);
  ExtremeEig out;
  out.value = f;
  out.positive = np >= nm;
  auto& z = out.positive ? plus : minus;
  const double nz = out.positive ? np : nm;
  if (nz > 0.0) {
    for (auto& x : z) x /= nz;
    out.vector = std::move(z);
  } else {
    out.vector = v;  // exactly degenerate split; any unit vector works
  }
  warm = std::move(v);
  return out;
}

}  // namespace

BestConstant best_constant_weight(const Graph& g) {
  const int n = g.node_count();
  if (n < 2)
    raise(Errc::invalid_params, "best_constant_weight: need >= 2 nodes");
  const SymEig eig = sym_eig(laplacian(g));
  const double l2 = eig.values[1];
  const double ln = eig.values[static_cast<std::size_t>(n) - 1];
  BestConstant out;
  out.weight = 2.0 / (l2 + ln);
  out.factor = (ln - l2) / (ln + l2);
  return out;
}

StaticWeights static_optimal_weights(const Graph& g,
                                     const StaticSolveOptions& opts) {
  if (!(opts.tolerance > 0.0) || opts.patience < 1 || opts.max_iterations < 1)
    raise(Errc::invalid_params, "static_optimal_weights: bad options");
  const int n = g.node_count();
  const auto m = static_cast<std::size_t>(g.edge_count());
  if (n == 1) {
    return StaticWeights{WeightSchedule(g, 1, {}, true), 0.0, true, 0};
  }

  const BestConstant bc = best_constant_weight(g);
  std::vector<double> w(m, bc.weight);
  std::vector<double> w_best = w;

  auto eng = make_engine(kStaticSolverSeed);
  std::vector<double> warm(static_cast<std::size_t>(n));
  for (auto& x : warm) x = uniform01(eng) - 0.5;

  double f_best = std::numeric_limits<double>::infinity();
  std::vector<double> best_history;
  best_history.reserve(static_cast<std::size_t>(opts.max_iterations));
  double delta = 0.0;
  int bad_streak = 0;
  bool converged = false;
  int iterations = 0;

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    iterations = iter + 1;
    const ExtremeEig ext = extreme_eigenpair(g, w, warm, eng);
    if (ext.value < f_best) {
      f_best = ext.value;
      w_best = w;
      bad_streak = 0;
    } else if (++bad_streak >= 100) {
      // Polyak target too aggressive at this scale: tighten it and restart
      // from the incumbent.
      delta *= 0.5;
      w = w_best;
      bad_streak = 0;
    }
    if (iter == 0) delta = 0.05 * std::max(f_best, 0.2);
    best_history.push_back(f_best);

    if (f_best <= 1e-12) {  // exact averaging reached; cannot improve on 0
      converged = true;
      break;
    }
    if (iter >= opts.patience &&
        best_history[static_cast<std::size_t>(iter - opts.patience)] -
                f_best <
            opts.tolerance) {
      converged = true;
      break;
    }

    double gnorm2 = 0.0;
    std::vector<double> grad(m);
    for (std::size_t e = 0; e < m; ++e) {
      const auto [i, j] = g.edges()[e];
      const double d = ext.vector[static_cast<std::size_t>(i)] -
                       ext.vector[static_cast<std::size_t>(j)];
      grad[e] = ext.positive ? -d * d : d * d;
      gnorm2 += grad[e] * grad[e];
    }
    if (!(gnorm2 > 1e-300)) {
      // Degenerate subgradient; reshuffle the power-iteration start.
      for (auto& x : warm) x = uniform01(eng) - 0.5;
      continue;
    }
    const double step_size = (ext.value - (f_best - delta)) / gnorm2;
    for (std::size_t e = 0; e < m; ++e) w[e] -= step_size * grad[e];
  }

  // Incumbent selection above trusts approximate eigenvalues; certify the
  // result against the starting point with exact radii so the solver can
  // never return something worse than the constant weights it started from.
  WeightSchedule schedule(g, 1, std::move(w_best), true);
  double achieved = spectral_radius_complement(period_product(schedule));
  WeightSchedule constant(g, 1,
                          std::vector<double>(m, bc.weight), true);
  const double constant_factor =
      spectral_radius_complement(period_product(constant));
  if (constant_factor < achieved) {
    schedule = std::move(constant);
    achieved = constant_factor;
  }
  return StaticWeights{std::move(schedule), achieved, converged, iterations};
}

FiniteTimeVariant finite_time_variant_from_name(std::string_view name) {
  if (name == "literal") return FiniteTimeVariant::literal;
  if (name == "nulling") return FiniteTimeVariant::nulling;
  raise(Errc::unknown_name, "unknown finite-time variant '" +
                                std::string(name) +
                                "' (known: literal, nulling)");
}

std::string_view finite_time_variant_name(FiniteTimeVariant v) {
  return v == FiniteTimeVariant::literal ? "literal" : "nulling";
}

FiniteTimePlan finite_time_plan(const Graph& g, FiniteTimeVariant variant) {
  std::vector<double> distinct = distinct_laplacian_eigenvalues(g);
  std::reverse(distinct.begin(), distinct.end());  // descending, 0 last
  const std::size_t k = distinct.size();

  FiniteTimePlan plan;
  plan.variant = variant;
  plan.node_count = g.node_count();
  plan.coefficients.assign(distinct.begin(),
                           distinct.begin() + (k > 0 ? k - 1 : 0));
  double prod = 1.0;
  for (std::size_t j = 0; j + 1 < k; ++j)
    prod *= distinct[j] - distinct[k - 1];
  if (variant == FiniteTimeVariant::literal) {
    plan.coefficients.push_back(1.0 / prod + distinct[k - 1]);
    plan.final_scale = 1.0;
  } else {
    plan.final_scale = 1.0 / prod;
  }
  return plan;
}

Trajectory run_finite_time(const Graph& g, const FiniteTimePlan& plan,
                           std::span<const double> x0) {
  if (plan.node_count != g.node_count())
    raise(Errc::dimension_mismatch,
          "run_finite_time: plan was built for a different node count");
  if (static_cast<int>(x0.size()) != g.node_count())
    raise(Errc::dimension_mismatch, "run_finite_time: x0 size mismatch");

  Trajectory traj;
  traj.states.emplace_back(x0.begin(), x0.end());
  const auto n = x0.size();
  std::vector<double> next(n);
  for (int r = 0; r < plan.rounds(); ++r) {
    const auto& cur = traj.states.back();
    const double a = plan.coefficients[static_cast<std::size_t>(r)];
    // (a I - L) x, with L the unweighted Laplacian.
    for (std::size_t i = 0; i < n; ++i) next[i] = a * cur[i];
    for (const Edge& e : g.edges()) {
      const auto i = static_cast<std::size_t>(e.a);
      const auto j = static_cast<std::size_t>(e.b);
      next[i] += cur[j] - cur[i];
      next[j] += cur[i] - cur[j];
    }
    if (r + 1 == plan.rounds() && plan.final_scale != 1.0)
      for (auto& v : next) v *= plan.final_scale;
    const bool finite = std::all_of(next.begin(), next.end(), [](double v) {
      return std::isfinite(v);
    });
    if (!finite) {
      traj.truncated = true;
      break;
    }
    traj.states.push_back(next);
  }

  const double c = vec_mean(traj.states.front());
  std::vector<double> dev(n);
  for (const auto& state : traj.states) {
    for (std::size_t i = 0; i < n; ++i) dev[i] = state[i] - c;
    traj.error_norms.push_back(robust_norm(dev));
  }
  return traj;
}

EpsilonEstimate estimate_epsilon_finite(const Graph& g,
                                        const FiniteTimePlan& plan,
                                        const InitialDistribution& dist,
                                        int n_samples, std::uint64_t seed) {
  if (n_samples < 1)
    raise(Errc::invalid_params, "estimate_epsilon_finite: need >= 1 samples");
  std::vector<double> norms(static_cast<std::size_t>(n_samples));
  bool any_truncated = false;
  for (int s = 0; s < n_samples; ++s) {
    auto eng = eval_sample_engine(seed, s);
    const std::vector<double> x0 = sample_initial(dist, g.node_count(), eng);
    const Trajectory traj = run_finite_time(g, plan, x0);
    if (traj.truncated) {
      any_truncated = true;
      norms[static_cast<std::size_t>(s)] =
          std::numeric_limits<double>::infinity();
    } else {
      norms[static_cast<std::size_t>(s)] = traj.error_norms.back();
    }
  }
  if (any_truncated) {
    return {std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
  }
  double sum = 0.0;
  for (double v : norms) sum += v;
  const double mean = sum / static_cast<double>(n_samples);
  double ss = 0.0;
  for (double v : norms) ss += (v - mean) * (v - mean);
  const double sd =
      n_samples > 1 ? std::sqrt(ss / static_cast<double>(n_samples - 1)) : 0.0;
  return {mean, sd / std::sqrt(static_cast<double>(n_samples))};
}

}  // namespace consensus

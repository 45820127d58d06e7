#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "consensus/baselines.hpp"
#include "consensus/dynamics.hpp"
#include "consensus/error.hpp"
#include "consensus/graph.hpp"
#include "consensus/report.hpp"
#include "consensus/rng.hpp"
#include "consensus/schedule_io.hpp"
#include "consensus/train.hpp"

using namespace consensus;

namespace {

// ---------------------------------------------------------------------------
// helpers

constexpr std::uint64_t kStreamGraphGen = 0x47524148ull;  // graph generation

std::string format_num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::uint64_t env_seed() {
  const char* raw = std::getenv("CONSENSUS_SEED");
  if (raw == nullptr || *raw == '\0') return 0;
  std::uint64_t value = 0;
  const char* end = raw + std::string_view(raw).size();
  const auto res = std::from_chars(raw, end, value);
  if (res.ec != std::errc{} || res.ptr != end)
    throw CLI::ValidationError("CONSENSUS_SEED",
                               "must be an unsigned integer");
  return value;
}

// ---------------------------------------------------------------------------
// graph specs
//
//   named:NAME                    one of the bundled graphs
//   file:PATH (or a bare path)    edge-list file
//   er:n=N,p=P[,seed=S]           Erdos-Renyi G(n, p)
//   ba:n=N,m=M[,seed=S]           Barabasi-Albert preferential attachment
//   ws:n=N,k=K,beta=B[,seed=S]    Watts-Strogatz ring rewiring
//
// Generator specs without a seed derive one from the run seed, and the
// resolved id always spells the seed out, so ids identify graphs exactly.

struct GraphSpec {
  Graph graph;
  std::string id;
};

std::vector<std::pair<std::string, std::string>> parse_kv(
    const std::string& body, const std::string& spec) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = std::min(body.find(',', pos), body.size());
    const std::string item = body.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (item.empty() || eq == std::string::npos || eq == 0)
      throw CLI::ValidationError(
          "--graph", "bad generator parameter '" + item + "' in '" + spec +
                         "' (expected key=value pairs)");
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    pos = comma + 1;
  }
  return out;
}

template <typename T>
T parse_num(const std::string& value, const std::string& spec) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc{} || res.ptr != last)
    throw CLI::ValidationError(
        "--graph", "bad number '" + value + "' in '" + spec + "'");
  return out;
}

GraphSpec resolve_generator(const std::string& family,
                            const std::string& body, const std::string& spec,
                            std::uint64_t run_seed) {
  std::optional<int> n, m, k;
  std::optional<double> p, beta;
  std::optional<std::uint64_t> seed;
  for (const auto& [key, value] : parse_kv(body, spec)) {
    if (key == "n")
      n = parse_num<int>(value, spec);
    else if (key == "m" && family == "ba")
      m = parse_num<int>(value, spec);
    else if (key == "k" && family == "ws")
      k = parse_num<int>(value, spec);
    else if (key == "p" && family == "er")
      p = parse_num<double>(value, spec);
    else if (key == "beta" && family == "ws")
      beta = parse_num<double>(value, spec);
    else if (key == "seed")
      seed = parse_num<std::uint64_t>(value, spec);
    else
      throw CLI::ValidationError(
          "--graph", "unknown parameter '" + key + "' for " + family +
                         " in '" + spec + "'");
  }
  if (!n)
    throw CLI::ValidationError("--graph", "'" + spec + "' needs n=");
  const std::uint64_t s =
      seed ? *seed : mix_seed(run_seed, kStreamGraphGen);

  GraphSpec out{Graph::from_edge_list(1, {}), ""};
  if (family == "er") {
    if (!p) throw CLI::ValidationError("--graph", "'" + spec + "' needs p=");
    out.graph = erdos_renyi(*n, *p, s);
    out.id = "er:n=" + std::to_string(*n) + ",p=" + format_num(*p) +
             ",seed=" + std::to_string(s);
  } else if (family == "ba") {
    if (!m) throw CLI::ValidationError("--graph", "'" + spec + "' needs m=");
    out.graph = barabasi_albert(*n, *m, s);
    out.id = "ba:n=" + std::to_string(*n) + ",m=" + std::to_string(*m) +
             ",seed=" + std::to_string(s);
  } else {
    if (!k || !beta)
      throw CLI::ValidationError("--graph",
                                 "'" + spec + "' needs k= and beta=");
    out.graph = watts_strogatz(*n, *k, *beta, s);
    out.id = "ws:n=" + std::to_string(*n) + ",k=" + std::to_string(*k) +
             ",beta=" + format_num(*beta) + ",seed=" + std::to_string(s);
  }
  return out;
}

GraphSpec resolve_graph_spec(const std::string& spec, std::uint64_t run_seed) {
  if (spec.empty()) throw CLI::ValidationError("--graph", "empty graph spec");
  const std::size_t colon = spec.find(':');
  const std::string tag = spec.substr(0, colon);
  if (colon != std::string::npos) {
    const std::string body = spec.substr(colon + 1);
    if (tag == "named") return {load_named(body), spec};
    if (tag == "file") return {read_edge_list_file(body), spec};
    if (tag == "er" || tag == "ba" || tag == "ws")
      return resolve_generator(tag, body, spec, run_seed);
    throw CLI::ValidationError("--graph", "unknown graph spec '" + spec +
                                              "' (named:, file:, er:, ba:, "
                                              "ws:, or a file path)");
  }
  return {read_edge_list_file(spec), "file:" + spec};
}

// ---------------------------------------------------------------------------
// shared option bundles

struct EvalOptions {
  std::string graph_spec;
  std::string dist_name = "uniform";
  int eval_time = 10;
  int n_samples = 1000;
};

void add_eval_options(CLI::App* cmd, EvalOptions& opts) {
  cmd->add_option("--graph", opts.graph_spec, "graph spec")->required();
  cmd->add_option("--dist", opts.dist_name,
                  "initial distribution: uniform | lognormal | exponential | "
                  "binomial");
  cmd->add_option("--k", opts.eval_time, "evaluation round")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--samples", opts.n_samples, "Monte Carlo sample count")
      ->check(CLI::PositiveNumber);
}

EvalReport make_report(const GraphSpec& gs, const std::string& method,
                       const std::string& dist, int horizon, int eval_time,
                       long n_samples, const EpsilonEstimate& est,
                       std::optional<double> r_asym, std::uint64_t seed) {
  EvalReport r;
  r.graph_id = gs.id;
  r.method = method;
  r.dist = dist;
  r.horizon = horizon;
  r.eval_time = eval_time;
  r.n_samples = n_samples;
  r.epsilon = est.mean;
  r.std_error = est.std_error;
  r.r_asym = r_asym;
  r.seed = seed;
  return r;
}

std::optional<double> safe_factor(const WeightSchedule& schedule) {
  try {
    return asymptotic_convergence_factor(schedule);
  } catch (const Error& e) {
    if (e.code() == Errc::eigenvalue_one_not_simple ||
        e.code() == Errc::no_convergence)
      return std::nullopt;  // rate undefined for this schedule
    throw;
  }
}

WeightSchedule constant_schedule(const Graph& g, double weight) {
  return WeightSchedule(
      g, 1,
      std::vector<double>(static_cast<std::size_t>(g.edge_count()), weight),
      weight < 0.0);
}

// ---------------------------------------------------------------------------
// subcommands

int run_train(const std::string& graph_spec, const TrainConfig& cfg,
              const std::string& dist_name, const std::string& nonneg_name,
              const std::string& out_path, bool quiet) {
  TrainConfig full = cfg;
  full.distribution = InitialDistribution::from_name(dist_name);
  if (nonneg_name == "project")
    full.nonneg = NonnegMode::project;
  else if (nonneg_name == "softplus")
    full.nonneg = NonnegMode::softplus;
  else
    throw CLI::ValidationError("--nonneg", "must be project or softplus");

  const GraphSpec gs = resolve_graph_spec(graph_spec, full.seed);
  const TrainResult result = train_incremental(gs.graph, full);
  if (!quiet)
    for (std::size_t g = 0; g < result.generation_loss.size(); ++g)
      std::printf("generation %zu mean_loss %s\n", g + 1,
                  format_num(result.generation_loss[g]).c_str());
  if (!out_path.empty()) write_schedule_file(out_path, result.schedule);
  return 0;
}

int run_eval(const EvalOptions& opts, const std::string& method,
             const std::string& schedule_path, const std::string& variant_name,
             std::uint64_t seed) {
  const GraphSpec gs = resolve_graph_spec(opts.graph_spec, seed);
  const InitialDistribution dist =
      InitialDistribution::from_name(opts.dist_name);
  EvalReport report;

  if (method == "proposed") {
    if (schedule_path.empty())
      throw CLI::ValidationError("--schedule",
                                 "method proposed needs --schedule");
    const WeightSchedule schedule = read_schedule_file(schedule_path);
    if (schedule.graph().node_count() != gs.graph.node_count() ||
        !(schedule.graph().edges() == gs.graph.edges()))
      raise(Errc::dimension_mismatch,
            "eval: schedule was trained on a different graph than --graph");
    const EpsilonEstimate est = estimate_epsilon(
        schedule, dist, opts.eval_time, opts.n_samples, true, seed);
    report = make_report(gs, method, opts.dist_name, schedule.horizon(),
                         opts.eval_time, opts.n_samples, est,
                         safe_factor(schedule), seed);
  } else if (method == "static") {
    const StaticWeights sw = static_optimal_weights(gs.graph);
    const EpsilonEstimate est = estimate_epsilon(
        sw.schedule, dist, opts.eval_time, opts.n_samples, true, seed);
    report = make_report(gs, method, opts.dist_name, 1, opts.eval_time,
                         opts.n_samples, est, sw.achieved_factor, seed);
  } else if (method == "best_constant") {
    const BestConstant bc = best_constant_weight(gs.graph);
    const WeightSchedule schedule = constant_schedule(gs.graph, bc.weight);
    const EpsilonEstimate est = estimate_epsilon(
        schedule, dist, opts.eval_time, opts.n_samples, true, seed);
    report = make_report(gs, method, opts.dist_name, 1, opts.eval_time,
                         opts.n_samples, est, bc.factor, seed);
  } else if (method == "finite_time") {
    const FiniteTimePlan plan = finite_time_plan(
        gs.graph, finite_time_variant_from_name(variant_name));
    const EpsilonEstimate est =
        estimate_epsilon_finite(gs.graph, plan, dist, opts.n_samples, seed);
    report = make_report(gs, method, opts.dist_name, plan.rounds(),
                         plan.rounds(), opts.n_samples, est, std::nullopt,
                         seed);
  } else {
    throw CLI::ValidationError("--method",
                               "must be proposed | static | finite_time | "
                               "best_constant");
  }

  std::printf("%s\n%s\n", std::string(kEvalCsvHeader).c_str(),
              to_csv_row(report).c_str());
  return 0;
}

int run_factor(const std::string& schedule_path) {
  const WeightSchedule schedule = read_schedule_file(schedule_path);
  std::printf("%s\n",
              format_num(asymptotic_convergence_factor(schedule)).c_str());
  return 0;
}

int run_baseline_static(const std::string& graph_spec,
                        const std::string& out_path, std::uint64_t seed) {
  const GraphSpec gs = resolve_graph_spec(graph_spec, seed);
  const StaticWeights sw = static_optimal_weights(gs.graph);
  std::printf("achieved_factor %s converged %s iterations %d\n",
              format_num(sw.achieved_factor).c_str(),
              sw.converged ? "yes" : "no", sw.iterations);
  if (!out_path.empty()) write_schedule_file(out_path, sw.schedule);
  return 0;
}

int run_baseline_finite(const std::string& graph_spec,
                        const std::string& variant_name,
                        const std::string& out_path, std::uint64_t seed) {
  const GraphSpec gs = resolve_graph_spec(graph_spec, seed);
  const FiniteTimePlan plan = finite_time_plan(
      gs.graph, finite_time_variant_from_name(variant_name));
  std::printf("rounds %d variant %s final_scale %s\n", plan.rounds(),
              std::string(finite_time_variant_name(plan.variant)).c_str(),
              format_num(plan.final_scale).c_str());
  if (!out_path.empty()) write_finite_plan_file(out_path, plan);
  return 0;
}

int run_baseline_constant(const std::string& graph_spec,
                          const std::string& out_path, std::uint64_t seed) {
  const GraphSpec gs = resolve_graph_spec(graph_spec, seed);
  const BestConstant bc = best_constant_weight(gs.graph);
  std::printf("weight %s factor %s\n", format_num(bc.weight).c_str(),
              format_num(bc.factor).c_str());
  if (!out_path.empty())
    write_schedule_file(out_path, constant_schedule(gs.graph, bc.weight));
  return 0;
}

int run_graph_info(const std::string& graph_spec, std::uint64_t seed) {
  const GraphSpec gs = resolve_graph_spec(graph_spec, seed);
  const std::vector<int> deg = degrees(gs.graph);
  int dmin = deg.empty() ? 0 : deg.front();
  int dmax = dmin;
  long dsum = 0;
  for (int d : deg) {
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
    dsum += d;
  }
  std::printf("graph %s\n", gs.id.c_str());
  std::printf("nodes %d\n", gs.graph.node_count());
  std::printf("edges %d\n", gs.graph.edge_count());
  std::printf("degree_min %d\n", dmin);
  std::printf("degree_max %d\n", dmax);
  std::printf("degree_mean %s\n",
              format_num(static_cast<double>(dsum) /
                         std::max(1, gs.graph.node_count()))
                  .c_str());
  const std::vector<double> distinct =
      distinct_laplacian_eigenvalues(gs.graph);
  std::printf("distinct_laplacian_eigenvalues %zu\n", distinct.size());
  if (distinct.size() >= 2) {
    std::printf("lambda_2 %s\n", format_num(distinct[1]).c_str());
    std::printf("lambda_max %s\n", format_num(distinct.back()).c_str());
    const BestConstant bc = best_constant_weight(gs.graph);
    std::printf("best_constant_weight %s\n", format_num(bc.weight).c_str());
    std::printf("best_constant_factor %s\n", format_num(bc.factor).c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// parameter sweep: methods x sizes x graph seeds, one CSV row per cell

struct SweepOptions {
  std::string family = "ba";
  int ba_m = 3;
  double er_p = 0.2;
  int ws_k = 4;
  double ws_beta = 0.15;
  std::vector<int> sizes;
  int graph_seeds = 10;
  std::vector<std::string> methods{"proposed", "static", "finite_time",
                                   "best_constant"};
  std::string dist_name = "uniform";
  int horizon = 10;
  int n_samples = 1000;
  std::string variant_name = "literal";
  TrainConfig train;
};

// finite-time plans need the full spectrum and blow up far earlier anyway;
// past this size the sweep reports the cell as excluded instead of burning
// time on a foregone conclusion.
constexpr int kFiniteSweepNodeLimit = 100;

int run_sweep(const SweepOptions& opts, std::uint64_t seed) {
  const InitialDistribution dist =
      InitialDistribution::from_name(opts.dist_name);
  std::printf("%s\n", std::string(kSweepCsvHeader).c_str());
  for (const int n : opts.sizes) {
    for (int rep = 0; rep < opts.graph_seeds; ++rep) {
      const std::uint64_t cell =
          mix_seed(mix_seed(seed, static_cast<std::uint64_t>(n)),
                   static_cast<std::uint64_t>(rep));
      std::string spec;
      if (opts.family == "ba")
        spec = "ba:n=" + std::to_string(n) + ",m=" + std::to_string(opts.ba_m);
      else if (opts.family == "er")
        spec = "er:n=" + std::to_string(n) + ",p=" + format_num(opts.er_p);
      else if (opts.family == "ws")
        spec = "ws:n=" + std::to_string(n) + ",k=" + std::to_string(opts.ws_k) +
               ",beta=" + format_num(opts.ws_beta);
      else
        throw CLI::ValidationError("--family", "must be ba | er | ws");
      spec += ",seed=" + std::to_string(mix_seed(cell, kStreamGraphGen));
      const GraphSpec gs = resolve_graph_spec(spec, cell);

      for (const std::string& method : opts.methods) {
        if (method == "proposed") {
          TrainConfig cfg = opts.train;
          cfg.horizon = opts.horizon;
          cfg.distribution = dist;
          cfg.seed = cell;
          const TrainResult tr = train_incremental(gs.graph, cfg);
          const EpsilonEstimate est = estimate_epsilon(
              tr.schedule, dist, opts.horizon, opts.n_samples, true, cell);
          std::printf("%s\n",
                      to_csv_row(make_report(gs, method, opts.dist_name,
                                             opts.horizon, opts.horizon,
                                             opts.n_samples, est,
                                             safe_factor(tr.schedule), cell),
                                 "")
                          .c_str());
        } else if (method == "static") {
          const StaticWeights sw = static_optimal_weights(gs.graph);
          const EpsilonEstimate est = estimate_epsilon(
              sw.schedule, dist, opts.horizon, opts.n_samples, true, cell);
          std::printf(
              "%s\n",
              to_csv_row(make_report(gs, method, opts.dist_name, 1,
                                     opts.horizon, opts.n_samples, est,
                                     sw.achieved_factor, cell),
                         "")
                  .c_str());
        } else if (method == "best_constant") {
          const BestConstant bc = best_constant_weight(gs.graph);
          const WeightSchedule schedule =
              constant_schedule(gs.graph, bc.weight);
          const EpsilonEstimate est = estimate_epsilon(
              schedule, dist, opts.horizon, opts.n_samples, true, cell);
          std::printf("%s\n",
                      to_csv_row(make_report(gs, method, opts.dist_name, 1,
                                             opts.horizon, opts.n_samples,
                                             est, bc.factor, cell),
                                 "")
                          .c_str());
        } else if (method == "finite_time") {
          if (n >= kFiniteSweepNodeLimit) {
            EvalReport r;
            r.graph_id = gs.id;
            r.method = method;
            r.dist = opts.dist_name;
            r.epsilon = std::nan("");
            r.std_error = std::nan("");
            r.seed = cell;
            std::printf(
                "%s\n",
                to_csv_row(r, "finite_time_excluded_large_n").c_str());
            continue;
          }
          const FiniteTimePlan plan = finite_time_plan(
              gs.graph, finite_time_variant_from_name(opts.variant_name));
          const EpsilonEstimate est = estimate_epsilon_finite(
              gs.graph, plan, dist, opts.n_samples, cell);
          std::printf(
              "%s\n",
              to_csv_row(make_report(gs, method, opts.dist_name,
                                     plan.rounds(), plan.rounds(),
                                     opts.n_samples, est, std::nullopt, cell),
                         "")
                  .c_str());
        } else {
          throw CLI::ValidationError("--methods",
                                     "unknown method '" + method + "'");
        }
      }
    }
  }
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{
      "consensus: learned time-varying weight schedules for distributed "
      "averaging, with static-optimal, best-constant and finite-time "
      "baselines"};
  app.require_subcommand(1);
  app.fallthrough();  // --seed may come before or after the subcommand

  std::uint64_t seed = 0;
  bool seed_given = false;

  app.add_option("--seed", seed, "run seed (overrides CONSENSUS_SEED)")
      ->each([&](const std::string&) { seed_given = true; });

  // train
  auto* train_cmd =
      app.add_subcommand("train", "learn a weight schedule by unfolding");
  std::string train_graph, train_out, train_dist = "uniform";
  std::string train_nonneg = "project";
  bool train_quiet = false;
  TrainConfig train_cfg;
  train_cmd->add_option("--graph", train_graph, "graph spec")->required();
  train_cmd->add_option("--T", train_cfg.horizon, "schedule length (layers)")
      ->required();
  train_cmd->add_option("--samples", train_cfg.samples_per_generation,
                        "samples per generation");
  train_cmd->add_option("--batch", train_cfg.batch_size, "batch size");
  train_cmd->add_option("--lr", train_cfg.learning_rate, "Adam step size");
  train_cmd->add_option("--init", train_cfg.init_weight,
                        "initial edge weight");
  train_cmd->add_option("--dist", train_dist, "initial distribution");
  train_cmd->add_option("--nonneg", train_nonneg,
                        "nonnegativity: project | softplus");
  train_cmd->add_option("--out", train_out, "schedule output file");
  train_cmd->add_flag("--quiet", train_quiet, "suppress per-generation loss");

  // eval
  auto* eval_cmd =
      app.add_subcommand("eval", "Monte Carlo error of a method, as CSV");
  EvalOptions eval_opts;
  std::string eval_method = "proposed";
  std::string eval_schedule, eval_variant = "literal";
  add_eval_options(eval_cmd, eval_opts);
  eval_cmd->add_option("--method", eval_method,
                       "proposed | static | finite_time | best_constant");
  eval_cmd->add_option("--schedule", eval_schedule,
                       "schedule file (method proposed)");
  eval_cmd->add_option("--variant", eval_variant,
                       "finite-time variant: literal | nulling");

  // factor
  auto* factor_cmd = app.add_subcommand(
      "factor", "asymptotic per-round contraction factor of a schedule");
  std::string factor_schedule;
  factor_cmd->add_option("--schedule", factor_schedule, "schedule file")
      ->required();

  // baseline
  auto* baseline_cmd =
      app.add_subcommand("baseline", "classical comparison methods");
  baseline_cmd->require_subcommand(1);
  auto* b_static = baseline_cmd->add_subcommand(
      "static", "optimal static weights by spectral subgradient descent");
  std::string bs_graph, bs_out;
  b_static->add_option("--graph", bs_graph, "graph spec")->required();
  b_static->add_option("--out", bs_out, "schedule output file");
  auto* b_finite = baseline_cmd->add_subcommand(
      "finite", "finite-time plan from the distinct Laplacian spectrum");
  std::string bf_graph, bf_out, bf_variant = "literal";
  b_finite->add_option("--graph", bf_graph, "graph spec")->required();
  b_finite->add_option("--variant", bf_variant, "literal | nulling");
  b_finite->add_option("--out", bf_out, "plan output file");
  auto* b_constant = baseline_cmd->add_subcommand(
      "constant", "best single weight shared by every edge");
  std::string bc_graph, bc_out;
  b_constant->add_option("--graph", bc_graph, "graph spec")->required();
  b_constant->add_option("--out", bc_out, "schedule output file");

  // sweep
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "methods x sizes x graph seeds grid, as CSV");
  SweepOptions sweep_opts;
  sweep_cmd->add_option("--family", sweep_opts.family, "ba | er | ws");
  sweep_cmd->add_option("--m", sweep_opts.ba_m, "ba attachment edges");
  sweep_cmd->add_option("--p", sweep_opts.er_p, "er edge probability");
  sweep_cmd->add_option("--ring-k", sweep_opts.ws_k, "ws ring degree");
  sweep_cmd->add_option("--beta", sweep_opts.ws_beta, "ws rewiring rate");
  sweep_cmd->add_option("--sizes", sweep_opts.sizes, "node counts")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--graph-seeds", sweep_opts.graph_seeds,
                        "independent graphs per size")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--methods", sweep_opts.methods, "methods to run")
      ->delimiter(',');
  sweep_cmd->add_option("--dist", sweep_opts.dist_name,
                        "initial distribution");
  sweep_cmd->add_option("--T", sweep_opts.horizon, "schedule length");
  sweep_cmd->add_option("--samples", sweep_opts.n_samples,
                        "Monte Carlo sample count");
  sweep_cmd->add_option("--variant", sweep_opts.variant_name,
                        "finite-time variant");
  sweep_cmd->add_option("--train-samples",
                        sweep_opts.train.samples_per_generation,
                        "training samples per generation");

  // graph-info
  auto* info_cmd =
      app.add_subcommand("graph-info", "structural and spectral summary");
  std::string info_graph;
  info_cmd->add_option("--graph", info_graph, "graph spec")->required();

  try {
    app.parse(argc, argv);
    if (!seed_given) seed = env_seed();

    if (*train_cmd) {
      train_cfg.seed = seed;
      return run_train(train_graph, train_cfg, train_dist, train_nonneg,
                       train_out, train_quiet);
    }
    if (*eval_cmd)
      return run_eval(eval_opts, eval_method, eval_schedule, eval_variant,
                      seed);
    if (*factor_cmd) return run_factor(factor_schedule);
    if (*b_static) return run_baseline_static(bs_graph, bs_out, seed);
    if (*b_finite)
      return run_baseline_finite(bf_graph, bf_variant, bf_out, seed);
    if (*b_constant) return run_baseline_constant(bc_graph, bc_out, seed);
    if (*sweep_cmd) return run_sweep(sweep_opts, seed);
    if (*info_cmd) return run_graph_info(info_graph, seed);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error code=%s message=\"%s\"\n",
                 std::string(errc_name(e.code())).c_str(), e.what());
    return 3;
  }
}

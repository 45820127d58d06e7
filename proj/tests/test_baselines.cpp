#include <cmath>
#include <doctest.h>
#include <functional>
#include <vector>

#include "consensus/baselines.hpp"
#include "consensus/error.hpp"
#include "consensus/graph.hpp"
#include "consensus/linalg.hpp"
#include "consensus/rng.hpp"

using namespace consensus;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::invalid_params;
}

Graph p2() { return Graph::from_edge_list(2, std::vector<Edge>{{0, 1}}); }

Graph p3() {
  return Graph::from_edge_list(3, std::vector<Edge>{{0, 1}, {1, 2}});
}

Graph k3() {
  return Graph::from_edge_list(3, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
}

Graph c4() {
  return Graph::from_edge_list(
      4, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

// Largest |eigenvalue| of I - L(w) - (1/n) 1 1^T via the dense eigensolver;
// an independent route to the contraction factor of a one-round schedule.
double factor_by_dense_eig(const WeightSchedule& s) {
  const DenseMatrix b = deflate_ones_complement(period_product(s));
  const SymEig eig = sym_eig(b);
  double top = 0.0;
  for (double v : eig.values) top = std::max(top, std::abs(v));
  return top;
}

}  // namespace

TEST_CASE("best_constant_weight: small graphs") {
  const BestConstant a = best_constant_weight(p2());
  CHECK(a.weight == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(a.factor) < 1e-12);

  // P3 Laplacian spectrum {0, 1, 3}
  const BestConstant b = best_constant_weight(p3());
  CHECK(b.weight == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(b.factor == doctest::Approx(0.5).epsilon(1e-10));

  // C4 spectrum {0, 2, 2, 4}
  const BestConstant c = best_constant_weight(c4());
  CHECK(c.weight == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(c.factor == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

  CHECK(code_of([] {
          best_constant_weight(Graph::from_edge_list(1, {}));
        }) == Errc::invalid_params);
}

TEST_CASE("best_constant_weight: factor agrees with the power-method route") {
  for (const char* name : {"kite", "karate"}) {
    const Graph g = load_named(name);
    const BestConstant bc = best_constant_weight(g);
    CHECK(bc.factor > 0.0);
    CHECK(bc.factor < 1.0);
    const std::vector<double> w(static_cast<std::size_t>(g.edge_count()),
                                bc.weight);
    const WeightSchedule s(g, 1, w, true);
    CHECK(std::abs(asymptotic_convergence_factor(s) - bc.factor) < 1e-7);
  }
}

TEST_CASE("static_optimal_weights: graphs solved exactly in one move") {
  const StaticWeights a = static_optimal_weights(p2());
  CHECK(a.achieved_factor < 1e-10);
  CHECK(a.converged);
  CHECK(a.schedule.row(0)[0] == doctest::Approx(0.5).epsilon(1e-12));

  const StaticWeights b = static_optimal_weights(k3());
  CHECK(b.achieved_factor < 1e-10);
  CHECK(b.converged);
  for (double w : b.schedule.row(0))
    CHECK(w == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("static_optimal_weights: edge-transitive optima") {
  // on C4 and P3 the best constant weight is already optimal
  const StaticWeights c = static_optimal_weights(c4());
  CHECK(c.converged);
  CHECK(std::abs(c.achieved_factor - 1.0 / 3.0) < 1e-4);

  const StaticWeights p = static_optimal_weights(p3());
  CHECK(p.converged);
  CHECK(std::abs(p.achieved_factor - 0.5) < 1e-4);
}

TEST_CASE("static_optimal_weights: beats the best constant on karate") {
  const Graph g = load_named("karate");
  const BestConstant bc = best_constant_weight(g);
  const StaticWeights sw = static_optimal_weights(g);
  CHECK(sw.converged);
  CHECK(sw.iterations < StaticSolveOptions{}.max_iterations);
  CHECK(sw.achieved_factor < bc.factor - 1e-3);
  // independent check of the reported factor through the dense eigensolver
  CHECK(std::abs(sw.achieved_factor - factor_by_dense_eig(sw.schedule)) <
        1e-6);
}

TEST_CASE("static_optimal_weights: never worse than its starting point") {
  const Graph battery[] = {p2(), p3(), c4(), k3(), load_named("kite"),
                           load_named("chvatal"),
                           watts_strogatz(20, 4, 0.15, 1)};
  for (const Graph& g : battery) {
    const BestConstant bc = best_constant_weight(g);
    const StaticWeights sw = static_optimal_weights(g);
    CHECK(sw.achieved_factor <= bc.factor + 1e-6);
  }
}

TEST_CASE("static_optimal_weights: option validation") {
  StaticSolveOptions opts;
  opts.tolerance = 0.0;
  CHECK(code_of([&] { static_optimal_weights(p2(), opts); }) ==
        Errc::invalid_params);
  opts = StaticSolveOptions{};
  opts.max_iterations = 0;
  CHECK(code_of([&] { static_optimal_weights(p2(), opts); }) ==
        Errc::invalid_params);
}

TEST_CASE("finite_time_plan: coefficients from the distinct spectrum") {
  // P2: spectrum {0, 2}; one deletion round then the restoring round
  const FiniteTimePlan a = finite_time_plan(p2());
  REQUIRE(a.rounds() == 2);
  CHECK(a.coefficients[0] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(a.coefficients[1] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(a.final_scale == 1.0);

  // K3: spectrum {0, 3}
  const FiniteTimePlan b = finite_time_plan(k3());
  REQUIRE(b.rounds() == 2);
  CHECK(b.coefficients[0] == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(b.coefficients[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

  // P3: spectrum {0, 1, 3}, descending application order
  const FiniteTimePlan c = finite_time_plan(p3());
  REQUIRE(c.rounds() == 3);
  CHECK(c.coefficients[0] == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(c.coefficients[1] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(c.coefficients[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

  const FiniteTimePlan d = finite_time_plan(p3(), FiniteTimeVariant::nulling);
  REQUIRE(d.rounds() == 2);
  CHECK(d.coefficients[0] == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(d.coefficients[1] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(d.final_scale == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("finite_time_variant: names") {
  CHECK(finite_time_variant_from_name("literal") ==
        FiniteTimeVariant::literal);
  CHECK(finite_time_variant_from_name("nulling") ==
        FiniteTimeVariant::nulling);
  CHECK(finite_time_variant_name(FiniteTimeVariant::nulling) == "nulling");
  CHECK(code_of([] { finite_time_variant_from_name("exact"); }) ==
        Errc::unknown_name);
}

TEST_CASE("run_finite_time: exact averaging on small graphs") {
  const std::vector<double> x0{1.0, 2.0, 4.0};
  for (const auto variant :
       {FiniteTimeVariant::literal, FiniteTimeVariant::nulling}) {
    const FiniteTimePlan plan = finite_time_plan(p3(), variant);
    const Trajectory traj = run_finite_time(p3(), plan, x0);
    REQUIRE_FALSE(traj.truncated);
    REQUIRE(traj.states.size() ==
            static_cast<std::size_t>(plan.rounds()) + 1);
    for (double v : traj.states.back())
      CHECK(v == doctest::Approx(7.0 / 3.0).epsilon(1e-12));
    CHECK(traj.error_norms.back() < 1e-12);
  }
}

TEST_CASE("run_finite_time: small named graphs reach consensus") {
  auto eng = make_engine(808);
  for (const char* name : {"kite", "chvatal", "pappus"}) {
    const Graph g = load_named(name);
    std::vector<double> x0(static_cast<std::size_t>(g.node_count()));
    for (auto& v : x0) v = uniform01(eng) * 2.0 - 1.0;
    for (const auto variant :
         {FiniteTimeVariant::literal, FiniteTimeVariant::nulling}) {
      const FiniteTimePlan plan = finite_time_plan(g, variant);
      const Trajectory traj = run_finite_time(g, plan, x0);
      REQUIRE_FALSE(traj.truncated);
      CHECK(traj.error_norms.back() < 1e-5);
    }
  }
}

TEST_CASE("run_finite_time: larger graphs blow up in floating point") {
  const Graph g = load_named("karate");
  const FiniteTimePlan plan = finite_time_plan(g);
  const EpsilonEstimate est =
      estimate_epsilon_finite(g, plan, InitialDistribution{}, 20, 404);
  // exact in exact arithmetic; catastrophic in doubles
  CHECK((std::isinf(est.mean) || est.mean > 1.0));
}

TEST_CASE("run_finite_time: truncates on overflow") {
  FiniteTimePlan plan;
  plan.node_count = 2;
  plan.coefficients = {1e300, 1e300};
  const std::vector<double> x0{1.0, 2.0};
  const Trajectory traj = run_finite_time(p2(), plan, x0);
  CHECK(traj.truncated);
  CHECK(traj.states.size() == 2);
  CHECK(traj.error_norms.size() == 2);

  const EpsilonEstimate est =
      estimate_epsilon_finite(p2(), plan, InitialDistribution{}, 5, 1);
  CHECK(std::isinf(est.mean));
  CHECK(std::isinf(est.std_error));
}

TEST_CASE("run_finite_time: shape validation") {
  const FiniteTimePlan plan = finite_time_plan(p3());
  const std::vector<double> bad{1.0, 2.0};
  CHECK(code_of([&] { run_finite_time(p3(), plan, bad); }) ==
        Errc::dimension_mismatch);
  CHECK(code_of([&] {
          run_finite_time(p2(), plan, bad);
        }) == Errc::dimension_mismatch);
}

TEST_CASE("estimate_epsilon_finite: exact plans estimate zero") {
  const FiniteTimePlan plan = finite_time_plan(p2());
  const EpsilonEstimate est =
      estimate_epsilon_finite(p2(), plan, InitialDistribution{}, 50, 9);
  CHECK(est.mean < 1e-12);
}

TEST_CASE("estimate_epsilon_finite: reproducible") {
  const FiniteTimePlan plan = finite_time_plan(p3());
  const InitialDistribution d = InitialDistribution::from_name("lognormal");
  const EpsilonEstimate a = estimate_epsilon_finite(p3(), plan, d, 64, 5);
  const EpsilonEstimate b = estimate_epsilon_finite(p3(), plan, d, 64, 5);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
}

#include <cmath>
#include <doctest.h>
#include <functional>
#include <vector>

#include "consensus/dynamics.hpp"
#include "consensus/error.hpp"
#include "consensus/graph.hpp"
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

}  // namespace

TEST_CASE("step: single weighted edge") {
  const std::vector<double> w{0.3};
  const std::vector<double> x{0.0, 2.0};
  const std::vector<double> out = step(p2(), w, x);
  CHECK(out[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(out[1] == doctest::Approx(1.4).epsilon(1e-15));
}

TEST_CASE("step: preserves the sum on random graphs") {
  auto eng = make_engine(99);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = erdos_renyi(8, 0.5, 1000 + trial);
    std::vector<double> w(static_cast<std::size_t>(g.edge_count()));
    for (auto& v : w) v = uniform01(eng);
    std::vector<double> x(8);
    for (auto& v : x) v = uniform01(eng) * 10.0 - 5.0;
    const std::vector<double> y = step(g, w, x);
    double sx = 0.0, sy = 0.0;
    for (double v : x) sx += v;
    for (double v : y) sy += v;
    CHECK(std::abs(sx - sy) < 1e-12);
  }
}

TEST_CASE("step: dimension validation") {
  const std::vector<double> w{0.3};
  const std::vector<double> short_x{1.0};
  CHECK(code_of([&] { step(p2(), w, short_x); }) == Errc::dimension_mismatch);
  const std::vector<double> w2{0.3, 0.1};
  const std::vector<double> x{1.0, 2.0};
  CHECK(code_of([&] { step(p2(), w2, x); }) == Errc::dimension_mismatch);
}

TEST_CASE("consensus_error: subtracts the mean") {
  const std::vector<double> x{0.0, 2.0};
  const std::vector<double> e = consensus_error(x);
  CHECK(e[0] == -1.0);
  CHECK(e[1] == 1.0);
}

TEST_CASE("WeightSchedule: validation") {
  CHECK(code_of([&] { WeightSchedule(p2(), 0, {}); }) == Errc::invalid_params);
  const std::vector<double> wrong{0.1, 0.2};
  CHECK(code_of([&] { WeightSchedule(p2(), 1, wrong); }) ==
        Errc::dimension_mismatch);
  CHECK(code_of([&] { WeightSchedule(p2(), 1, {-0.1}); }) ==
        Errc::invalid_params);
  CHECK(code_of([&] { WeightSchedule(p2(), 1, {std::nan("")}); }) ==
        Errc::non_finite);
  const WeightSchedule signed_ok(p2(), 1, {-0.1}, true);
  CHECK(signed_ok.row(0)[0] == -0.1);
  CHECK(code_of([&] { signed_ok.row(1); }) == Errc::invalid_params);
}

TEST_CASE("simulate: periodic single-edge contraction") {
  const WeightSchedule s(p2(), 1, {0.3});
  const std::vector<double> x0{0.0, 2.0};
  const Trajectory traj = simulate(s, x0, 3, true);
  REQUIRE(traj.states.size() == 4);
  REQUIRE(traj.error_norms.size() == 4);
  const double r2 = std::sqrt(2.0);
  CHECK(traj.error_norms[0] == doctest::Approx(r2).epsilon(1e-12));
  CHECK(traj.error_norms[1] == doctest::Approx(0.4 * r2).epsilon(1e-12));
  CHECK(traj.error_norms[2] == doctest::Approx(0.16 * r2).epsilon(1e-12));
  CHECK(traj.error_norms[3] == doctest::Approx(0.064 * r2).epsilon(1e-12));
  CHECK(traj.states[1][0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK_FALSE(traj.truncated);
}

TEST_CASE("simulate: horizon rules") {
  const WeightSchedule s(p2(), 2, {0.3, 0.2});
  const std::vector<double> x0{1.0, 3.0};
  CHECK(simulate(s, x0, 0, false).states.size() == 1);
  CHECK(simulate(s, x0, 2, false).states.size() == 3);
  CHECK(code_of([&] { simulate(s, x0, 3, false); }) ==
        Errc::horizon_exceeds_schedule);
  CHECK(simulate(s, x0, 7, true).states.size() == 8);
}

TEST_CASE("simulate: mean is preserved along the trajectory") {
  auto eng = make_engine(5);
  const Graph g = erdos_renyi(9, 0.4, 77);
  std::vector<double> w(static_cast<std::size_t>(g.edge_count() * 3));
  for (auto& v : w) v = uniform01(eng) * 0.3;
  const WeightSchedule s(g, 3, std::move(w));
  std::vector<double> x0(9);
  for (auto& v : x0) v = uniform01(eng) * 4.0 - 2.0;
  double c0 = 0.0;
  for (double v : x0) c0 += v;
  c0 /= 9.0;
  const Trajectory traj = simulate(s, x0, 9, true);
  for (const auto& state : traj.states) {
    double c = 0.0;
    for (double v : state) c += v;
    c /= 9.0;
    CHECK(std::abs(c - c0) < 1e-12);
  }
}

TEST_CASE("simulate: error norms survive deep decay without underflow") {
  // mean-zero start, so the states themselves shrink toward denormal range
  // instead of the decay being absorbed into rounding around the average
  const WeightSchedule s(p2(), 1, {0.3});
  const std::vector<double> x0{-1.0, 1.0};
  const Trajectory traj = simulate(s, x0, 600, true);
  const double norm = traj.error_norms.back();
  CHECK(norm > 0.0);
  // sqrt(2) * 0.4^600, compared in log space
  const double want_log = 0.5 * std::log(2.0) + 600.0 * std::log(0.4);
  CHECK(std::abs(std::log(norm) - want_log) < 1e-9);
}

TEST_CASE("InitialDistribution: names round trip") {
  for (const char* name :
       {"uniform", "lognormal", "exponential", "binomial"}) {
    CHECK(InitialDistribution::from_name(name).name() == name);
  }
  CHECK(code_of([] { InitialDistribution::from_name("gauss"); }) ==
        Errc::unknown_name);
}

TEST_CASE("sample_initial: moments match the distributions") {
  constexpr int kDraws = 1000000;
  auto eng = make_engine(31337);

  SUBCASE("uniform on [-1,1]: mean 0") {
    InitialDistribution d;  // uniform default
    double sum = 0.0;
    for (int i = 0; i < kDraws / 100; ++i)
      for (double v : sample_initial(d, 100, eng)) {
        CHECK(v >= -1.0);
        CHECK(v < 1.0);
        sum += v;
      }
    // sd of the mean = (2/sqrt(12))/1000
    CHECK(std::abs(sum / kDraws) < 4 * 0.000577);
  }
  SUBCASE("exponential: mean 1") {
    InitialDistribution d;
    d.kind = InitialKind::exponential;
    double sum = 0.0;
    for (int i = 0; i < kDraws / 100; ++i)
      for (double v : sample_initial(d, 100, eng)) {
        CHECK(v >= 0.0);
        sum += v;
      }
    CHECK(std::abs(sum / kDraws - 1.0) < 4 * 0.001);
  }
  SUBCASE("binomial(50, 0.5): mean 25, integer valued") {
    InitialDistribution d;
    d.kind = InitialKind::binomial;
    double sum = 0.0;
    for (int i = 0; i < kDraws / 100; ++i)
      for (double v : sample_initial(d, 100, eng)) {
        CHECK(v == std::floor(v));
        CHECK(v >= 0.0);
        CHECK(v <= 50.0);
        sum += v;
      }
    // sd of the mean = sqrt(12.5)/1000
    CHECK(std::abs(sum / kDraws - 25.0) < 4 * 0.00354);
  }
  SUBCASE("lognormal(0, 1.5): median 1") {
    InitialDistribution d;
    d.kind = InitialKind::lognormal;
    int below = 0;
    for (int i = 0; i < kDraws / 100; ++i)
      for (double v : sample_initial(d, 100, eng)) {
        CHECK(v > 0.0);
        if (v < 1.0) ++below;
      }
    CHECK(std::abs(static_cast<double>(below) / kDraws - 0.5) < 4 * 0.0005);
  }
}

TEST_CASE("estimate_epsilon: single edge after one round") {
  // E||e(1)|| = 0.4 E|x1 - x2| / sqrt(2), and E|x1 - x2| = 2/3 for
  // independent uniforms on [-1,1]; cross-checked by quadrature below.
  double quad = 0.0;
  constexpr int kGrid = 2000;
  for (int i = 0; i < kGrid; ++i) {
    const double x = -1.0 + (i + 0.5) * (2.0 / kGrid);
    for (int j = 0; j < kGrid; ++j) {
      const double y = -1.0 + (j + 0.5) * (2.0 / kGrid);
      quad += std::abs(x - y);
    }
  }
  quad /= static_cast<double>(kGrid) * kGrid;
  CHECK(std::abs(quad - 2.0 / 3.0) < 1e-6);

  const double want = 0.4 * quad / std::sqrt(2.0);
  CHECK(std::abs(want - 0.1885618083164127) < 1e-6);

  const WeightSchedule s(p2(), 1, {0.3});
  const EpsilonEstimate est =
      estimate_epsilon(s, InitialDistribution{}, 1, 100000, false, 12345);
  // sd of a single sample is 0.4 * sqrt(2/9) ~ 0.1333
  CHECK(std::abs(est.mean - 0.1885618083164127) < 2e-3);
  CHECK(est.std_error > 0.0002);
  CHECK(est.std_error < 0.0007);
}

TEST_CASE("estimate_epsilon: reproducible and seed sensitive") {
  const WeightSchedule s(k3(), 1, {0.2, 0.25, 0.15});
  const InitialDistribution d;
  const EpsilonEstimate a = estimate_epsilon(s, d, 4, 500, true, 7);
  const EpsilonEstimate b = estimate_epsilon(s, d, 4, 500, true, 7);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  const EpsilonEstimate c = estimate_epsilon(s, d, 4, 500, true, 8);
  CHECK(a.mean != c.mean);
}

TEST_CASE("estimate_epsilon_curve: matches pointwise estimates bit for bit") {
  const WeightSchedule s(p3(), 2, {0.3, 0.1, 0.2, 0.4});
  const InitialDistribution d;
  const auto curve = estimate_epsilon_curve(s, d, 5, 300, true, 11);
  REQUIRE(curve.size() == 6);
  for (int k = 0; k <= 5; ++k) {
    const EpsilonEstimate point = estimate_epsilon(s, d, k, 300, true, 11);
    CHECK(curve[static_cast<std::size_t>(k)].mean == point.mean);
    CHECK(curve[static_cast<std::size_t>(k)].std_error == point.std_error);
  }
  CHECK(code_of([&] { estimate_epsilon_curve(s, d, 3, 10, false, 1); }) ==
        Errc::horizon_exceeds_schedule);
  CHECK(code_of([&] { estimate_epsilon(s, d, 2, 0, false, 1); }) ==
        Errc::invalid_params);
}

TEST_CASE("period_product: single round and application order") {
  const WeightSchedule s2(p2(), 2, {0.3, 0.3});
  const DenseMatrix sq = period_product(s2);
  CHECK(sq(0, 0) == doctest::Approx(0.58).epsilon(1e-14));
  CHECK(sq(0, 1) == doctest::Approx(0.42).epsilon(1e-14));

  // round 0 averages edge (0,1), round 1 averages edge (1,2); the product
  // must equal A1 * A0 (round 1 applied last).
  const WeightSchedule s(p3(), 2, {0.5, 0.0, 0.0, 0.5});
  const DenseMatrix m = period_product(s);
  CHECK(m(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(m(0, 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(m(0, 2) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(m(1, 0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(m(1, 2) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(m(2, 0) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("asymptotic_convergence_factor: per-round rate") {
  const WeightSchedule s1(p2(), 1, {0.3});
  CHECK(asymptotic_convergence_factor(s1) ==
        doctest::Approx(0.4).epsilon(1e-8));
  const WeightSchedule s2(p2(), 2, {0.3, 0.3});
  CHECK(asymptotic_convergence_factor(s2) ==
        doctest::Approx(0.4).epsilon(1e-8));
  const WeightSchedule exact(k3(), 1,
                             {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  CHECK(asymptotic_convergence_factor(exact) < 1e-6);
}

TEST_CASE("asymptotic_convergence_factor: diverging and non-contracting") {
  const WeightSchedule big(p2(), 1, {1.2});
  CHECK(asymptotic_convergence_factor(big) ==
        doctest::Approx(1.4).epsilon(1e-8));
  // w = 1 swaps the two values forever: radius 1 via eigenvalue -1, which is
  // still a well-defined (non-)rate, not a repeated fixed direction.
  const WeightSchedule swap(p2(), 1, {1.0});
  CHECK(asymptotic_convergence_factor(swap) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("asymptotic_convergence_factor: severed graph has no rate") {
  // zero weight on edge (1,2) leaves node 2 fixed: a second unit eigenvector
  const WeightSchedule cut(p3(), 1, {0.3, 0.0});
  CHECK(code_of([&] { asymptotic_convergence_factor(cut); }) ==
        Errc::eigenvalue_one_not_simple);
}

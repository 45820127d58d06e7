#include <cmath>
#include <doctest.h>
#include <functional>
#include <vector>

#include "consensus/error.hpp"
#include "consensus/graph.hpp"
#include "consensus/rng.hpp"
#include "consensus/train.hpp"

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

Graph k3() {
  return Graph::from_edge_list(3, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
}

double loss_at(const Graph& g, const std::vector<double>& w, int layers,
               const std::vector<double>& x0) {
  return unfold_loss(unfold_forward(g, w, layers, x0));
}

}  // namespace

TEST_CASE("unfold_forward: single edge, one layer") {
  const std::vector<double> w{0.3};
  const std::vector<double> x0{0.0, 2.0};
  const LayerStates states = unfold_forward(p2(), w, 1, x0);
  REQUIRE(states.layers() == 1);
  CHECK(states.x[1][0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(states.x[1][1] == doctest::Approx(1.4).epsilon(1e-15));
  // e(1) = (-0.4, 0.4), squared norm 0.32
  CHECK(unfold_loss(states) == doctest::Approx(0.32).epsilon(1e-13));
}

TEST_CASE("unfold_backward: closed-form single-edge gradient") {
  // d/dw ||e(1)||^2 at w = 0.3, x0 = (0, 2):
  // e(1) = (1 - 2w)(-1, 1), loss = 2 (1 - 2w)^2, d loss/dw = -8 (1 - 2w)
  const std::vector<double> w{0.3};
  const std::vector<double> x0{0.0, 2.0};
  const LayerStates states = unfold_forward(p2(), w, 1, x0);
  const std::vector<double> g = unfold_backward(p2(), w, states);
  REQUIRE(g.size() == 1);
  CHECK(g[0] == doctest::Approx(-3.2).epsilon(1e-12));
}

TEST_CASE("unfold_backward: matches central differences") {
  auto eng = make_engine(4242);
  for (int trial = 0; trial < 6; ++trial) {
    const Graph g = erdos_renyi(4 + trial, 0.6, 555 + trial);
    const int layers = 1 + trial % 4;
    const auto m = static_cast<std::size_t>(g.edge_count());
    std::vector<double> w(static_cast<std::size_t>(layers) * m);
    for (auto& v : w) v = uniform01(eng) * 0.5;
    std::vector<double> x0(static_cast<std::size_t>(g.node_count()));
    for (auto& v : x0) v = uniform01(eng) * 2.0 - 1.0;

    const LayerStates states = unfold_forward(g, w, layers, x0);
    const std::vector<double> grads = unfold_backward(g, w, states);
    REQUIRE(grads.size() == w.size());

    const double h = 1e-6;
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::vector<double> wp = w, wm = w;
      wp[i] += h;
      wm[i] -= h;
      const double fd =
          (loss_at(g, wp, layers, x0) - loss_at(g, wm, layers, x0)) /
          (2.0 * h);
      const double tol =
          std::max(1e-6 * std::max(std::abs(fd), std::abs(grads[i])), 1e-9);
      CHECK(std::abs(grads[i] - fd) < tol);
    }
  }
}

TEST_CASE("unfold_backward: zero at an exact-averaging fixed point") {
  // K5 with w = 1/5 reaches the average in one round, so the loss gradient
  // vanishes identically.
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) edges.push_back({i, j});
  const Graph g = Graph::from_edge_list(5, edges);
  const std::vector<double> w(10, 0.2);
  const std::vector<double> x0{0.4, -1.2, 2.0, 0.1, -0.6};
  const LayerStates states = unfold_forward(g, w, 1, x0);
  for (double v : unfold_backward(g, w, states)) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("adam_update: first step has magnitude learning_rate") {
  TrainConfig cfg;
  AdamState st;
  st.resize(1);
  std::vector<double> params{0.5};
  const std::vector<double> grads{2.0};
  adam_update(st, params, grads, cfg, false);
  // bias correction makes the first step lr * g / (|g| + eps) ~ lr
  CHECK(params[0] == doctest::Approx(0.49).epsilon(1e-6));
  CHECK(st.steps == 1);
}

TEST_CASE("adam_update: projection pins weights at zero") {
  TrainConfig cfg;
  AdamState st;
  st.resize(2);
  std::vector<double> params{0.0, 0.004};
  const std::vector<double> grads{3.0, 1.0};
  adam_update(st, params, grads, cfg, true);
  CHECK(params[0] == 0.0);
  CHECK(params[1] == 0.0);  // 0.004 - 0.01 clips to 0
  adam_update(st, params, grads, cfg, true);
  CHECK(params[0] == 0.0);
}

TEST_CASE("adam_update: size validation") {
  TrainConfig cfg;
  AdamState st;
  st.resize(2);
  std::vector<double> params{0.1};
  const std::vector<double> grads{1.0};
  CHECK(code_of([&] {
          adam_update(st, params, grads, cfg, false);
        }) == Errc::dimension_mismatch);
}

TEST_CASE("TrainConfig: validation") {
  TrainConfig cfg;
  cfg.horizon = 0;
  CHECK(code_of([&] { cfg.validate(); }) == Errc::invalid_params);
  cfg = TrainConfig{};
  cfg.learning_rate = 0.0;
  CHECK(code_of([&] { cfg.validate(); }) == Errc::invalid_params);
  cfg = TrainConfig{};
  cfg.batch_size = 2000;  // larger than samples_per_generation
  CHECK(code_of([&] { cfg.validate(); }) == Errc::invalid_params);
  cfg = TrainConfig{};
  cfg.nonneg = NonnegMode::softplus;
  cfg.init_weight = 0.0;
  CHECK(code_of([&] { cfg.validate(); }) == Errc::invalid_params);
  cfg = TrainConfig{};
  cfg.adam_beta1 = 1.0;
  CHECK(code_of([&] { cfg.validate(); }) == Errc::invalid_params);
}

TEST_CASE("train_incremental: single edge learns the averaging weight") {
  TrainConfig cfg;
  cfg.horizon = 1;
  cfg.seed = 17;
  const TrainResult r = train_incremental(p2(), cfg);
  REQUIRE(r.schedule.horizon() == 1);
  REQUIRE(r.generation_loss.size() == 1);
  CHECK(std::abs(r.schedule.row(0)[0] - 0.5) < 0.02);
}

TEST_CASE("train_incremental: triangle learns uniform 1/3 weights") {
  TrainConfig cfg;
  cfg.horizon = 1;
  cfg.seed = 3;
  const TrainResult r = train_incremental(k3(), cfg);
  for (double w : r.schedule.row(0)) CHECK(std::abs(w - 1.0 / 3.0) < 0.02);
}

TEST_CASE("train_incremental: softplus variant agrees and stays positive") {
  TrainConfig cfg;
  cfg.horizon = 1;
  cfg.seed = 17;
  cfg.nonneg = NonnegMode::softplus;
  const TrainResult r = train_incremental(p2(), cfg);
  CHECK(r.schedule.row(0)[0] > 0.0);
  CHECK(std::abs(r.schedule.row(0)[0] - 0.5) < 0.02);
}

TEST_CASE("train_incremental: deeper schedules stay valid and improve") {
  const Graph g =
      Graph::from_edge_list(3, std::vector<Edge>{{0, 1}, {1, 2}});
  TrainConfig cfg;
  cfg.horizon = 4;
  cfg.seed = 21;
  const TrainResult r = train_incremental(g, cfg);
  REQUIRE(r.schedule.horizon() == 4);
  REQUIRE(r.generation_loss.size() == 4);
  for (int k = 0; k < 4; ++k)
    for (double w : r.schedule.row(k)) {
      CHECK(std::isfinite(w));
      CHECK(w >= 0.0);
    }
  // each added generation should help on this easy graph
  CHECK(r.generation_loss.back() < r.generation_loss.front());
}

TEST_CASE("train_incremental: bit-reproducible, seed sensitive") {
  TrainConfig cfg;
  cfg.horizon = 2;
  cfg.samples_per_generation = 200;
  cfg.seed = 99;
  const Graph g = k3();
  const TrainResult a = train_incremental(g, cfg);
  const TrainResult b = train_incremental(g, cfg);
  REQUIRE(a.schedule.flat().size() == b.schedule.flat().size());
  for (std::size_t i = 0; i < a.schedule.flat().size(); ++i)
    CHECK(a.schedule.flat()[i] == b.schedule.flat()[i]);
  CHECK(a.generation_loss == b.generation_loss);

  cfg.seed = 100;
  const TrainResult c = train_incremental(g, cfg);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.schedule.flat().size(); ++i)
    any_diff = any_diff || a.schedule.flat()[i] != c.schedule.flat()[i];
  CHECK(any_diff);
}

TEST_CASE("train_incremental: batched updates average the gradient") {
  TrainConfig cfg;
  cfg.horizon = 1;
  cfg.samples_per_generation = 400;
  cfg.batch_size = 8;
  cfg.seed = 55;
  const TrainResult r = train_incremental(p2(), cfg);
  CHECK(std::abs(r.schedule.row(0)[0] - 0.5) < 0.05);
}

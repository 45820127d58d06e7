#include "consensus/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>

#include "consensus/rng.hpp"
#include "parse_util.hpp"

namespace consensus {

namespace {

bool is_connected(int n, const std::vector<Edge>& edges) {
  if (n <= 1) return true;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const Edge& e : edges) {
    adj[static_cast<std::size_t>(e.a)].push_back(e.b);
    adj[static_cast<std::size_t>(e.b)].push_back(e.a);
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int count = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++count;
        frontier.push(v);
      }
    }
  }
  return count == n;
}

constexpr int kGenerationAttempts = 10000;

}  // namespace

Graph Graph::from_edge_list(int node_count, std::span<const Edge> edges) {
  if (node_count < 1)
    raise(Errc::invalid_params, "from_edge_list: need at least one node");
  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.a == e.b)
      raise(Errc::self_loop,
            "from_edge_list: self-loop at node " + std::to_string(e.a));
    if (e.a < 0 || e.b < 0 || e.a >= node_count || e.b >= node_count)
      raise(Errc::node_out_of_range,
            "from_edge_list: edge (" + std::to_string(e.a) + "," +
                std::to_string(e.b) + ") outside [0," +
                std::to_string(node_count) + ")");
    canon.push_back(e.a < e.b ? e : Edge{e.b, e.a});
  }
  std::sort(canon.begin(), canon.end(), [](const Edge& x, const Edge& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  if (!is_connected(node_count, canon))
    raise(Errc::disconnected, "from_edge_list: graph is not connected");

  Graph g;
  g.n_ = node_count;
  g.edges_ = std::move(canon);
  return g;
}

std::vector<int> degrees(const Graph& g) {
  std::vector<int> d(static_cast<std::size_t>(g.node_count()), 0);
  for (const Edge& e : g.edges()) {
    ++d[static_cast<std::size_t>(e.a)];
    ++d[static_cast<std::size_t>(e.b)];
  }
  return d;
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 1) raise(Errc::invalid_params, "erdos_renyi: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0))
    raise(Errc::invalid_params, "erdos_renyi: p must lie in [0,1]");
  auto eng = make_engine(seed);
  for (int attempt = 0; attempt < kGenerationAttempts; ++attempt) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (uniform01(eng) < p) edges.push_back({i, j});
    if (is_connected(n, edges))
      return Graph::from_edge_list(n, edges);
  }
  raise(Errc::generation_failed,
        "erdos_renyi: no connected sample in " +
            std::to_string(kGenerationAttempts) + " attempts (n=" +
            std::to_string(n) + ", p=" + std::to_string(p) + ")");
}

Graph barabasi_albert(int n, int m, std::uint64_t seed) {
  if (m < 1) raise(Errc::invalid_params, "barabasi_albert: m must be >= 1");
  if (n <= m)
    raise(Errc::invalid_params, "barabasi_albert: need n > m");
  auto eng = make_engine(seed);

  std::vector<Edge> edges;
  std::vector<int> repeated;  // endpoint multiset; multiplicity = degree
  std::vector<int> targets(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) targets[static_cast<std::size_t>(i)] = i;

  for (int source = m; source < n; ++source) {
    for (int t : targets) edges.push_back({t, source});
    repeated.insert(repeated.end(), targets.begin(), targets.end());
    repeated.insert(repeated.end(), static_cast<std::size_t>(m), source);
    if (source + 1 == n) break;
    // m distinct nodes, each drawn uniformly from the repeated-endpoint
    // list (i.e. proportionally to current degree), redrawing collisions.
    targets.clear();
    while (static_cast<int>(targets.size()) < m) {
      const int pick = repeated[static_cast<std::size_t>(
          uniform_below(eng, repeated.size()))];
      if (std::find(targets.begin(), targets.end(), pick) == targets.end())
        targets.push_back(pick);
    }
  }
  return Graph::from_edge_list(n, edges);
}

Graph watts_strogatz(int n, int k, double beta, std::uint64_t seed) {
  if (n < 3) raise(Errc::invalid_params, "watts_strogatz: n must be >= 3");
  if (k < 2 || k % 2 != 0 || k >= n)
    raise(Errc::invalid_params,
          "watts_strogatz: k must be even with 2 <= k < n");
  if (!(beta >= 0.0 && beta <= 1.0))
    raise(Errc::invalid_params, "watts_strogatz: beta must lie in [0,1]");
  auto eng = make_engine(seed);

  for (int attempt = 0; attempt < kGenerationAttempts; ++attempt) {
    // Ring lattice adjacency, then rewire ring edges in ring order.
    std::vector<std::vector<char>> adj(
        static_cast<std::size_t>(n),
        std::vector<char>(static_cast<std::size_t>(n), 0));
    auto set_edge = [&](int u, int v, char present) {
      adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = present;
      adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = present;
    };
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    for (int j = 1; j <= k / 2; ++j)
      for (int i = 0; i < n; ++i) {
        set_edge(i, (i + j) % n, 1);
        ++degree[static_cast<std::size_t>(i)];
        ++degree[static_cast<std::size_t>((i + j) % n)];
      }
    for (int j = 1; j <= k / 2; ++j) {
      for (int i = 0; i < n; ++i) {
        if (uniform01(eng) >= beta) continue;
        const int old = (i + j) % n;
        if (degree[static_cast<std::size_t>(i)] >= n - 1) continue;
        int w = static_cast<int>(uniform_below(eng, static_cast<std::uint64_t>(n)));
        while (w == i ||
               adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(w)])
          w = static_cast<int>(uniform_below(eng, static_cast<std::uint64_t>(n)));
        set_edge(i, old, 0);
        --degree[static_cast<std::size_t>(old)];
        set_edge(i, w, 1);
        ++degree[static_cast<std::size_t>(w)];
      }
    }
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
          edges.push_back({i, j});
    if (is_connected(n, edges))
      return Graph::from_edge_list(n, edges);
  }
  raise(Errc::generation_failed,
        "watts_strogatz: no connected sample in " +
            std::to_string(kGenerationAttempts) + " attempts");
}

DenseMatrix laplacian(const Graph& g, std::span<const double> weights) {
  if (static_cast<int>(weights.size()) != g.edge_count())
    raise(Errc::dimension_mismatch,
          "laplacian: weight count differs from edge count");
  DenseMatrix l(g.node_count(), g.node_count());
  for (std::size_t e = 0; e < weights.size(); ++e) {
    const auto [i, j] = g.edges()[e];
    const double w = weights[e];
    l(i, i) += w;
    l(j, j) += w;
    l(i, j) -= w;
    l(j, i) -= w;
  }
  return l;
}

DenseMatrix laplacian(const Graph& g) {
  const std::vector<double> ones(static_cast<std::size_t>(g.edge_count()),
                                 1.0);
  return laplacian(g, ones);
}

std::vector<double> distinct_laplacian_eigenvalues(const Graph& g) {
  const SymEig eig = sym_eig(laplacian(g));
  std::vector<double> out;
  double anchor = 0.0;
  double sum = 0.0;
  int count = 0;
  for (double v : eig.values) {
    if (count == 0 || v - anchor > 1e-8) {
      if (count > 0) out.push_back(sum / count);
      anchor = v;
      sum = v;
      count = 1;
    } else {
      sum += v;
      ++count;
    }
  }
  if (count > 0) out.push_back(sum / count);
  return out;
}

int distinct_eigenvalue_count(const Graph& g) {
  return static_cast<int>(distinct_laplacian_eigenvalues(g).size());
}

// --- edge-list text format -----------------------------------------------

Graph parse_edge_list(std::string_view text) {
  using detail::next_line;
  using detail::parse_int_field;
  using detail::split_fields;


  std::string_view line;
  if (!next_line(text, line))
    raise(Errc::malformed_graph_file, "edge list: empty input");
  auto header = split_fields(line);
  if (header.size() != 2)
    raise(Errc::malformed_graph_file, "edge list: header must be 'N M'");
  const int n = parse_int_field(header[0], Errc::malformed_graph_file, "N");
  const int m = parse_int_field(header[1], Errc::malformed_graph_file, "M");
  if (n < 1 || m < 0)
    raise(Errc::malformed_graph_file, "edge list: invalid N or M");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (int row = 0; row < m; ++row) {
    if (!next_line(text, line))
      raise(Errc::malformed_graph_file,
            "edge list: expected " + std::to_string(m) + " edges, found " +
                std::to_string(row));
    auto fields = split_fields(line);
    if (fields.size() != 2)
      raise(Errc::malformed_graph_file,
            "edge list: edge line must be 'i j'");
    const int i = parse_int_field(fields[0], Errc::malformed_graph_file, "i");
    const int j = parse_int_field(fields[1], Errc::malformed_graph_file, "j");
    if (i < 0 || j < 0 || i >= n || j >= n)
      raise(Errc::malformed_graph_file,
            "edge list: endpoint outside [0,N) on line " +
                std::to_string(row + 2));
    if (i >= j)
      raise(Errc::malformed_graph_file,
            "edge list: edges must satisfy i < j (line " +
                std::to_string(row + 2) + ")");
    edges.push_back({i, j});
  }
  if (next_line(text, line) && !split_fields(line).empty())
    raise(Errc::malformed_graph_file, "edge list: trailing content");

  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end(), [](const Edge& x, const Edge& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    raise(Errc::malformed_graph_file, "edge list: duplicate edge");
  return Graph::from_edge_list(n, edges);
}

std::string serialize_edge_list(const Graph& g) {
  std::string out = std::to_string(g.node_count()) + " " +
                    std::to_string(g.edge_count()) + "\n";
  for (const Edge& e : g.edges())
    out += std::to_string(e.a) + " " + std::to_string(e.b) + "\n";
  return out;
}

Graph read_edge_list_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::io_error, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_edge_list(buf.str());
}

void write_edge_list_file(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::io_error, "cannot open " + path.string());
  out << serialize_edge_list(g);
  if (!out) raise(Errc::io_error, "write failed for " + path.string());
}

}  // namespace consensus

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "consensus/linalg.hpp"

namespace consensus {

// Undirected edge with endpoints stored low-first after canonicalization.
struct Edge {
  int a = 0;
  int b = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Connected simple undirected graph.  Instances only come out of
// from_edge_list (directly or via the generators/loaders below), so every
// Graph in circulation has canonical edges -- (a < b), sorted
// lexicographically, no duplicates -- and is verified connected.  The edge
// index into edges() is the canonical edge ordering used for weight vectors
// throughout the library.
class Graph {
 public:
  // Validates and canonicalizes: throws Errc::self_loop,
  // Errc::node_out_of_range, or Errc::disconnected.  Duplicate edges (in
  // either orientation) are merged.
  static Graph from_edge_list(int node_count, std::span<const Edge> edges);

  int node_count() const noexcept { return n_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

 private:
  Graph() = default;

  int n_ = 0;
  std::vector<Edge> edges_;
};

std::vector<int> degrees(const Graph& g);

// --- random models -------------------------------------------------------
// Each generator redraws until the sample is connected, up to 10000 attempts,
// then throws Errc::generation_failed.  The draw sequence is fully determined
// by the seed.

// G(n, p): each of the n(n-1)/2 pairs kept independently with probability p.
Graph erdos_renyi(int n, double p, std::uint64_t seed);

// Preferential attachment: starts from m isolated nodes, then attaches each
// new node to m distinct existing nodes sampled proportionally to degree
// (by uniform choice from the repeated-endpoints list).  Always connected.
Graph barabasi_albert(int n, int m, std::uint64_t seed);

// Ring lattice (k nearest neighbours, k even) with each lattice edge rewired
// to a uniform random endpoint with probability beta.
Graph watts_strogatz(int n, int k, double beta, std::uint64_t seed);

// --- named graphs --------------------------------------------------------
// Classic test networks with fixed vertex order: "kite" (10), "chvatal" (12),
// "pappus" (18), "davis" (32), "karate" (34), "tutte" (46).
Graph load_named(std::string_view name);
std::vector<std::string> named_graph_names();

// --- matrices ------------------------------------------------------------

// Weighted Laplacian: L = sum_e w_e (e_i - e_j)(e_i - e_j)^T with weights in
// canonical edge order.  The unweighted overload uses w_e = 1.
DenseMatrix laplacian(const Graph& g, std::span<const double> weights);
DenseMatrix laplacian(const Graph& g);

// Distinct eigenvalues of the unweighted Laplacian, ascending.  Eigenvalues
// are grouped greedily: a value joins the current cluster while it is within
// 1e-8 of the cluster's first member; each cluster is reported as its mean.
std::vector<double> distinct_laplacian_eigenvalues(const Graph& g);
int distinct_eigenvalue_count(const Graph& g);

// --- edge-list text format -----------------------------------------------
// Line 1: "N M".  Then exactly M lines "i j" with 0 <= i < j < N, no
// duplicates.  Fields are separated by blanks; lines end with '\n'.
// Deviations throw Errc::malformed_graph_file; a well-formed but
// disconnected graph throws Errc::disconnected.
Graph parse_edge_list(std::string_view text);
std::string serialize_edge_list(const Graph& g);
Graph read_edge_list_file(const std::filesystem::path& path);
void write_edge_list_file(const std::filesystem::path& path, const Graph& g);

}  // namespace consensus

#include <array>
#include <string>

#include "consensus/graph.hpp"

// Fixed vertex orders for the bundled test networks.  Edge lists are written
// in canonical (i < j, sorted) order so the tables double as documentation of
// the edge indexing.

namespace consensus {

namespace {

// Krackhardt's kite, 10 nodes: a clique-heavy head (0..6), a short tail
// (7, 8, 9) hanging off nodes 5 and 6.
constexpr std::array<Edge, 18> kKite{{
    {0, 1}, {0, 2}, {0, 3}, {0, 5}, {1, 3}, {1, 4}, {1, 6}, {2, 3}, {2, 5},
    {3, 4}, {3, 5}, {3, 6}, {4, 6}, {5, 6}, {5, 7}, {6, 7}, {7, 8}, {8, 9},
}};

// Chvatal graph: 4-regular, 12 nodes, girth 4.
constexpr std::array<Edge, 24> kChvatal{{
    {0, 1}, {0, 4}, {0, 6},  {0, 9},  {1, 2},  {1, 5},  {1, 7},  {2, 3},
    {2, 6}, {2, 8}, {3, 4},  {3, 7},  {3, 9},  {4, 5},  {4, 8},  {5, 10},
    {5, 11}, {6, 10}, {6, 11}, {7, 8}, {7, 11}, {8, 10}, {9, 10}, {9, 11},
}};

// Pappus graph: 3-regular, 18 nodes; outer 18-cycle plus the chords given by
// the LCF notation [5, 7, -7, 7, -7, -5] repeated three times.
constexpr std::array<Edge, 27> kPappus{{
    {0, 1},  {0, 5},   {0, 17},  {1, 2},   {1, 8},   {2, 3},   {2, 13},
    {3, 4},  {3, 10},  {4, 5},   {4, 15},  {5, 6},   {6, 7},   {6, 11},
    {7, 8},  {7, 14},  {8, 9},   {9, 10},  {9, 16},  {10, 11}, {11, 12},
    {12, 13}, {12, 17}, {13, 14}, {14, 15}, {15, 16}, {16, 17},
}};

// Davis southern-women affiliation network as a bipartite graph: women are
// nodes 0..17 (Evelyn..Flora in the classic order), events are nodes 18..31
// (E1..E14), and each membership is an edge.
constexpr std::array<Edge, 89> kDavis{{
    {0, 18},  {0, 19},  {0, 20},  {0, 21},  {0, 22},  {0, 23},  {0, 25},
    {0, 26},  {1, 18},  {1, 19},  {1, 20},  {1, 22},  {1, 23},  {1, 24},
    {1, 25},  {2, 19},  {2, 20},  {2, 21},  {2, 22},  {2, 23},  {2, 24},
    {2, 25},  {2, 26},  {3, 18},  {3, 20},  {3, 21},  {3, 22},  {3, 23},
    {3, 24},  {3, 25},  {4, 20},  {4, 21},  {4, 22},  {4, 24},  {5, 20},
    {5, 22},  {5, 23},  {5, 25},  {6, 22},  {6, 23},  {6, 24},  {6, 25},
    {7, 23},  {7, 25},  {7, 26},  {8, 22},  {8, 24},  {8, 25},  {8, 26},
    {9, 24},  {9, 25},  {9, 26},  {9, 29},  {10, 25}, {10, 26}, {10, 27},
    {10, 29}, {11, 25}, {11, 26}, {11, 27}, {11, 29}, {11, 30}, {11, 31},
    {12, 24}, {12, 25}, {12, 26}, {12, 27}, {12, 29}, {12, 30}, {12, 31},
    {13, 23}, {13, 24}, {13, 26}, {13, 27}, {13, 28}, {13, 29}, {13, 30},
    {13, 31}, {14, 24}, {14, 25}, {14, 27}, {14, 28}, {14, 29}, {15, 25},
    {15, 26}, {16, 26}, {16, 28}, {17, 26}, {17, 28},
}};

// Zachary karate club, 34 nodes in the standard order.
constexpr std::array<Edge, 78> kKarate{{
    {0, 1},   {0, 2},   {0, 3},   {0, 4},   {0, 5},   {0, 6},   {0, 7},
    {0, 8},   {0, 10},  {0, 11},  {0, 12},  {0, 13},  {0, 17},  {0, 19},
    {0, 21},  {0, 31},  {1, 2},   {1, 3},   {1, 7},   {1, 13},  {1, 17},
    {1, 19},  {1, 21},  {1, 30},  {2, 3},   {2, 7},   {2, 8},   {2, 9},
    {2, 13},  {2, 27},  {2, 28},  {2, 32},  {3, 7},   {3, 12},  {3, 13},
    {4, 6},   {4, 10},  {5, 6},   {5, 10},  {5, 16},  {6, 16},  {8, 30},
    {8, 32},  {8, 33},  {9, 33},  {13, 33}, {14, 32}, {14, 33}, {15, 32},
    {15, 33}, {18, 32}, {18, 33}, {19, 33}, {20, 32}, {20, 33}, {22, 32},
    {22, 33}, {23, 25}, {23, 27}, {23, 29}, {23, 32}, {23, 33}, {24, 25},
    {24, 27}, {24, 31}, {25, 31}, {26, 29}, {26, 33}, {27, 33}, {28, 31},
    {28, 33}, {29, 32}, {29, 33}, {30, 32}, {30, 33}, {31, 32}, {31, 33},
    {32, 33},
}};

// Tutte graph: 3-regular planar, 46 nodes.
constexpr std::array<Edge, 69> kTutte{{
    {0, 1},   {0, 2},   {0, 3},   {1, 4},   {1, 26},  {2, 10},  {2, 11},
    {3, 18},  {3, 19},  {4, 5},   {4, 33},  {5, 6},   {5, 29},  {6, 7},
    {6, 27},  {7, 8},   {7, 14},  {8, 9},   {8, 38},  {9, 10},  {9, 37},
    {10, 39}, {11, 12}, {11, 39}, {12, 13}, {12, 35}, {13, 14}, {13, 15},
    {14, 34}, {15, 16}, {15, 22}, {16, 17}, {16, 44}, {17, 18}, {17, 43},
    {18, 45}, {19, 20}, {19, 45}, {20, 21}, {20, 41}, {21, 22}, {21, 23},
    {22, 40}, {23, 24}, {23, 27}, {24, 25}, {24, 32}, {25, 26}, {25, 31},
    {26, 33}, {27, 28}, {28, 29}, {28, 32}, {29, 30}, {30, 31}, {30, 33},
    {31, 32}, {34, 35}, {34, 38}, {35, 36}, {36, 37}, {36, 39}, {37, 38},
    {40, 41}, {40, 44}, {41, 42}, {42, 43}, {42, 45}, {43, 44},
}};

struct NamedEntry {
  std::string_view name;
  int node_count;
  std::span<const Edge> edges;
};

constexpr std::array<NamedEntry, 6> kNamed{{
    {"kite", 10, kKite},
    {"chvatal", 12, kChvatal},
    {"pappus", 18, kPappus},
    {"davis", 32, kDavis},
    {"karate", 34, kKarate},
    {"tutte", 46, kTutte},
}};

}  // namespace

Graph load_named(std::string_view name) {
  for (const NamedEntry& entry : kNamed)
    if (entry.name == name)
      return Graph::from_edge_list(entry.node_count, entry.edges);
  std::string known;
  for (const NamedEntry& entry : kNamed) {
    if (!known.empty()) known += ", ";
    known += entry.name;
  }
  raise(Errc::unknown_name,
        "load_named: unknown graph '" + std::string(name) + "' (known: " +
            known + ")");
}

std::vector<std::string> named_graph_names() {
  std::vector<std::string> names;
  names.reserve(kNamed.size());
  for (const NamedEntry& entry : kNamed) names.emplace_back(entry.name);
  return names;
}

}  // namespace consensus

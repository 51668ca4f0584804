#pragma once

#include "contract/rational.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace contract {

using Mask = std::uint64_t;
using ActionSet = std::vector<int>;

Mask to_mask(const ActionSet& s);
ActionSet from_mask(Mask m);
inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline bool has(Mask m, int i) { return (m >> i) & 1U; }

// Undirected multigraph; edge e corresponds to action e.
struct Graph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

enum class MatroidType { uniform, partition, graphic, explicit_list };

struct MatroidSpec {
  MatroidType type = MatroidType::uniform;
  int ground_size = 0;
  int k = 0;                      // uniform rank
  std::vector<int> block_of;      // partition: block id per element
  std::vector<int> capacities;    // partition: capacity per block
  Graph graph;                    // graphic: edge i is element i (self-loops allowed internally)
  std::vector<Mask> independent;  // explicit_list: every independent set
  Mask loops = 0;                 // elements never allowed in an independent set
};

MatroidSpec uniform_matroid(int n, int k);
MatroidSpec partition_matroid(std::vector<int> block_of, std::vector<int> capacities);
MatroidSpec graphic_matroid(const Graph& g);
// Closes the given family downward; requires n <= 16.
MatroidSpec explicit_matroid(int n, const std::vector<Mask>& sets);

bool is_independent(const MatroidSpec& m, Mask s);
bool is_independent(const MatroidSpec& m, const ActionSet& s);
int rank(const MatroidSpec& m, Mask s);

// Classic greedy: non-increasing weight, ties by ascending index; every addable element is added.
ActionSet greedy_max_weight(const MatroidSpec& m, const std::vector<Rational>& weights);

// Contraction by an independent set D: independent sets are S disjoint from D with S u D independent.
MatroidSpec restrict_after_fixing(const MatroidSpec& m, Mask d);

// Marks extra elements as loops (restriction of the ground set).
MatroidSpec without_elements(const MatroidSpec& m, Mask removed);

// Row sum_{i in elements} x_i <= rhs.
struct Cut {
  std::vector<int> elements;
  Rational rhs;
};

std::optional<Cut> matroid_separation(const MatroidSpec& m, const std::vector<Rational>& x);

bool is_matching(const Graph& g, Mask s);
bool is_matching(const Graph& g, const ActionSet& s);

// Degree rows first, then odd vertex sets of size >= 3.
std::optional<Cut> matching_separation(const Graph& g, const std::vector<Rational>& x);

constexpr int kMatchingVertexCap = 16;
constexpr int kExhaustiveSeparationCap = 20;

}  // namespace contract

#include "contract/structures.hpp"

#include "contract/errors.hpp"

#include <algorithm>
#include <numeric>

namespace contract {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

int graphic_rank(const Graph& g, Mask s) {
  UnionFind uf(g.num_vertices);
  int r = 0;
  for (Mask rest = s; rest != 0; rest &= rest - 1) {
    int e = __builtin_ctzll(rest);
    if (uf.unite(g.edges[e].first, g.edges[e].second)) ++r;
  }
  return r;
}

}  // namespace

Mask to_mask(const ActionSet& s) {
  Mask m = 0;
  for (int i : s) {
    if (i < 0 || i >= 64) throw InvalidSetError("action index outside mask range");
    m |= Mask{1} << i;
  }
  return m;
}

ActionSet from_mask(Mask m) {
  ActionSet out;
  for (Mask rest = m; rest != 0; rest &= rest - 1) out.push_back(__builtin_ctzll(rest));
  return out;
}

MatroidSpec uniform_matroid(int n, int k) {
  MatroidSpec m;
  m.type = MatroidType::uniform;
  m.ground_size = n;
  m.k = k;
  return m;
}

MatroidSpec partition_matroid(std::vector<int> block_of, std::vector<int> capacities) {
  MatroidSpec m;
  m.type = MatroidType::partition;
  m.ground_size = static_cast<int>(block_of.size());
  for (int b : block_of) {
    if (b < 0 || b >= static_cast<int>(capacities.size())) {
      throw std::invalid_argument("partition block id out of range");
    }
  }
  m.block_of = std::move(block_of);
  m.capacities = std::move(capacities);
  return m;
}

MatroidSpec graphic_matroid(const Graph& g) {
  MatroidSpec m;
  m.type = MatroidType::graphic;
  m.ground_size = static_cast<int>(g.edges.size());
  m.graph = g;
  return m;
}

MatroidSpec explicit_matroid(int n, const std::vector<Mask>& sets) {
  if (n > 16) throw ScaleError("explicit matroid limited to 16 elements");
  std::vector<char> member(std::size_t{1} << n, 0);
  member[0] = 1;
  for (Mask s : sets) member[s] = 1;
  // Downward closure, largest sets first so every subset inherits membership.
  for (Mask s = (Mask{1} << n); s-- > 0;) {
    if (!member[s]) continue;
    for (Mask rest = s; rest != 0; rest &= rest - 1) member[s & ~(rest & -rest)] = 1;
  }
  MatroidSpec m;
  m.type = MatroidType::explicit_list;
  m.ground_size = n;
  for (Mask s = 0; s < (Mask{1} << n); ++s) {
    if (member[s]) m.independent.push_back(s);
  }
  return m;
}

bool is_independent(const MatroidSpec& m, Mask s) {
  if (s & m.loops) return false;
  switch (m.type) {
    case MatroidType::uniform:
      return popcount(s) <= m.k;
    case MatroidType::partition: {
      std::vector<int> count(m.capacities.size(), 0);
      for (Mask rest = s; rest != 0; rest &= rest - 1) {
        int b = m.block_of[__builtin_ctzll(rest)];
        if (++count[b] > m.capacities[b]) return false;
      }
      return true;
    }
    case MatroidType::graphic:
      return graphic_rank(m.graph, s) == popcount(s);
    case MatroidType::explicit_list:
      return std::binary_search(m.independent.begin(), m.independent.end(), s);
  }
  return false;
}

bool is_independent(const MatroidSpec& m, const ActionSet& s) {
  return is_independent(m, to_mask(s));
}

int rank(const MatroidSpec& m, Mask s) {
  s &= ~m.loops;
  switch (m.type) {
    case MatroidType::uniform:
      return std::min(m.k, popcount(s));
    case MatroidType::partition: {
      std::vector<int> count(m.capacities.size(), 0);
      for (Mask rest = s; rest != 0; rest &= rest - 1) ++count[m.block_of[__builtin_ctzll(rest)]];
      int r = 0;
      for (std::size_t b = 0; b < count.size(); ++b) r += std::min(count[b], std::max(0, m.capacities[b]));
      return r;
    }
    case MatroidType::graphic:
      return graphic_rank(m.graph, s);
    case MatroidType::explicit_list: {
      int r = 0;
      for (Mask t : m.independent) {
        if ((t & ~s) == 0) r = std::max(r, popcount(t));
      }
      return r;
    }
  }
  return 0;
}

ActionSet greedy_max_weight(const MatroidSpec& m, const std::vector<Rational>& weights) {
  std::vector<int> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return weights[a] > weights[b]; });
  Mask s = 0;
  for (int i : order) {
    Mask candidate = s | (Mask{1} << i);
    if (is_independent(m, candidate)) s = candidate;
  }
  return from_mask(s);
}

MatroidSpec restrict_after_fixing(const MatroidSpec& m, Mask d) {
  if (!is_independent(m, d)) throw InvalidSetError("fixed set is dependent");
  MatroidSpec out = m;
  out.loops |= d;
  switch (m.type) {
    case MatroidType::uniform:
      out.k = m.k - popcount(d);
      break;
    case MatroidType::partition:
      for (Mask rest = d; rest != 0; rest &= rest - 1) --out.capacities[m.block_of[__builtin_ctzll(rest)]];
      break;
    case MatroidType::graphic: {
      UnionFind uf(m.graph.num_vertices);
      for (Mask rest = d; rest != 0; rest &= rest - 1) {
        const auto& e = m.graph.edges[__builtin_ctzll(rest)];
        uf.unite(e.first, e.second);
      }
      for (auto& e : out.graph.edges) e = {uf.find(e.first), uf.find(e.second)};
      break;
    }
    case MatroidType::explicit_list: {
      std::vector<Mask> sets;
      for (Mask t : m.independent) {
        if ((t & d) == d) sets.push_back(t & ~d);
      }
      std::sort(sets.begin(), sets.end());
      sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
      out.independent = std::move(sets);
      break;
    }
  }
  return out;
}

MatroidSpec without_elements(const MatroidSpec& m, Mask removed) {
  MatroidSpec out = m;
  out.loops |= removed;
  return out;
}

std::optional<Cut> matroid_separation(const MatroidSpec& m, const std::vector<Rational>& x) {
  std::vector<int> support;
  for (int i = 0; i < static_cast<int>(x.size()); ++i) {
    if (x[i] > 0) {
      if (has(m.loops, i)) return Cut{{i}, 0};
      support.push_back(i);
    }
  }
  switch (m.type) {
    case MatroidType::uniform: {
      Rational total = 0;
      for (int i : support) total += x[i];
      if (total > m.k) return Cut{support, m.k};
      return std::nullopt;
    }
    case MatroidType::partition: {
      std::vector<Rational> total(m.capacities.size(), 0);
      for (int i : support) total[m.block_of[i]] += x[i];
      for (std::size_t b = 0; b < total.size(); ++b) {
        if (total[b] > m.capacities[b]) {
          Cut cut;
          for (int i : support) {
            if (m.block_of[i] == static_cast<int>(b)) cut.elements.push_back(i);
          }
          cut.rhs = m.capacities[b];
          return cut;
        }
      }
      return std::nullopt;
    }
    case MatroidType::graphic:
    case MatroidType::explicit_list: {
      int s = static_cast<int>(support.size());
      if (s > kExhaustiveSeparationCap) throw ScaleError("matroid separation support above cap");
      Rational best = 0;
      Mask best_u = 0;
      int best_rank = 0;
      std::vector<Rational> partial(std::size_t{1} << s);
      partial[0] = 0;
      for (Mask u = 1; u < (Mask{1} << s); ++u) {
        int low = __builtin_ctzll(u);
        partial[u] = partial[u & (u - 1)] + x[support[low]];
        Mask ground = 0;
        for (Mask rest = u; rest != 0; rest &= rest - 1) ground |= Mask{1} << support[__builtin_ctzll(rest)];
        int r = rank(m, ground);
        Rational violation = partial[u] - r;
        if (violation > best) {
          best = violation;
          best_u = ground;
          best_rank = r;
        }
      }
      if (best_u == 0) return std::nullopt;
      return Cut{from_mask(best_u), best_rank};
    }
  }
  return std::nullopt;
}

bool is_matching(const Graph& g, Mask s) {
  std::vector<char> used(static_cast<std::size_t>(g.num_vertices), 0);
  for (Mask rest = s; rest != 0; rest &= rest - 1) {
    const auto& e = g.edges[__builtin_ctzll(rest)];
    if (used[e.first] || used[e.second]) return false;
    used[e.first] = used[e.second] = 1;
  }
  return true;
}

bool is_matching(const Graph& g, const ActionSet& s) { return is_matching(g, to_mask(s)); }

std::optional<Cut> matching_separation(const Graph& g, const std::vector<Rational>& x) {
  int edge_count = static_cast<int>(g.edges.size());
  std::vector<Rational> degree(static_cast<std::size_t>(g.num_vertices), 0);
  for (int e = 0; e < edge_count; ++e) {
    if (x[e] > 0) {
      degree[g.edges[e].first] += x[e];
      degree[g.edges[e].second] += x[e];
    }
  }
  for (int v = 0; v < g.num_vertices; ++v) {
    if (degree[v] > 1) {
      Cut cut;
      for (int e = 0; e < edge_count; ++e) {
        if (g.edges[e].first == v || g.edges[e].second == v) cut.elements.push_back(e);
      }
      cut.rhs = 1;
      return cut;
    }
  }
  if (g.num_vertices > kMatchingVertexCap) throw ScaleError("odd-set separation limited to 16 vertices");
  std::uint32_t touched = 0;
  for (int e = 0; e < edge_count; ++e) {
    if (x[e] > 0) touched |= (1U << g.edges[e].first) | (1U << g.edges[e].second);
  }
  Rational best = 0;
  std::uint32_t best_u = 0;
  for (std::uint32_t u = touched; u != 0; u = (u - 1) & touched) {
    int size = __builtin_popcount(u);
    if (size < 3 || size % 2 == 0) continue;
    Rational inside = 0;
    for (int e = 0; e < edge_count; ++e) {
      if (x[e] > 0 && ((u >> g.edges[e].first) & 1U) && ((u >> g.edges[e].second) & 1U)) inside += x[e];
    }
    Rational violation = inside - Rational((size - 1) / 2);
    if (violation > best) {
      best = violation;
      best_u = u;
    }
  }
  if (best_u == 0) return std::nullopt;
  Cut cut;
  for (int e = 0; e < edge_count; ++e) {
    if (((best_u >> g.edges[e].first) & 1U) && ((best_u >> g.edges[e].second) & 1U)) cut.elements.push_back(e);
  }
  cut.rhs = (__builtin_popcount(best_u) - 1) / 2;
  return cut;
}

}  // namespace contract

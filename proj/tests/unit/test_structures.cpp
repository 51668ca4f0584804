#include "contract/structures.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

#include <random>

using namespace contract;
using testing_support::Q;

namespace {

Graph triangle() { return Graph{3, {{0, 1}, {1, 2}, {0, 2}}}; }

Rational best_independent_weight(const MatroidSpec& m, const std::vector<Rational>& w) {
  int n = m.ground_size;
  Rational best = 0;
  for (Mask s = 0; s < (Mask{1} << n); ++s) {
    if (!is_independent(m, s)) continue;
    Rational v = 0;
    for (int i : from_mask(s)) v += w[i];
    if (v > best) best = v;
  }
  return best;
}

MatroidSpec random_matroid(std::mt19937_64& rng, int n, int variant) {
  switch (variant) {
    case 0: return uniform_matroid(n, static_cast<int>(rng() % (n + 1)));
    case 1: {
      std::vector<int> blocks(n);
      for (auto& b : blocks) b = static_cast<int>(rng() % 3);
      return partition_matroid(blocks, {static_cast<int>(rng() % 3), static_cast<int>(rng() % 3), 1});
    }
    default: {
      Graph g;
      g.num_vertices = 5;
      for (int i = 0; i < n; ++i) {
        int u = static_cast<int>(rng() % 5);
        int v = static_cast<int>((u + 1 + rng() % 4) % 5);
        g.edges.emplace_back(u, v);
      }
      return graphic_matroid(g);
    }
  }
}

}  // namespace

TEST_CASE("independence and rank examples") {
  MatroidSpec u = uniform_matroid(4, 2);
  CHECK(is_independent(u, Mask{0}));
  CHECK(rank(u, 0) == 0);
  CHECK_FALSE(is_independent(u, ActionSet{0, 1, 2}));
  CHECK(rank(u, to_mask({0, 1, 2})) == 2);
  MatroidSpec g = graphic_matroid(triangle());
  CHECK_FALSE(is_independent(g, ActionSet{0, 1, 2}));
  CHECK(rank(g, 7) == 2);
}

TEST_CASE("greedy examples") {
  CHECK(greedy_max_weight(uniform_matroid(3, 2), {Rational(5), Rational(3), Rational(2)}) == ActionSet{0, 1});
  CHECK(greedy_max_weight(uniform_matroid(3, 2), {Rational(1), Rational(1), Rational(1)}) == ActionSet{0, 1});
  CHECK(greedy_max_weight(partition_matroid({0, 1}, {1, 0}), {Rational(1), Rational(9)}) == ActionSet{0});
}

TEST_CASE("restrict_after_fixing examples") {
  MatroidSpec u = uniform_matroid(3, 2);
  MatroidSpec same = restrict_after_fixing(u, 0);
  for (Mask s = 0; s < 8; ++s) CHECK(is_independent(same, s) == is_independent(u, s));
  MatroidSpec one = restrict_after_fixing(u, 1);
  CHECK(is_independent(one, ActionSet{1}));
  CHECK_FALSE(is_independent(one, ActionSet{1, 2}));
  CHECK_FALSE(is_independent(one, ActionSet{0}));
  MatroidSpec g = restrict_after_fixing(graphic_matroid(triangle()), 1);
  CHECK(is_independent(g, ActionSet{1}));
  CHECK(is_independent(g, ActionSet{2}));
  CHECK_FALSE(is_independent(g, ActionSet{1, 2}));
  CHECK_THROWS(restrict_after_fixing(u, 7));
}

TEST_CASE("matroid separation examples") {
  auto cut = matroid_separation(uniform_matroid(2, 1), {Q(3, 4), Q(3, 4)});
  REQUIRE(cut);
  CHECK(cut->rhs == 1);
  CHECK(!matroid_separation(uniform_matroid(3, 2), {Rational(1), Rational(0), Rational(1)}));
  CHECK(!matroid_separation(partition_matroid({0, 1}, {1, 1}), {Rational(1), Q(1, 2)}));
}

TEST_CASE("matching separation and is_matching examples") {
  Graph k3 = triangle();
  CHECK(!matching_separation(k3, {Rational(1), Rational(0), Rational(0)}));
  auto cut = matching_separation(k3, {Q(1, 2), Q(1, 2), Q(1, 2)});
  REQUIRE(cut);
  CHECK(cut->elements.size() == 3);
  CHECK(cut->rhs == 1);
  CHECK(!matching_separation(Graph{2, {{0, 1}}}, {Rational(1)}));
  CHECK(is_matching(k3, ActionSet{}));
  CHECK_FALSE(is_matching(k3, ActionSet{0, 1}));
  Graph c4{4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}};
  CHECK(is_matching(c4, ActionSet{0, 2}));
  Graph big;
  big.num_vertices = kMatchingVertexCap + 1;
  big.edges = {{0, 1}};
  CHECK_THROWS(matching_separation(big, {Q(1, 2)}));
}

TEST_CASE("property: greedy equals brute-force max weight") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 4 + static_cast<int>(rng() % 7);
    MatroidSpec m = random_matroid(rng, n, trial % 3);
    std::vector<Rational> w(n);
    for (auto& x : w) x = Q(static_cast<long>(rng() % 12), 1 + static_cast<long>(rng() % 4));
    ActionSet g = greedy_max_weight(m, w);
    CHECK(is_independent(m, g));
    Rational v = 0;
    for (int i : g) v += w[i];
    CHECK(v == best_independent_weight(m, w));
  }
}

TEST_CASE("property: hereditary and exchange axioms") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 6;
    MatroidSpec m = random_matroid(rng, n, trial % 3);
    for (Mask a = 0; a < (Mask{1} << n); ++a) {
      if (!is_independent(m, a)) continue;
      for (int i : from_mask(a)) CHECK(is_independent(m, a & ~(Mask{1} << i)));
      Mask b = rng() & ((Mask{1} << n) - 1);
      if (!is_independent(m, b) || popcount(b) <= popcount(a)) continue;
      bool found = false;
      for (int i : from_mask(b & ~a)) found = found || is_independent(m, a | (Mask{1} << i));
      CHECK(found);
    }
  }
}

TEST_CASE("property: matroid separation accepts independent-set vertices and midpoints") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 6;
    MatroidSpec m = random_matroid(rng, n, trial % 3);
    std::vector<Mask> ind;
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
      if (is_independent(m, s)) ind.push_back(s);
    }
    Mask a = ind[rng() % ind.size()];
    Mask b = ind[rng() % ind.size()];
    std::vector<Rational> va(n), mid(n);
    for (int i = 0; i < n; ++i) {
      va[i] = has(a, i) ? 1 : 0;
      mid[i] = Q((has(a, i) ? 1 : 0) + (has(b, i) ? 1 : 0), 2);
    }
    CHECK(!matroid_separation(m, va));
    CHECK(!matroid_separation(m, mid));
    // Any dependent indicator must be cut.
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
      if (is_independent(m, s)) continue;
      std::vector<Rational> x(n);
      for (int i = 0; i < n; ++i) x[i] = has(s, i) ? 1 : 0;
      auto cut = matroid_separation(m, x);
      REQUIRE(cut);
      Rational lhs = 0;
      for (int i : cut->elements) lhs += x[i];
      CHECK(lhs > cut->rhs);
      break;
    }
  }
}

#pragma once

// Fixtures and independent oracles shared by the test binaries. Nothing here
// calls into the code under test for the property being checked.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "onefac/graph.hpp"
#include "onefac/group.hpp"

namespace onefac::testing {

inline SimpleGraph petersen() {
  std::vector<Edge> es;
  for (Vertex i = 0; i < 5; ++i) {
    es.push_back(make_edge(i, (i + 1) % 5));          // outer 5-cycle
    es.push_back(make_edge(5 + i, 5 + (i + 2) % 5));  // inner pentagram
    es.push_back(make_edge(i, 5 + i));                // spokes
  }
  return SimpleGraph::from_edges(10, es);
}

inline SimpleGraph complete_graph(std::size_t n) {
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) es.push_back(Edge{u, v});
  }
  return SimpleGraph::from_edges(n, es);
}

inline SimpleGraph cycle_graph(std::size_t n) {
  std::vector<Edge> es;
  for (Vertex i = 0; i < n; ++i) es.push_back(make_edge(i, static_cast<Vertex>((i + 1) % n)));
  return SimpleGraph::from_edges(n, es);
}

inline SimpleGraph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) es.push_back(Edge{u, v});
    }
  }
  return SimpleGraph::from_edges(n, es);
}

inline SimpleGraph relabel(const SimpleGraph& g, const std::vector<Vertex>& perm) {
  std::vector<Edge> es;
  for (const auto& e : g.edges) es.push_back(make_edge(perm[e.u], perm[e.v]));
  return SimpleGraph::from_edges(g.vertex_count, es);
}

// Brute-force Cayley edge set straight from the definition.
inline std::set<std::pair<Vertex, Vertex>> cayley_edges_oracle(const Group& g,
                                                               const std::vector<Element>& s) {
  std::set<std::pair<Vertex, Vertex>> out;
  for (auto x : g.elements()) {
    for (auto t : s) {
      for (auto c : {t, g.inv(t)}) {
        const Vertex a = x.id;
        const Vertex b = g.mul(c, x).id;
        out.emplace(std::min(a, b), std::max(a, b));
      }
    }
  }
  return out;
}

// Component label per vertex by flood fill.
inline std::vector<std::size_t> components_oracle(const SimpleGraph& g) {
  std::vector<std::vector<Vertex>> adj(g.vertex_count);
  for (const auto& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<std::size_t> comp(g.vertex_count, SIZE_MAX);
  std::size_t next = 0;
  for (Vertex s = 0; s < g.vertex_count; ++s) {
    if (comp[s] != SIZE_MAX) continue;
    std::vector<Vertex> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (auto w : adj[v]) {
        if (comp[w] == SIZE_MAX) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

// Every class is a perfect matching and the classes partition g's edges.
inline bool is_one_factorization(const SimpleGraph& g, const Factorization& f) {
  std::multiset<Edge> seen;
  for (const auto& cls : f.classes) {
    std::vector<int> hit(g.vertex_count, 0);
    for (auto e : cls) {
      if (e.u >= g.vertex_count || e.v >= g.vertex_count || e.u == e.v) return false;
      ++hit[e.u];
      ++hit[e.v];
      seen.insert(make_edge(e.u, e.v));
    }
    if (std::any_of(hit.begin(), hit.end(), [](int h) { return h != 1; })) return false;
  }
  return std::vector<Edge>(seen.begin(), seen.end()) == g.edges;
}

// Least k >= 1 with x^k = e, by repeated multiplication.
inline std::size_t order_oracle(const Group& g, Element x) {
  std::size_t k = 1;
  for (Element y = x; y != g.identity(); y = g.mul(y, x)) ++k;
  return k;
}

}  // namespace onefac::testing

#pragma once

// Edge-coloring machinery:
//   * vizing_color: Misra–Gries fan rotation, at most Δ+1 colors.
//   * mirror_color: one coloring transported along a graph isomorphism.
//   * complete_cross_edges / complete_coloring: extend a partial coloring to
//     a full palette coloring (greedy, then Kempe swaps, then a bounded
//     seeded ejection search).
//   * exact_one_factorize: backtracking oracle for small graphs.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "onefac/error.hpp"
#include "onefac/graph.hpp"

namespace onefac {

namespace detail {

// Partial proper coloring with O(1) lookup of the edge of a given color at a
// vertex.
class ColorState {
 public:
  static constexpr std::size_t kNone = SIZE_MAX;

  ColorState(const SimpleGraph& g, int palette)
      : graph_(g), palette_(palette),
        color_(g.edges.size(), EdgeColoring::kUncolored),
        at_(g.vertex_count * static_cast<std::size_t>(palette), kNone) {}

  int palette() const { return palette_; }
  int color(std::size_t e) const { return color_[e]; }
  const std::vector<int>& colors() const { return color_; }

  bool is_free(Vertex v, int c) const { return slot(v, c) == kNone; }

  int first_free(Vertex v) const {
    for (int c = 0; c < palette_; ++c) {
      if (is_free(v, c)) return c;
    }
    return -1;
  }

  std::vector<int> free_colors(Vertex v) const {
    std::vector<int> out;
    for (int c = 0; c < palette_; ++c) {
      if (is_free(v, c)) out.push_back(c);
    }
    return out;
  }

  std::size_t edge_at(Vertex v, int c) const { return slot(v, c); }

  Vertex other(std::size_t e, Vertex v) const {
    const Edge& ed = graph_.edges[e];
    return ed.u == v ? ed.v : ed.u;
  }

  void set(std::size_t e, int c) {
    const Edge ed = graph_.edges[e];
    const int old = color_[e];
    if (old >= 0) {
      slot(ed.u, old) = kNone;
      slot(ed.v, old) = kNone;
    }
    color_[e] = c;
    if (c >= 0) {
      if (c >= palette_ || slot(ed.u, c) != kNone || slot(ed.v, c) != kNone) {
        throw std::logic_error("color " + std::to_string(c) + " is not free on " + to_string(ed));
      }
      slot(ed.u, c) = e;
      slot(ed.v, c) = e;
    }
  }

  // Maximal path from v alternating colors `first`, `second`, ... .
  // Returns the edges and the far end.
  std::pair<std::vector<std::size_t>, Vertex> chain(Vertex v, int first, int second) const {
    std::vector<std::size_t> edges;
    Vertex cur = v;
    int col = first;
    while (true) {
      const std::size_t e = edge_at(cur, col);
      if (e == kNone) break;
      if (!edges.empty() && e == edges.front()) break;  // closed cycle
      edges.push_back(e);
      cur = other(e, cur);
      col = col == first ? second : first;
    }
    return {std::move(edges), cur};
  }

  void swap_colors(const std::vector<std::size_t>& edges, int a, int b) {
    std::vector<int> next;
    next.reserve(edges.size());
    for (auto e : edges) next.push_back(color_[e] == a ? b : a);
    for (auto e : edges) set(e, EdgeColoring::kUncolored);
    for (std::size_t i = 0; i < edges.size(); ++i) set(edges[i], next[i]);
  }

  EdgeColoring result() const { return EdgeColoring{color_, palette_}; }

 private:
  std::size_t& slot(Vertex v, int c) {
    return at_[static_cast<std::size_t>(v) * static_cast<std::size_t>(palette_) +
               static_cast<std::size_t>(c)];
  }
  std::size_t slot(Vertex v, int c) const {
    return at_[static_cast<std::size_t>(v) * static_cast<std::size_t>(palette_) +
               static_cast<std::size_t>(c)];
  }

  const SimpleGraph& graph_;
  int palette_;
  std::vector<int> color_;
  std::vector<std::size_t> at_;
};

}  // namespace detail

// Proper edge coloring with palette Δ+1, edges inserted in canonical order.
inline EdgeColoring vizing_color(const SimpleGraph& g) {
  const int palette = static_cast<int>(g.max_degree()) + 1;
  detail::ColorState st(g, palette);
  const auto adj = incidence(g);
  std::vector<char> in_fan(g.vertex_count);

  for (std::size_t e0 = 0; e0 < g.edges.size(); ++e0) {
    const Vertex x = g.edges[e0].u;
    std::vector<Vertex> fan{g.edges[e0].v};
    std::vector<std::size_t> fan_edges{e0};
    in_fan[fan.front()] = 1;
    for (bool extended = true; extended;) {
      extended = false;
      for (const auto& [nbr, eid] : adj[x]) {
        const int c = st.color(eid);
        if (in_fan[nbr] || c < 0 || !st.is_free(fan.back(), c)) continue;
        fan.push_back(nbr);
        fan_edges.push_back(eid);
        in_fan[nbr] = 1;
        extended = true;
      }
    }
    for (auto v : fan) in_fan[v] = 0;

    const int c = st.first_free(x);
    const int d = st.first_free(fan.back());
    if (c != d) {
      auto [path, end] = st.chain(x, d, c);
      st.swap_colors(path, c, d);
    }

    auto prefix_is_fan = [&](std::size_t w) {
      for (std::size_t j = 0; j < w; ++j) {
        const int col = st.color(fan_edges[j + 1]);
        if (col < 0 || !st.is_free(fan[j], col)) return false;
      }
      return true;
    };
    std::size_t w = fan.size();
    for (std::size_t i = 0; i < fan.size(); ++i) {
      if (st.is_free(fan[i], d) && prefix_is_fan(i)) {
        w = i;
        break;
      }
    }
    if (w == fan.size()) throw std::logic_error("fan rotation found no pivot");

    std::vector<int> shifted(w);
    for (std::size_t j = 0; j < w; ++j) shifted[j] = st.color(fan_edges[j + 1]);
    for (std::size_t j = 1; j <= w; ++j) st.set(fan_edges[j], EdgeColoring::kUncolored);
    for (std::size_t j = 0; j < w; ++j) st.set(fan_edges[j], shifted[j]);
    st.set(fan_edges[w], d);
  }
  return st.result();
}

// True iff iso is a bijection V(g1) → V(g2) mapping E(g1) onto E(g2).
inline bool is_isomorphism(const SimpleGraph& g1, std::span<const Vertex> iso,
                           const SimpleGraph& g2) {
  if (g1.vertex_count != g2.vertex_count || iso.size() != g1.vertex_count ||
      g1.edges.size() != g2.edges.size()) {
    return false;
  }
  std::vector<char> hit(g2.vertex_count);
  for (auto v : iso) {
    if (v >= g2.vertex_count || hit[v]) return false;
    hit[v] = 1;
  }
  for (const auto& e : g1.edges) {
    if (!g2.edge_index(make_edge(iso[e.u], iso[e.v]))) return false;
  }
  return true;
}

struct MirrorColoring {
  EdgeColoring first;
  EdgeColoring second;
};

// Colors g1 and copies the colors to g2 along iso: {x,y} and
// {iso(x), iso(y)} get the same color.
inline MirrorColoring mirror_color(const SimpleGraph& g1, std::span<const Vertex> iso,
                                   const SimpleGraph& g2) {
  if (!is_isomorphism(g1, iso, g2)) throw PreconditionError("mirror map is not an isomorphism");
  MirrorColoring out{vizing_color(g1), {}};
  out.second.palette_size = out.first.palette_size;
  out.second.color_of.assign(g2.edges.size(), EdgeColoring::kUncolored);
  for (std::size_t i = 0; i < g1.edges.size(); ++i) {
    const Edge e = g1.edges[i];
    out.second.color_of[*g2.edge_index(make_edge(iso[e.u], iso[e.v]))] = out.first.color_of[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Completion of partial colorings

enum class CompletionPath { kGreedy, kKempe, kSearch };

inline const char* to_string(CompletionPath p) {
  switch (p) {
    case CompletionPath::kGreedy: return "greedy";
    case CompletionPath::kKempe: return "kempe";
    case CompletionPath::kSearch: return "search";
  }
  return "unknown";
}

struct CompletionOptions {
  std::uint64_t search_steps = 200'000;
  std::uint64_t seed = 0x5eed'1fac'7012ULL;
};

struct CompletedColoring {
  EdgeColoring coloring;
  CompletionPath path = CompletionPath::kGreedy;
  std::size_t kempe_swaps = 0;
  std::uint64_t search_steps = 0;
};

// Colors the uncolored edges of `partial` (a proper partial coloring with
// palette `partial.palette_size`), visiting them in `order`. Throws
// CompletionFailedError when the search budget runs out.
inline CompletedColoring complete_coloring(const SimpleGraph& g, const EdgeColoring& partial,
                                           std::span<const std::size_t> order,
                                           const CompletionOptions& options = {}) {
  if (partial.color_of.size() != g.edges.size()) {
    throw PreconditionError("partial coloring does not match the graph");
  }
  detail::ColorState st(g, partial.palette_size);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const int c = partial.color_of[i];
    if (c == EdgeColoring::kUncolored) continue;
    if (c < 0 || c >= partial.palette_size) throw PreconditionError("color outside palette");
    try {
      st.set(i, c);
    } catch (const std::logic_error&) {
      throw PreconditionError("partial coloring is not proper at " + to_string(g.edges[i]));
    }
  }
  CompletedColoring out;

  auto common_free = [&](std::size_t e) {
    const Edge ed = g.edges[e];
    for (int c = 0; c < st.palette(); ++c) {
      if (st.is_free(ed.u, c) && st.is_free(ed.v, c)) return c;
    }
    return -1;
  };
  // Tries one Kempe swap that frees a common color for e, then colors e.
  auto try_kempe = [&](std::size_t e, bool flip) {
    if (int c = common_free(e); c >= 0) {
      st.set(e, c);
      return true;
    }
    Vertex u = g.edges[e].u;
    Vertex v = g.edges[e].v;
    if (flip) std::swap(u, v);
    for (int alpha : st.free_colors(u)) {
      for (int beta : st.free_colors(v)) {
        if (alpha == beta) continue;
        // alpha is missing at u; flip the alpha/beta chain through v.
        if (auto [path, end] = st.chain(v, alpha, beta); end != u) {
          st.swap_colors(path, alpha, beta);
          ++out.kempe_swaps;
          st.set(e, alpha);
          return true;
        }
        if (auto [path, end] = st.chain(u, beta, alpha); end != v) {
          st.swap_colors(path, alpha, beta);
          ++out.kempe_swaps;
          st.set(e, beta);
          return true;
        }
      }
    }
    return false;
  };

  std::vector<std::size_t> left;
  for (auto e : order) {
    if (st.color(e) != EdgeColoring::kUncolored) continue;
    if (int c = common_free(e); c >= 0) {
      st.set(e, c);
    } else {
      left.push_back(e);
    }
  }
  if (left.empty()) {
    out.coloring = st.result();
    out.path = CompletionPath::kGreedy;
    return out;
  }

  for (bool progress = true; progress && !left.empty();) {
    progress = false;
    std::vector<std::size_t> still;
    for (auto e : left) {
      if (try_kempe(e, false)) {
        progress = true;
      } else {
        still.push_back(e);
      }
    }
    left = std::move(still);
  }
  if (left.empty()) {
    out.coloring = st.result();
    out.path = CompletionPath::kKempe;
    return out;
  }

  std::mt19937_64 rng(options.seed);
  std::deque<std::size_t> queue(left.begin(), left.end());
  while (!queue.empty()) {
    if (out.search_steps >= options.search_steps) {
      throw CompletionFailedError("edge coloring completion exhausted " +
                                  std::to_string(options.search_steps) + " search steps");
    }
    ++out.search_steps;
    const std::size_t e = queue.front();
    queue.pop_front();
    const bool flip = (rng() & 1U) != 0;
    if (try_kempe(e, flip)) continue;
    // Eject: take a color missing at one end and uncolor its holder at the other.
    Vertex u = g.edges[e].u;
    Vertex v = g.edges[e].v;
    if (flip) std::swap(u, v);
    const auto free_u = st.free_colors(u);
    if (free_u.empty()) throw PreconditionError("vertex has no free color; palette too small");
    const int alpha = free_u[rng() % free_u.size()];
    const std::size_t victim = st.edge_at(v, alpha);
    st.set(victim, EdgeColoring::kUncolored);
    st.set(e, alpha);
    queue.push_back(victim);
  }
  out.coloring = st.result();
  out.path = CompletionPath::kSearch;
  return out;
}

// One colored half of a union graph, with its vertex map into the union.
struct HalfColoring {
  SimpleGraph graph;
  EdgeColoring coloring;
  std::vector<Vertex> to_union;
};

struct CrossCompletion {
  SimpleGraph graph;  // union of the halves and the cross edges
  EdgeColoring coloring;
  CompletionPath path = CompletionPath::kGreedy;
  std::size_t kempe_swaps = 0;
  std::uint64_t search_steps = 0;
};

// Colors the cross 1-factors joining the colored halves so that the union is
// properly colored with `palette` colors, i.e. every color class is a perfect
// matching. Cross factors are processed in the given order.
inline CrossCompletion complete_cross_edges(std::size_t vertex_count,
                                            std::span<const HalfColoring> halves,
                                            std::span<const std::vector<Edge>> cross_factors,
                                            int palette, const CompletionOptions& options = {}) {
  std::vector<Edge> edges;
  for (const auto& h : halves) {
    if (h.to_union.size() != h.graph.vertex_count) {
      throw PreconditionError("half vertex map has the wrong size");
    }
    for (const auto& e : h.graph.edges) edges.push_back(make_edge(h.to_union[e.u], h.to_union[e.v]));
  }
  for (const auto& f : cross_factors) {
    for (const auto& e : f) edges.push_back(make_edge(e.u, e.v));
  }
  CrossCompletion out;
  out.graph = SimpleGraph::from_edges(vertex_count, std::move(edges));
  auto valence = out.graph.regular_degree();
  if (!valence || static_cast<int>(*valence) != palette) {
    throw PreconditionError("union graph is not regular of valence equal to the palette");
  }
  EdgeColoring partial{std::vector<int>(out.graph.edges.size(), EdgeColoring::kUncolored), palette};
  for (const auto& h : halves) {
    if (h.coloring.palette_size > palette) throw PreconditionError("half palette exceeds total");
    for (std::size_t i = 0; i < h.graph.edges.size(); ++i) {
      const Edge e = h.graph.edges[i];
      partial.color_of[*out.graph.edge_index(make_edge(h.to_union[e.u], h.to_union[e.v]))] =
          h.coloring.color_of[i];
    }
  }
  std::vector<std::size_t> order;
  for (const auto& f : cross_factors) {
    for (const auto& e : f) order.push_back(*out.graph.edge_index(make_edge(e.u, e.v)));
  }
  auto done = complete_coloring(out.graph, partial, order, options);
  out.coloring = std::move(done.coloring);
  out.path = done.path;
  out.kempe_swaps = done.kempe_swaps;
  out.search_steps = done.search_steps;
  if (!verify_coloring(out.graph, out.coloring).ok()) {
    throw std::logic_error("completion produced an improper coloring");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact oracle

inline constexpr std::uint64_t kDefaultExactBudget = 1'000'000;

enum class ExactStatus { kFactorized, kNotFactorizable, kBudgetExceeded };

inline const char* to_string(ExactStatus s) {
  switch (s) {
    case ExactStatus::kFactorized: return "factorized";
    case ExactStatus::kNotFactorizable: return "not-factorizable";
    case ExactStatus::kBudgetExceeded: return "budget-exceeded";
  }
  return "unknown";
}

struct ExactResult {
  ExactStatus status = ExactStatus::kNotFactorizable;
  std::optional<Factorization> factorization;
  std::uint64_t nodes = 0;
};

namespace detail {

class ExactSolver {
 public:
  ExactSolver(const SimpleGraph& g, std::size_t valence, std::uint64_t budget)
      : g_(g), adj_(incidence(g)), valence_(valence), budget_(budget),
        cls_(g.edges.size(), -1), covered_(g.vertex_count, 0) {}

  struct BudgetHit {};

  bool run() { return start_class(0); }
  std::uint64_t nodes() const { return nodes_; }
  const std::vector<int>& classes() const { return cls_; }

 private:
  bool start_class(std::size_t k) {
    const std::size_t remaining = valence_ - k;
    if (remaining == 0) return true;
    if (remaining == 1) {
      for (auto& c : cls_) {
        if (c < 0) c = static_cast<int>(k);
      }
      return true;
    }
    if (remaining == 2) return split_two_factor(k);
    if (!components_even()) return false;
    auto saved = covered_;
    std::fill(covered_.begin(), covered_.end(), 0);
    const bool ok = extend(k, true);
    if (!ok) covered_ = std::move(saved);
    return ok;
  }

  bool extend(std::size_t k, bool first) {
    Vertex v = 0;
    while (v < g_.vertex_count && covered_[v]) ++v;
    if (v == g_.vertex_count) return start_class(k + 1);
    for (const auto& [w, e] : adj_[v]) {
      if (cls_[e] >= 0 || covered_[w]) continue;
      if (++nodes_ > budget_) throw BudgetHit{};
      cls_[e] = static_cast<int>(k);
      covered_[v] = covered_[w] = 1;
      if (feasible(v) && feasible(w) && extend(k, false)) return true;
      cls_[e] = -1;
      covered_[v] = covered_[w] = 0;
      // Classes are interchangeable: class k takes the least free edge at the
      // first vertex.
      if (first) break;
    }
    return false;
  }

  // Every uncovered neighbour of x must keep an available partner.
  bool feasible(Vertex x) const {
    for (const auto& [y, e] : adj_[x]) {
      if (cls_[e] >= 0 || covered_[y]) continue;
      bool has = false;
      for (const auto& [z, f] : adj_[y]) {
        if (cls_[f] < 0 && !covered_[z]) {
          has = true;
          break;
        }
      }
      if (!has) return false;
    }
    return true;
  }

  bool components_even() const {
    std::vector<char> seen(g_.vertex_count);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g_.vertex_count; ++s) {
      if (seen[s]) continue;
      std::size_t size = 0;
      stack.push_back(s);
      seen[s] = 1;
      while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        ++size;
        for (const auto& [y, e] : adj_[x]) {
          if (cls_[e] < 0 && !seen[y]) {
            seen[y] = 1;
            stack.push_back(y);
          }
        }
      }
      if (size % 2 != 0) return false;
    }
    return true;
  }

  // The unused edges form a 2-factor; it splits iff every cycle is even.
  bool split_two_factor(std::size_t k) {
    std::vector<char> seen(g_.vertex_count);
    std::vector<std::pair<std::size_t, int>> assigned;
    for (Vertex s = 0; s < g_.vertex_count; ++s) {
      if (seen[s]) continue;
      Vertex cur = s;
      std::size_t prev = SIZE_MAX;
      int side = 0;
      std::size_t length = 0;
      std::vector<std::size_t> cycle;
      do {
        seen[cur] = 1;
        std::size_t next_edge = SIZE_MAX;
        Vertex next = cur;
        for (const auto& [y, e] : adj_[cur]) {
          if (cls_[e] < 0 && e != prev) {
            next_edge = e;
            next = y;
            break;
          }
        }
        if (next_edge == SIZE_MAX) return false;
        cycle.push_back(next_edge);
        prev = next_edge;
        cur = next;
        ++length;
      } while (cur != s);
      if (length % 2 != 0) return false;
      for (auto e : cycle) {
        assigned.emplace_back(e, static_cast<int>(k) + side);
        side ^= 1;
      }
    }
    for (const auto& [e, c] : assigned) cls_[e] = c;
    return true;
  }

  const SimpleGraph& g_;
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj_;
  std::size_t valence_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<int> cls_;
  std::vector<char> covered_;
};

}  // namespace detail

// Decides whether g has a 1-factorization by backtracking, one color class at
// a time. kBudgetExceeded means the search gave up, not that none exists.
inline ExactResult exact_one_factorize(const SimpleGraph& g,
                                       std::uint64_t budget = kDefaultExactBudget) {
  ExactResult out;
  const auto valence = g.regular_degree();
  if (!valence) return out;
  if (*valence == 0) {
    out.status = ExactStatus::kFactorized;
    out.factorization = Factorization{};
    return out;
  }
  if (g.vertex_count % 2 != 0) return out;

  detail::ExactSolver solver(g, *valence, budget);
  try {
    const bool found = solver.run();
    out.nodes = solver.nodes();
    if (!found) return out;
  } catch (const detail::ExactSolver::BudgetHit&) {
    out.status = ExactStatus::kBudgetExceeded;
    out.nodes = solver.nodes();
    return out;
  }
  EdgeColoring c{solver.classes(), static_cast<int>(*valence)};
  out.status = ExactStatus::kFactorized;
  out.factorization = to_factorization(g, c);
  return out;
}

}  // namespace onefac

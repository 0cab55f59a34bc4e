#pragma once

// Simple undirected graphs, edge colorings, factorizations and the verifiers
// that check them.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "onefac/error.hpp"

namespace onefac {

using Vertex = std::uint32_t;

// Unordered pair stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  constexpr auto operator<=>(const Edge&) const = default;
};

inline Edge make_edge(Vertex a, Vertex b) {
  if (a == b) throw InvalidArgumentError("self-loop " + std::to_string(a));
  return a < b ? Edge{a, b} : Edge{b, a};
}

inline std::string to_string(const Edge& e) {
  return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
}

struct SimpleGraph {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;  // sorted, no duplicates

  static SimpleGraph from_edges(std::size_t n, std::vector<Edge> es) {
    for (auto& e : es) {
      e = make_edge(e.u, e.v);
      if (e.v >= n) throw InvalidArgumentError("edge endpoint out of range");
    }
    std::sort(es.begin(), es.end());
    if (std::adjacent_find(es.begin(), es.end()) != es.end()) {
      throw InvalidArgumentError("duplicate edge");
    }
    return SimpleGraph{n, std::move(es)};
  }

  std::optional<std::size_t> edge_index(Edge e) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e) return std::nullopt;
    return static_cast<std::size_t>(it - edges.begin());
  }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> d(vertex_count);
    for (const auto& e : edges) {
      ++d[e.u];
      ++d[e.v];
    }
    return d;
  }

  std::size_t max_degree() const {
    auto d = degrees();
    return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
  }

  // The common degree, if every vertex has the same one.
  std::optional<std::size_t> regular_degree() const {
    auto d = degrees();
    if (d.empty()) return 0;
    if (std::all_of(d.begin(), d.end(), [&](std::size_t x) { return x == d.front(); })) {
      return d.front();
    }
    return std::nullopt;
  }

  bool operator==(const SimpleGraph&) const = default;
};

// Incidence lists: for each vertex, (neighbour, edge index) sorted by neighbour.
inline std::vector<std::vector<std::pair<Vertex, std::size_t>>> incidence(const SimpleGraph& g) {
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(g.vertex_count);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    adj[g.edges[i].u].emplace_back(g.edges[i].v, i);
    adj[g.edges[i].v].emplace_back(g.edges[i].u, i);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

struct EdgeColoring {
  static constexpr int kUncolored = -1;

  std::vector<int> color_of;  // indexed like SimpleGraph::edges
  int palette_size = 0;

  std::size_t colors_used() const {
    std::vector<char> used(static_cast<std::size_t>(std::max(palette_size, 0)));
    std::size_t n = 0;
    for (int c : color_of) {
      if (c >= 0 && c < palette_size && !used[c]) {
        used[c] = 1;
        ++n;
      }
    }
    return n;
  }
};

// Color classes as edge lists. Canonical form: each class sorted, classes
// ordered by their least edge.
struct Factorization {
  std::vector<std::vector<Edge>> classes;

  void canonicalize() {
    for (auto& c : classes) std::sort(c.begin(), c.end());
    std::erase_if(classes, [](const auto& c) { return c.empty(); });
    std::sort(classes.begin(), classes.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
  }

  Factorization canonical() const {
    Factorization f = *this;
    f.canonicalize();
    return f;
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& c : classes) n += c.size();
    return n;
  }

  bool operator==(const Factorization&) const = default;
};

inline Factorization to_factorization(const SimpleGraph& g, const EdgeColoring& c) {
  Factorization f;
  f.classes.resize(static_cast<std::size_t>(std::max(c.palette_size, 0)));
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const int col = c.color_of.at(i);
    if (col < 0 || col >= c.palette_size) throw PreconditionError("coloring is not total");
    f.classes[static_cast<std::size_t>(col)].push_back(g.edges[i]);
  }
  f.canonicalize();
  return f;
}

inline EdgeColoring to_coloring(const SimpleGraph& g, const Factorization& f) {
  EdgeColoring c{std::vector<int>(g.edges.size(), EdgeColoring::kUncolored),
                 static_cast<int>(f.classes.size())};
  for (std::size_t k = 0; k < f.classes.size(); ++k) {
    for (const auto& e : f.classes[k]) {
      auto idx = g.edge_index(e);
      if (!idx) throw PreconditionError("factorization edge " + to_string(e) + " not in graph");
      c.color_of[*idx] = static_cast<int>(k);
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Verification reports

enum class ViolationKind {
  kImproper,          // two edges of one color share a vertex
  kUncolored,         // edge without a color
  kPaletteOverflow,   // color outside the palette / palette above bound
  kMissingEdge,       // graph edge in no class
  kDuplicateEdge,     // graph edge in more than one class
  kForeignEdge,       // class edge that is not a graph edge
  kUncoveredVertex,   // vertex untouched by a class
  kOvercoveredVertex, // vertex touched twice by a class
  kClassCount,        // number of classes differs from the valence
  kCertificate,       // certificate stage could not be replayed
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::kImproper: return "improper";
    case ViolationKind::kUncolored: return "uncolored";
    case ViolationKind::kPaletteOverflow: return "palette-overflow";
    case ViolationKind::kMissingEdge: return "missing-edge";
    case ViolationKind::kDuplicateEdge: return "duplicate-edge";
    case ViolationKind::kForeignEdge: return "foreign-edge";
    case ViolationKind::kUncoveredVertex: return "uncovered-vertex";
    case ViolationKind::kOvercoveredVertex: return "overcovered-vertex";
    case ViolationKind::kClassCount: return "class-count";
    case ViolationKind::kCertificate: return "certificate";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::string message;
  std::optional<Vertex> vertex;
  std::optional<Edge> edge;
};

struct VerifyReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationKind k) const {
    return static_cast<std::size_t>(std::count_if(
        violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; }));
  }
  void add(ViolationKind kind, std::string message, std::optional<Vertex> vertex = std::nullopt,
           std::optional<Edge> edge = std::nullopt) {
    violations.push_back(Violation{kind, std::move(message), vertex, edge});
  }
  void append(const VerifyReport& other, const std::string& prefix = {}) {
    for (auto v : other.violations) {
      v.message = prefix + v.message;
      violations.push_back(std::move(v));
    }
  }
};

// Properness, totality and (optionally) a palette bound.
inline VerifyReport verify_coloring(const SimpleGraph& g, const EdgeColoring& c,
                                    std::optional<int> palette_bound = std::nullopt) {
  VerifyReport r;
  if (c.color_of.size() != g.edges.size()) {
    r.add(ViolationKind::kUncolored, "coloring covers " + std::to_string(c.color_of.size()) +
                                         " edges, graph has " + std::to_string(g.edges.size()));
    return r;
  }
  if (palette_bound && c.palette_size > *palette_bound) {
    r.add(ViolationKind::kPaletteOverflow, "palette " + std::to_string(c.palette_size) +
                                               " exceeds bound " + std::to_string(*palette_bound));
  }
  // (vertex, color) -> first edge seen
  std::vector<std::vector<std::optional<std::size_t>>> at(
      g.vertex_count,
      std::vector<std::optional<std::size_t>>(static_cast<std::size_t>(std::max(c.palette_size, 0))));
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge e = g.edges[i];
    const int col = c.color_of[i];
    if (col == EdgeColoring::kUncolored) {
      r.add(ViolationKind::kUncolored, "edge " + to_string(e) + " is uncolored", std::nullopt, e);
      continue;
    }
    if (col < 0 || col >= c.palette_size) {
      r.add(ViolationKind::kPaletteOverflow,
            "edge " + to_string(e) + " has color " + std::to_string(col) + " outside the palette",
            std::nullopt, e);
      continue;
    }
    for (Vertex x : {e.u, e.v}) {
      auto& slot = at[x][static_cast<std::size_t>(col)];
      if (slot) {
        r.add(ViolationKind::kImproper,
              "edges " + to_string(g.edges[*slot]) + " and " + to_string(e) + " share vertex " +
                  std::to_string(x) + " and color " + std::to_string(col),
              x, e);
      } else {
        slot = i;
      }
    }
  }
  return r;
}

// Classes partition the edge set and each class is a perfect matching.
inline VerifyReport verify_factorization(const SimpleGraph& g, const Factorization& f,
                                         std::optional<std::size_t> expected_classes) {
  VerifyReport r;
  if (expected_classes && f.classes.size() != *expected_classes) {
    r.add(ViolationKind::kClassCount, "factorization has " + std::to_string(f.classes.size()) +
                                          " classes, expected " +
                                          std::to_string(*expected_classes));
  }
  std::vector<std::size_t> uses(g.edges.size());
  std::vector<std::size_t> cover(g.vertex_count);
  for (std::size_t k = 0; k < f.classes.size(); ++k) {
    std::fill(cover.begin(), cover.end(), 0);
    const std::string cls = "class " + std::to_string(k) + ": ";
    for (const auto& raw : f.classes[k]) {
      if (raw.u == raw.v || raw.u >= g.vertex_count || raw.v >= g.vertex_count) {
        r.add(ViolationKind::kForeignEdge, cls + "edge " + to_string(raw) + " is not a graph edge",
              std::nullopt, raw);
        continue;
      }
      const Edge e = make_edge(raw.u, raw.v);
      auto idx = g.edge_index(e);
      if (!idx) {
        r.add(ViolationKind::kForeignEdge, cls + "edge " + to_string(e) + " is not a graph edge",
              std::nullopt, e);
      } else {
        ++uses[*idx];
      }
      ++cover[e.u];
      ++cover[e.v];
    }
    for (Vertex x = 0; x < g.vertex_count; ++x) {
      if (cover[x] == 0) {
        r.add(ViolationKind::kUncoveredVertex, cls + "vertex " + std::to_string(x) + " uncovered",
              x);
      } else if (cover[x] > 1) {
        r.add(ViolationKind::kOvercoveredVertex,
              cls + "vertex " + std::to_string(x) + " covered " + std::to_string(cover[x]) +
                  " times",
              x);
      }
    }
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (uses[i] == 0) {
      r.add(ViolationKind::kMissingEdge, "edge " + to_string(g.edges[i]) + " in no class",
            std::nullopt, g.edges[i]);
    } else if (uses[i] > 1) {
      r.add(ViolationKind::kDuplicateEdge,
            "edge " + to_string(g.edges[i]) + " in " + std::to_string(uses[i]) + " classes",
            std::nullopt, g.edges[i]);
    }
  }
  return r;
}

}  // namespace onefac

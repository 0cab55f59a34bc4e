#pragma once

// Cayley graphs Γ(S:G): vertices are group elements, {g, s·g} is an edge for
// every s in S ∪ S⁻¹. Vertex ids coincide with element ids.

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "onefac/graph.hpp"
#include "onefac/group.hpp"

namespace onefac {

struct CayleyGraph {
  GeneratingSet generators;
  std::vector<Element> connection;  // S ∪ S⁻¹, sorted
  SimpleGraph graph;
  std::vector<Element> edge_label;  // edge {u<v}: v = label·u
  std::size_t valence = 0;

  std::size_t order() const { return graph.vertex_count; }
  const std::vector<Edge>& edges() const { return graph.edges; }
};

inline std::vector<Element> connection_set(const Group& g, const GeneratingSet& s) {
  std::vector<Element> out;
  out.reserve(2 * s.size());
  for (auto x : s.members) {
    if (x == g.identity()) throw PreconditionError("connection set would contain the identity");
    out.push_back(x);
    out.push_back(g.inv(x));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline CayleyGraph build_cayley(const Group& g, const GeneratingSet& s) {
  if (s.empty()) throw InvalidArgumentError("Cayley graph needs a non-empty generating set");
  CayleyGraph out;
  out.generators = s;
  out.connection = connection_set(g, s);
  out.valence = out.connection.size();
  std::vector<Edge> edges;
  edges.reserve(g.order() * out.valence / 2);
  for (auto x : g.elements()) {
    for (auto c : out.connection) {
      const Element y = g.mul(c, x);
      if (x < y) edges.push_back(Edge{x.id, y.id});
    }
  }
  out.graph = SimpleGraph::from_edges(g.order(), std::move(edges));
  out.edge_label.reserve(out.graph.edges.size());
  for (const auto& e : out.graph.edges) {
    out.edge_label.push_back(g.mul(Element{e.v}, g.inv(Element{e.u})));
  }
  return out;
}

// Connected components: the right cosets ⟨S⟩·t, in right_transversal order.
inline std::vector<std::vector<Element>> components_by_cosets(const Group& g,
                                                              const GeneratingSet& s) {
  const Subgroup sub = generated_subgroup(g, s.members);
  std::vector<std::vector<Element>> out;
  for (auto t : right_transversal(g, sub)) {
    std::vector<Element> comp;
    comp.reserve(sub.size());
    for (auto m : sub.members) comp.push_back(g.mul(m, t));
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

// Projection Γ(S:G) → Γ(SN/N : G/N) with edge fibers.
struct QuotientFibration {
  CayleyGraph source;
  Subgroup kernel;
  Quotient quotient;
  CayleyGraph target;
  // edge_fibers[i] lists the source edge indices lying over target edge i.
  std::vector<std::vector<std::size_t>> edge_fibers;
  // fold[k] for source generator k: sN is an involution of G/N while s² ≠ 1.
  std::vector<bool> fold;
  // N ∩ S = ∅ and st, st⁻¹ ∉ N whenever s ≠ t^{±1}.
  bool covering = false;

  Element project(Element x) const { return quotient.projection[x.id]; }
  std::size_t fold_count() const {
    return static_cast<std::size_t>(std::count(fold.begin(), fold.end(), true));
  }
};

inline bool covering_condition(const Group& g, const GeneratingSet& s, const Subgroup& n) {
  for (auto x : s.members) {
    if (n.contains(x)) return false;
  }
  for (auto a : s.members) {
    for (auto b : s.members) {
      if (a == b || a == g.inv(b)) continue;
      if (n.contains(g.mul(a, b)) || n.contains(g.mul(a, g.inv(b)))) return false;
    }
  }
  return true;
}

inline QuotientFibration quotient_graph(const Group& g, const CayleyGraph& gamma,
                                        const Subgroup& n) {
  if (!is_normal(g, n)) throw PreconditionError("kernel is not normal");
  for (auto x : gamma.generators.members) {
    if (n.contains(x)) throw PreconditionError("kernel meets the generating set");
  }
  QuotientFibration fib;
  fib.source = gamma;
  fib.kernel = n;
  fib.quotient = quotient_group(g, n);
  const Group& q = fib.quotient.group;

  std::vector<Element> images;
  for (auto x : gamma.generators.members) images.push_back(fib.project(x));
  fib.target = build_cayley(q, GeneratingSet::of(q, images));

  fib.edge_fibers.assign(fib.target.edges().size(), {});
  for (std::size_t i = 0; i < gamma.edges().size(); ++i) {
    const Edge e = gamma.edges()[i];
    const Element pu = fib.project(Element{e.u});
    const Element pv = fib.project(Element{e.v});
    if (pu == pv) throw PreconditionError("source edge collapses to a loop");
    auto idx = fib.target.graph.edge_index(make_edge(pu.id, pv.id));
    if (!idx) throw PreconditionError("source edge has no image edge");
    fib.edge_fibers[*idx].push_back(i);
  }
  for (auto s : gamma.generators.members) {
    const Element image = fib.project(s);
    const bool involution_image = image != q.identity() && q.mul(image, image) == q.identity();
    fib.fold.push_back(involution_image && g.mul(s, s) != g.identity());
  }
  fib.covering = covering_condition(g, gamma.generators, n);
  return fib;
}

}  // namespace onefac

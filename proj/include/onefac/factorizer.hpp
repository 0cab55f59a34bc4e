#pragma once

// Constructive 1-factorization of connected Cayley graphs on Q x H
// (Q a nontrivial 2-group, H of odd order), by induction on |S|:
//
//   |S| = 1                   even cycle, two alternating matchings
//   >= 2 even generators      factor Γ(S∖{a}:⟨S∖{a}⟩), copy over cosets,
//                             add the a-edges (1 or 2 new classes)
//   one even generator a      N = ⟨a₁²⟩ with a = a₁a₂; factor the
//                             Z₂ x H quotient directly, lift through N
//
// Every stage is verified before it is used and recorded in a certificate
// tree. Structural surprises degrade to the exact solver.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "onefac/cayley.hpp"
#include "onefac/edge_color.hpp"
#include "onefac/error.hpp"
#include "onefac/graph.hpp"
#include "onefac/group.hpp"

namespace onefac {

enum class Branch {
  kBaseCycle,
  kReplicate,
  kExtendEven,
  kLemma1Involution,
  kLemma1General,
  kQuotientLift,
  kFallbackExact,
};

inline const char* to_string(Branch b) {
  switch (b) {
    case Branch::kBaseCycle: return "base-cycle";
    case Branch::kReplicate: return "replicate";
    case Branch::kExtendEven: return "extend-even";
    case Branch::kLemma1Involution: return "lemma1-involution";
    case Branch::kLemma1General: return "lemma1-general";
    case Branch::kQuotientLift: return "quotient-lift";
    case Branch::kFallbackExact: return "fallback-exact";
  }
  return "unknown";
}

inline std::optional<Branch> branch_from_string(std::string_view s) {
  for (auto b : {Branch::kBaseCycle, Branch::kReplicate, Branch::kExtendEven,
                 Branch::kLemma1Involution, Branch::kLemma1General, Branch::kQuotientLift,
                 Branch::kFallbackExact}) {
    if (s == to_string(b)) return b;
  }
  return std::nullopt;
}

// How a stage's group is derived from its parent stage's group.
enum class StageContext {
  kSame,      // same group
  kSubgroup,  // subgroup_as_group(parent, context_elements)
  kQuotient,  // quotient_group(parent, context_elements)
};

inline const char* to_string(StageContext c) {
  switch (c) {
    case StageContext::kSame: return "same";
    case StageContext::kSubgroup: return "subgroup";
    case StageContext::kQuotient: return "quotient";
  }
  return "unknown";
}

struct StageRecord {
  Branch branch = Branch::kFallbackExact;
  StageContext context = StageContext::kSame;
  std::vector<Element> context_elements;  // in the parent's element ids
  std::size_t group_order = 0;
  std::vector<Element> generators;  // in this stage's element ids
  Factorization factorization;     // of Γ(generators : stage group)
  std::map<std::string, std::string> detail;
  bool verified = false;
  std::vector<StageRecord> children;
};

using Certificate = StageRecord;

struct PipelineStats {
  std::size_t extension_cycles = 0;
  std::size_t odd_extension_cycles = 0;
  std::size_t fold_classes = 0;
  std::size_t fallbacks = 0;
  std::size_t stages = 0;

  PipelineStats& operator+=(const PipelineStats& o) {
    extension_cycles += o.extension_cycles;
    odd_extension_cycles += o.odd_extension_cycles;
    fold_classes += o.fold_classes;
    fallbacks += o.fallbacks;
    stages += o.stages;
    return *this;
  }
};

struct FactorizeOutcome {
  Factorization factorization;
  Certificate certificate;
  PipelineStats stats;
};

struct FactorizeOptions {
  std::uint64_t exact_budget = kDefaultExactBudget;
  CompletionOptions completion;
  // When false, structural failures propagate instead of calling the exact solver.
  bool allow_fallback = true;
};

inline VerifyReport verify_factorization(const CayleyGraph& gamma, const Factorization& f) {
  return verify_factorization(gamma.graph, f, gamma.valence);
}

namespace detail {

inline std::string join_ids(const std::vector<Element>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(xs[i].id);
  }
  return s;
}

inline void require_valid(const SimpleGraph& g, const Factorization& f, std::size_t valence,
                          const char* stage) {
  const auto report = verify_factorization(g, f, valence);
  if (!report.ok()) {
    throw PreconditionError(std::string(stage) + " produced an invalid factorization: " +
                            report.violations.front().message);
  }
}

inline StageRecord make_stage(Branch branch, const Group& g, const GeneratingSet& s,
                              Factorization f) {
  StageRecord r;
  r.branch = branch;
  r.group_order = g.order();
  r.generators = s.members;
  f.canonicalize();
  r.factorization = std::move(f);
  r.verified = true;
  return r;
}

inline Factorization exact_or_throw(const SimpleGraph& g, std::uint64_t budget,
                                    std::uint64_t& nodes) {
  auto r = exact_one_factorize(g, budget);
  nodes = r.nodes;
  switch (r.status) {
    case ExactStatus::kFactorized: return std::move(*r.factorization);
    case ExactStatus::kBudgetExceeded:
      throw BudgetExceededError("exact solver exceeded its budget of " + std::to_string(budget) +
                                " nodes");
    case ExactStatus::kNotFactorizable: break;
  }
  throw NotFactorizableError("the graph has no 1-factorization");
}

inline FactorizeOutcome fallback_outcome(const Group& g, const GeneratingSet& s,
                                         const CayleyGraph& gamma, std::uint64_t budget,
                                         const std::string& reason) {
  std::uint64_t nodes = 0;
  Factorization f = exact_or_throw(gamma.graph, budget, nodes);
  require_valid(gamma.graph, f, gamma.valence, "exact solver");
  FactorizeOutcome out;
  out.certificate = make_stage(Branch::kFallbackExact, g, s, f);
  out.certificate.detail["reason"] = reason;
  out.certificate.detail["nodes"] = std::to_string(nodes);
  out.factorization = out.certificate.factorization;
  out.stats.fallbacks = 1;
  out.stats.stages = 1;
  return out;
}

inline Factorization map_to_parent(const Factorization& f, const SubgroupEmbedding& emb) {
  Factorization out;
  for (const auto& cls : f.classes) {
    auto& mapped = out.classes.emplace_back();
    for (const auto& e : cls) {
      mapped.push_back(make_edge(emb.lift(Element{e.u}).id, emb.lift(Element{e.v}).id));
    }
  }
  return out;
}

}  // namespace detail

// Γ({a}:G) for ⟨a⟩ = G of even order: one class for |G| = 2, otherwise the
// two alternating matchings of the cycle 1, a, a², ... .
inline Factorization factorize_cycle_base(const Group& g, Element a) {
  if (g.order() % 2 != 0) throw OutOfScopeError("cyclic base case needs even order");
  if (generated_subgroup(g, {a}).size() != g.order()) {
    throw PreconditionError("base generator does not generate the group");
  }
  if (g.order() == 2) return Factorization{{{make_edge(g.identity().id, a.id)}}};
  std::vector<Element> cycle;
  for (Element x = g.identity(); cycle.empty() || x != g.identity(); x = g.mul(a, x)) {
    cycle.push_back(x);
  }
  Factorization f{{{}, {}}};
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    f.classes[i % 2].push_back(make_edge(cycle[i].id, cycle[(i + 1) % cycle.size()].id));
  }
  return f;
}

// Copies a factorization of the component on g1 to every right coset g1·t.
// `sub` uses parent element ids.
inline Factorization replicate_over_cosets(const Group& g, const Subgroup& g1,
                                           const Factorization& sub) {
  const auto reps = right_transversal(g, g1);
  Factorization out;
  for (const auto& cls : sub.classes) {
    auto& copy = out.classes.emplace_back();
    copy.reserve(cls.size() * reps.size());
    for (const auto& e : cls) {
      if (!g1.contains(Element{e.u}) || !g1.contains(Element{e.v})) {
        throw PreconditionError("edge " + to_string(e) + " leaves the subgroup");
      }
    }
    for (auto t : reps) {
      for (const auto& e : cls) {
        copy.push_back(make_edge(g.mul(Element{e.u}, t).id, g.mul(Element{e.v}, t).id));
      }
    }
  }
  return out;
}

struct Extension {
  Factorization factorization;
  std::vector<std::size_t> cycle_lengths;  // cycles of the added 2-factor
  bool unchanged = false;
};

// Adds the edges {x, a·x} to a factorization of Γ(rest:G). An involution adds
// one perfect matching; otherwise the cycles x, ax, a²x, ... (length ord(a),
// even) split into two alternating matchings. Base classes keep their order.
inline Extension extend_by_even_generator(const Group& g, const GeneratingSet& rest,
                                          const Factorization& base, Element a) {
  const std::size_t ord = element_order(g, a);
  if (ord % 2 != 0) throw PreconditionError("extension generator has odd order");
  Extension out{base, {}, false};
  const auto conn = connection_set(g, rest);
  if (std::binary_search(conn.begin(), conn.end(), a)) {
    out.unchanged = true;
    return out;
  }
  if (ord == 2) {
    auto& cls = out.factorization.classes.emplace_back();
    for (auto x : g.elements()) {
      const Element y = g.mul(a, x);
      if (x < y) cls.push_back(Edge{x.id, y.id});
    }
    return out;
  }
  std::vector<Edge> first;
  std::vector<Edge> second;
  std::vector<char> seen(g.order());
  for (auto x : g.elements()) {
    if (seen[x.id]) continue;
    std::vector<Element> cycle;
    for (Element y = x; !seen[y.id]; y = g.mul(a, y)) {
      seen[y.id] = 1;
      cycle.push_back(y);
    }
    out.cycle_lengths.push_back(cycle.size());
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      auto& dst = i % 2 == 0 ? first : second;
      dst.push_back(make_edge(cycle[i].id, cycle[(i + 1) % cycle.size()].id));
    }
  }
  out.factorization.classes.push_back(std::move(first));
  out.factorization.classes.push_back(std::move(second));
  return out;
}

// Z₂ x H with exactly one generator a of even order. Γ(S∖{a}) restricted to
// H and to zH are colored alike with d+1 colors; the cross edges {x, a^{±1}x}
// then take the colors missing at their ends.
inline FactorizeOutcome lemma1_factorize(const Group& g, const GeneratingSet& s,
                                         const FactorizeOptions& options = {}) {
  std::vector<Element> odd;
  std::vector<Element> involutions;
  for (auto x : g.elements()) {
    const std::size_t k = element_order(g, x);
    if (k % 2 == 1) odd.push_back(x);
    if (k == 2) involutions.push_back(x);
  }
  const Subgroup h{odd};
  if (involutions.size() != 1 || 2 * odd.size() != g.order() || !is_subgroup(g, h)) {
    throw PreconditionError("group is not of the form Z2 x H with |H| odd");
  }
  const Element z = involutions.front();
  if (s.empty() || generated_subgroup(g, s.members).size() != g.order()) {
    throw PreconditionError("generating set does not generate the group");
  }
  std::vector<Element> evens;
  for (auto x : s.members) {
    if (element_order(g, x) % 2 == 0) evens.push_back(x);
  }
  if (evens.size() != 1) {
    throw PreconditionError("expected exactly one generator of even order, found " +
                            std::to_string(evens.size()));
  }
  const Element a = evens.front();
  const bool involution = g.mul(a, a) == g.identity();
  const GeneratingSet rest = s.without(a);
  const auto rest_conn = connection_set(g, rest);
  const CayleyGraph gamma = build_cayley(g, s);

  // Local ids: i <-> odd[i] in the first half, i <-> z·odd[i] in the second.
  constexpr Vertex kAbsent = UINT32_MAX;
  std::vector<Vertex> local(g.order(), kAbsent);
  for (std::size_t i = 0; i < odd.size(); ++i) local[odd[i].id] = static_cast<Vertex>(i);
  std::vector<Edge> half_edges;
  for (std::size_t i = 0; i < odd.size(); ++i) {
    for (auto c : rest_conn) {
      const Vertex j = local[g.mul(c, odd[i]).id];
      if (j == kAbsent) throw PreconditionError("S∖{a} leaves H");
      if (i < j) half_edges.push_back(Edge{static_cast<Vertex>(i), j});
    }
  }
  // z is central, so both halves carry the same local graph.
  const SimpleGraph half = SimpleGraph::from_edges(odd.size(), std::move(half_edges));

  // Preferred mirror: x ↦ a·x, which lines the cross matching {x, ax} up with
  // equal missing colors. It is a graph map only if a normalizes the
  // connection set; otherwise use the central involution x ↦ z·x.
  std::vector<Vertex> mirror(odd.size());
  for (std::size_t i = 0; i < odd.size(); ++i) {
    mirror[i] = local[g.mul(z, g.mul(a, odd[i])).id];
  }
  bool translated = is_isomorphism(half, mirror, half);
  if (!translated) {
    for (std::size_t i = 0; i < odd.size(); ++i) mirror[i] = static_cast<Vertex>(i);
  }
  const auto colors = mirror_color(half, mirror, half);

  std::vector<Vertex> first_map;
  std::vector<Vertex> second_map;
  for (auto x : odd) {
    first_map.push_back(x.id);
    second_map.push_back(g.mul(z, x).id);
  }
  const HalfColoring halves[] = {{half, colors.first, first_map},
                                 {half, colors.second, second_map}};
  std::vector<std::vector<Edge>> cross(involution ? 1 : 2);
  for (auto x : odd) {
    cross[0].push_back(make_edge(x.id, g.mul(a, x).id));
    if (!involution) cross[1].push_back(make_edge(x.id, g.mul(g.inv(a), x).id));
  }

  const Branch branch = involution ? Branch::kLemma1Involution : Branch::kLemma1General;
  FactorizeOutcome out;
  try {
    const auto done = complete_cross_edges(g.order(), halves, cross,
                                           static_cast<int>(gamma.valence), options.completion);
    if (done.graph != gamma.graph) throw PreconditionError("halves and cross edges miss Γ(S)");
    Factorization f = to_factorization(done.graph, done.coloring);
    detail::require_valid(gamma.graph, f, gamma.valence, "Z2 x H completion");
    out.certificate = detail::make_stage(branch, g, s, std::move(f));
    out.certificate.detail["completion"] = to_string(done.path);
    out.certificate.detail["kempe_swaps"] = std::to_string(done.kempe_swaps);
    out.certificate.detail["search_steps"] = std::to_string(done.search_steps);
  } catch (const CompletionFailedError& e) {
    if (!options.allow_fallback) throw;
    std::uint64_t nodes = 0;
    Factorization f = detail::exact_or_throw(gamma.graph, options.exact_budget, nodes);
    detail::require_valid(gamma.graph, f, gamma.valence, "exact solver");
    out.certificate = detail::make_stage(branch, g, s, std::move(f));
    out.certificate.detail["completion"] = "exact-fallback";
    out.certificate.detail["exact_nodes"] = std::to_string(nodes);
    out.stats.fallbacks = 1;
  }
  out.certificate.detail["a"] = std::to_string(a.id);
  out.certificate.detail["z"] = std::to_string(z.id);
  out.certificate.detail["mirror"] = translated ? "left-translation-by-a" : "central-involution";
  out.factorization = out.certificate.factorization;
  out.stats.stages = 1;
  return out;
}

struct Lift {
  Factorization factorization;
  std::size_t fold_classes = 0;
};

// Pulls a factorization of Γ(SN/N : G/N) back to Γ(S:G). Over a quotient edge
// {x̄ < ȳ} the source edges leave the fiber of x̄ through one label c (a
// perfect matching of the two fibers) or, for a fold, through c and c⁻¹. The
// c-part stays in the quotient edge's class; every c⁻¹-part of one fold label
// goes to one extra class, which is a perfect matching because the fold label
// is an involution of G/N.
inline Lift lift_from_quotient(const Group& g, const QuotientFibration& fib,
                               const Factorization& qfact) {
  if (!fib.covering) throw PreconditionError("covering condition does not hold");
  if (!verify_factorization(fib.target, qfact).ok()) {
    throw PreconditionError("quotient factorization does not verify");
  }
  const Group& q = fib.quotient.group;
  Lift out;
  out.factorization.classes.resize(qfact.classes.size());
  std::map<Element, std::vector<Edge>> fold_classes;
  for (std::size_t k = 0; k < qfact.classes.size(); ++k) {
    for (const auto& qe : qfact.classes[k]) {
      const Element from{qe.u};
      const Element label = q.mul(Element{qe.v}, q.inv(from));
      std::map<Element, std::vector<Edge>> by_label;
      for (auto idx : fib.edge_fibers[*fib.target.graph.edge_index(qe)]) {
        const Edge e = fib.source.edges()[idx];
        Element tail{e.u};
        Element head{e.v};
        if (fib.project(tail) != from) std::swap(tail, head);
        by_label[g.mul(head, g.inv(tail))].push_back(e);
      }
      if (by_label.size() > 2 || by_label.empty()) {
        throw PreconditionError("fiber over " + to_string(qe) + " has " +
                                std::to_string(by_label.size()) + " labels");
      }
      auto it = by_label.begin();
      auto& dst = out.factorization.classes[k];
      dst.insert(dst.end(), it->second.begin(), it->second.end());
      if (++it != by_label.end()) {
        auto& extra = fold_classes[label];
        extra.insert(extra.end(), it->second.begin(), it->second.end());
      }
    }
  }
  for (auto& [label, edges] : fold_classes) {
    out.factorization.classes.push_back(std::move(edges));
    ++out.fold_classes;
  }
  return out;
}

inline FactorizeOutcome factorize(const Group& g, const GeneratingSet& s,
                                  const FactorizeOptions& options = {});

namespace detail {

inline FactorizeOutcome factorize_structured(const Group& g, const GeneratingSet& s,
                                             const SylowSplit& sylow, const CayleyGraph& gamma,
                                             const FactorizeOptions& options) {
  FactorizeOutcome out;
  if (s.size() == 1) {
    Factorization f = factorize_cycle_base(g, s.members.front());
    require_valid(gamma.graph, f, gamma.valence, "base cycle");
    out.certificate = make_stage(Branch::kBaseCycle, g, s, std::move(f));
    out.stats.stages = 1;
    return out;
  }
  std::vector<Element> evens;
  for (auto x : s.members) {
    if (element_order(g, x) % 2 == 0) evens.push_back(x);
  }
  if (evens.empty()) throw PreconditionError("no generator of even order");

  if (evens.size() >= 2) {
    // Least even generator; another even one remains in S∖{a}.
    const Element a = evens.front();
    const GeneratingSet rest = s.without(a);
    const Subgroup sub = generated_subgroup(g, rest.members);
    const SubgroupEmbedding emb = subgroup_as_group(g, sub);
    std::vector<Element> local_rest;
    for (auto x : rest.members) local_rest.push_back(emb.local(x));
    FactorizeOutcome child =
        factorize(emb.group, GeneratingSet::of(emb.group, local_rest), options);
    out.stats += child.stats;
    child.certificate.context = StageContext::kSubgroup;
    child.certificate.context_elements = sub.members;

    Factorization copies = replicate_over_cosets(g, sub, map_to_parent(child.factorization, emb));
    const CayleyGraph gamma_rest = build_cayley(g, rest);
    require_valid(gamma_rest.graph, copies, gamma_rest.valence, "coset replication");
    StageRecord replicate = make_stage(Branch::kReplicate, g, rest, copies);
    replicate.detail["subgroup_order"] = std::to_string(sub.size());
    replicate.detail["cosets"] = std::to_string(g.order() / sub.size());
    replicate.children.push_back(std::move(child.certificate));

    Extension ext = extend_by_even_generator(g, rest, copies, a);
    out.stats.extension_cycles += ext.cycle_lengths.size();
    const auto odd_cycles = static_cast<std::size_t>(std::count_if(
        ext.cycle_lengths.begin(), ext.cycle_lengths.end(),
        [](std::size_t len) { return len % 2 != 0; }));
    out.stats.odd_extension_cycles += odd_cycles;
    if (odd_cycles != 0) throw PreconditionError("extension produced an odd cycle");
    require_valid(gamma.graph, ext.factorization, gamma.valence, "even extension");
    out.certificate = make_stage(Branch::kExtendEven, g, s, std::move(ext.factorization));
    out.certificate.detail["a"] = std::to_string(a.id);
    out.certificate.detail["cycles"] = std::to_string(ext.cycle_lengths.size());
    out.certificate.detail["cycle_length"] = ext.cycle_lengths.empty()
                                                 ? "0"
                                                 : std::to_string(ext.cycle_lengths.front());
    out.certificate.detail["unchanged"] = ext.unchanged ? "true" : "false";
    out.certificate.children.push_back(std::move(replicate));
    out.stats.stages += 2;
    return out;
  }

  // Exactly one even generator a = a₁a₂.
  const Element a = evens.front();
  const EvenOddSplit split = split_even_odd_parts(g, a);
  if (generated_subgroup(g, {split.two_part}) != sylow.two_part) {
    throw PreconditionError("the 2-part of the even generator does not generate Q");
  }
  const Subgroup kernel = generated_subgroup(g, {g.mul(split.two_part, split.two_part)});
  const QuotientFibration fib = quotient_graph(g, gamma, kernel);
  if (!fib.covering) throw PreconditionError("covering condition fails for N = <a1^2>");
  const Group& q = fib.quotient.group;
  if (q.order() != 2 * sylow.odd_part.size()) {
    throw PreconditionError("quotient order is not 2|H|");
  }
  FactorizeOutcome child = lemma1_factorize(q, fib.target.generators, options);
  out.stats += child.stats;
  child.certificate.context = StageContext::kQuotient;
  child.certificate.context_elements = kernel.members;

  Lift lift = lift_from_quotient(g, fib, child.factorization);
  out.stats.fold_classes += lift.fold_classes;
  require_valid(gamma.graph, lift.factorization, gamma.valence, "quotient lift");
  out.certificate = make_stage(Branch::kQuotientLift, g, s, std::move(lift.factorization));
  out.certificate.detail["a"] = std::to_string(a.id);
  out.certificate.detail["a1"] = std::to_string(split.two_part.id);
  out.certificate.detail["a2"] = std::to_string(split.odd_part.id);
  out.certificate.detail["kernel_order"] = std::to_string(kernel.size());
  out.certificate.detail["fold_classes"] = std::to_string(lift.fold_classes);
  out.certificate.children.push_back(std::move(child.certificate));
  out.stats.stages += 1;
  return out;
}

}  // namespace detail

// Main entry point: G must be Q x H (checked) and S must generate G.
inline FactorizeOutcome factorize(const Group& g, const GeneratingSet& s,
                                  const FactorizeOptions& options) {
  if (s.empty()) throw InvalidArgumentError("empty generating set");
  if (g.order() % 2 != 0) throw OutOfScopeError("group order is odd");
  const SylowSplit sylow = sylow_q2_decompose(g);
  if (generated_subgroup(g, s.members).size() != g.order()) {
    throw NotConnectedError("generating set spans a proper subgroup; the Cayley graph is "
                            "disconnected");
  }
  const CayleyGraph gamma = build_cayley(g, s);
  FactorizeOutcome out;
  try {
    out = detail::factorize_structured(g, s, sylow, gamma, options);
  } catch (const PreconditionError& e) {
    if (!options.allow_fallback) throw;
    out = detail::fallback_outcome(g, s, gamma, options.exact_budget, e.what());
  } catch (const CompletionFailedError& e) {
    if (!options.allow_fallback) throw;
    out = detail::fallback_outcome(g, s, gamma, options.exact_budget, e.what());
  }
  out.factorization = out.certificate.factorization;
  detail::require_valid(gamma.graph, out.factorization, gamma.valence, "pipeline");
  return out;
}

// Nilpotent groups of even order are the direct product of their Sylow
// subgroups, hence Q x H.
inline FactorizeOutcome factorize_nilpotent(const Group& g, const GeneratingSet& s,
                                            const FactorizeOptions& options = {}) {
  if (g.order() % 2 != 0) throw OutOfScopeError("group order is odd");
  try {
    sylow_q2_decompose(g);
  } catch (const NotDecomposableError& e) {
    throw OutOfScopeError(std::string("not a product of a 2-group and an odd group: ") +
                          e.what());
  }
  return factorize(g, s, options);
}

// Exact solver only; any group, connected or not.
inline FactorizeOutcome factorize_exact(const Group& g, const GeneratingSet& s,
                                        std::uint64_t budget = kDefaultExactBudget) {
  const CayleyGraph gamma = build_cayley(g, s);
  auto out = detail::fallback_outcome(g, s, gamma, budget, "forced");
  out.stats.fallbacks = 0;
  return out;
}

// Disconnected Γ(S:G): factor the component ⟨S⟩ and copy it over the cosets.
inline FactorizeOutcome factorize_components(const Group& g, const GeneratingSet& s,
                                             const FactorizeOptions& options = {}) {
  const Subgroup sub = generated_subgroup(g, s.members);
  if (sub.size() == g.order()) return factorize(g, s, options);
  const SubgroupEmbedding emb = subgroup_as_group(g, sub);
  std::vector<Element> local;
  for (auto x : s.members) local.push_back(emb.local(x));
  FactorizeOutcome child = factorize(emb.group, GeneratingSet::of(emb.group, local), options);
  child.certificate.context = StageContext::kSubgroup;
  child.certificate.context_elements = sub.members;
  const CayleyGraph gamma = build_cayley(g, s);
  Factorization copies =
      replicate_over_cosets(g, sub, detail::map_to_parent(child.factorization, emb));
  detail::require_valid(gamma.graph, copies, gamma.valence, "component replication");
  FactorizeOutcome out;
  out.stats = child.stats;
  out.certificate = detail::make_stage(Branch::kReplicate, g, s, std::move(copies));
  out.certificate.detail["subgroup_order"] = std::to_string(sub.size());
  out.certificate.detail["cosets"] = std::to_string(g.order() / sub.size());
  out.certificate.children.push_back(std::move(child.certificate));
  out.factorization = out.certificate.factorization;
  out.stats.stages += 1;
  return out;
}

namespace detail {

inline void replay_stage(const Group& g, const StageRecord& stage, const std::string& path,
                         VerifyReport& report) {
  const std::string where = path + "/" + to_string(stage.branch) + ": ";
  try {
    if (stage.group_order != g.order()) {
      report.add(ViolationKind::kCertificate, where + "group order " +
                                                  std::to_string(stage.group_order) +
                                                  " does not match " + std::to_string(g.order()));
      return;
    }
    if (!stage.verified) {
      report.add(ViolationKind::kCertificate, where + "stage is not marked verified");
    }
    const GeneratingSet s = GeneratingSet::of(g, stage.generators);
    const CayleyGraph gamma = build_cayley(g, s);
    report.append(verify_factorization(gamma, stage.factorization), where);
    for (const auto& child : stage.children) {
      const Subgroup ctx{child.context_elements};
      switch (child.context) {
        case StageContext::kSame:
          replay_stage(g, child, where, report);
          break;
        case StageContext::kSubgroup:
          replay_stage(subgroup_as_group(g, ctx).group, child, where, report);
          break;
        case StageContext::kQuotient:
          replay_stage(quotient_group(g, ctx).group, child, where, report);
          break;
      }
    }
  } catch (const Error& e) {
    report.add(ViolationKind::kCertificate, where + e.what());
  }
}

}  // namespace detail

// Re-derives every stage's group from the root group and re-verifies every
// stage's factorization.
inline VerifyReport replay_certificate(const Group& g, const Certificate& cert) {
  VerifyReport report;
  if (cert.context != StageContext::kSame) {
    report.add(ViolationKind::kCertificate, "root stage must use the input group");
    return report;
  }
  detail::replay_stage(g, cert, "", report);
  return report;
}

}  // namespace onefac

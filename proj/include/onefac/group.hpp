#pragma once

// Finite groups as explicit multiplication tables.
//
// Every group is a dense table over element ids 0..order-1. Tables are
// validated at construction (Latin square, two-sided identity, associativity
// for orders up to kAssociativityCheckLimit). All operations below are pure
// functions of immutable groups; ties are always broken by least element id.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "onefac/error.hpp"

namespace onefac {

inline constexpr std::size_t kDefaultMaxOrder = 512;
inline constexpr std::size_t kAssociativityCheckLimit = 512;

struct Element {
  std::uint32_t id = 0;

  constexpr auto operator<=>(const Element&) const = default;
};

class Group {
 public:
  Group() : Group(1, {0}) {}

  // `table` is row-major: table[x * order + y] is the id of x*y.
  Group(std::size_t order, std::vector<std::uint32_t> table,
        std::string name = {}, std::vector<std::string> labels = {},
        std::size_t max_order = kDefaultMaxOrder)
      : order_(order), table_(std::move(table)), name_(std::move(name)),
        labels_(std::move(labels)) {
    if (order_ == 0) throw InvalidArgumentError("group order must be positive");
    if (order_ > max_order) {
      throw SizeLimitError("group order " + std::to_string(order_) +
                           " exceeds cap " + std::to_string(max_order));
    }
    if (table_.size() != order_ * order_) {
      throw InvalidArgumentError("multiplication table has " +
                                 std::to_string(table_.size()) +
                                 " entries, expected " +
                                 std::to_string(order_ * order_));
    }
    validate();
    if (labels_.empty()) {
      labels_.reserve(order_);
      for (std::size_t i = 0; i < order_; ++i) labels_.push_back(std::to_string(i));
    } else if (labels_.size() != order_) {
      throw InvalidArgumentError("label count does not match group order");
    }
  }

  std::size_t order() const { return order_; }
  Element identity() const { return identity_; }
  const std::string& name() const { return name_; }

  Element mul(Element x, Element y) const {
    return Element{table_[static_cast<std::size_t>(x.id) * order_ + y.id]};
  }
  Element inv(Element x) const { return inverse_[x.id]; }

  Element pow(Element x, std::uint64_t k) const {
    Element result = identity_;
    Element base = x;
    while (k != 0) {
      if (k & 1U) result = mul(result, base);
      base = mul(base, base);
      k >>= 1U;
    }
    return result;
  }

  bool contains(Element x) const { return x.id < order_; }

  std::vector<Element> elements() const {
    std::vector<Element> out(order_);
    for (std::size_t i = 0; i < order_; ++i) out[i] = Element{static_cast<std::uint32_t>(i)};
    return out;
  }

  const std::string& label(Element x) const { return labels_[x.id]; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<Element> find_label(std::string_view text) const {
    for (std::size_t i = 0; i < order_; ++i) {
      if (labels_[i] == text) return Element{static_cast<std::uint32_t>(i)};
    }
    return std::nullopt;
  }

  const std::vector<std::uint32_t>& table() const { return table_; }

  Group relabeled(std::string name, std::vector<std::string> labels) const {
    Group copy = *this;
    copy.name_ = std::move(name);
    if (labels.size() != order_) throw InvalidArgumentError("label count does not match group order");
    copy.labels_ = std::move(labels);
    return copy;
  }

 private:
  void validate() {
    const std::size_t n = order_;
    for (auto v : table_) {
      if (v >= n) throw InvalidArgumentError("multiplication table entry out of range");
    }
    // Latin square: every row and every column is a permutation.
    std::vector<char> seen(n);
    for (std::size_t x = 0; x < n; ++x) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t y = 0; y < n; ++y) {
        auto v = table_[x * n + y];
        if (seen[v]) throw InvalidArgumentError("multiplication table row is not a permutation");
        seen[v] = 1;
      }
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t y = 0; y < n; ++y) {
        auto v = table_[y * n + x];
        if (seen[v]) throw InvalidArgumentError("multiplication table column is not a permutation");
        seen[v] = 1;
      }
    }
    std::optional<std::uint32_t> identity;
    for (std::size_t e = 0; e < n && !identity; ++e) {
      bool neutral = true;
      for (std::size_t x = 0; x < n && neutral; ++x) {
        neutral = table_[e * n + x] == x && table_[x * n + e] == x;
      }
      if (neutral) identity = static_cast<std::uint32_t>(e);
    }
    if (!identity) throw InvalidArgumentError("multiplication table has no identity");
    identity_ = Element{*identity};

    inverse_.assign(n, Element{});
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (table_[x * n + y] == identity_.id) {
          if (table_[y * n + x] != identity_.id) {
            throw InvalidArgumentError("left and right inverses differ");
          }
          inverse_[x] = Element{static_cast<std::uint32_t>(y)};
          break;
        }
      }
    }

    if (n <= kAssociativityCheckLimit) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          const std::size_t xy = table_[x * n + y];
          for (std::size_t z = 0; z < n; ++z) {
            if (table_[xy * n + z] != table_[x * n + table_[y * n + z]]) {
              throw InvalidArgumentError("multiplication table is not associative");
            }
          }
        }
      }
    }
  }

  std::size_t order_;
  std::vector<std::uint32_t> table_;
  std::string name_;
  std::vector<std::string> labels_;
  Element identity_{};
  std::vector<Element> inverse_;
};

// A subgroup stored as the sorted list of its members (ids in the parent).
struct Subgroup {
  std::vector<Element> members;

  std::size_t size() const { return members.size(); }
  bool contains(Element x) const {
    return std::binary_search(members.begin(), members.end(), x);
  }
  bool operator==(const Subgroup&) const = default;
};

// S: a set of non-identity elements, kept sorted and duplicate-free.
struct GeneratingSet {
  std::vector<Element> members;

  static GeneratingSet of(const Group& g, std::vector<Element> xs) {
    for (auto x : xs) {
      if (!g.contains(x)) throw InvalidArgumentError("generator out of range");
      if (x == g.identity()) throw InvalidArgumentError("generating set must exclude the identity");
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return GeneratingSet{std::move(xs)};
  }

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
  bool contains(Element x) const {
    return std::binary_search(members.begin(), members.end(), x);
  }
  GeneratingSet without(Element x) const {
    GeneratingSet out;
    for (auto m : members) {
      if (m != x) out.members.push_back(m);
    }
    return out;
  }
  bool operator==(const GeneratingSet&) const = default;
};

// ---------------------------------------------------------------------------
// Constructions

inline Group build_cyclic(std::size_t n, std::size_t max_order = kDefaultMaxOrder) {
  if (n == 0) throw InvalidArgumentError("cyclic group order must be positive");
  if (n > max_order) {
    throw SizeLimitError("Z" + std::to_string(n) + " exceeds cap " + std::to_string(max_order));
  }
  std::vector<std::uint32_t> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = static_cast<std::uint32_t>((i + j) % n);
  }
  return Group(n, std::move(table), "Z" + std::to_string(n), {}, max_order);
}

// Direct product of several groups with row-major (mixed radix) encoding:
// the tuple (x1, ..., xk) has id ((x1 * |G2| + x2) * |G3| + x3) ... .
// Labels are the flat tuples "(l1,...,lk)" of the factor labels.
inline Group direct_product(std::span<const Group> factors,
                            std::size_t max_order = kDefaultMaxOrder) {
  if (factors.empty()) return build_cyclic(1, max_order);
  if (factors.size() == 1) return factors.front();
  std::size_t order = 1;
  for (const auto& f : factors) {
    order *= f.order();
    if (order > max_order) {
      throw SizeLimitError("direct product order exceeds cap " + std::to_string(max_order));
    }
  }
  const std::size_t k = factors.size();
  auto decode = [&](std::size_t id) {
    std::vector<std::uint32_t> coords(k);
    for (std::size_t i = k; i-- > 0;) {
      coords[i] = static_cast<std::uint32_t>(id % factors[i].order());
      id /= factors[i].order();
    }
    return coords;
  };
  std::vector<std::vector<std::uint32_t>> coords(order);
  for (std::size_t id = 0; id < order; ++id) coords[id] = decode(id);

  std::vector<std::uint32_t> table(order * order);
  for (std::size_t x = 0; x < order; ++x) {
    for (std::size_t y = 0; y < order; ++y) {
      std::size_t id = 0;
      for (std::size_t i = 0; i < k; ++i) {
        id = id * factors[i].order() +
             factors[i].mul(Element{coords[x][i]}, Element{coords[y][i]}).id;
      }
      table[x * order + y] = static_cast<std::uint32_t>(id);
    }
  }
  std::vector<std::string> labels(order);
  for (std::size_t id = 0; id < order; ++id) {
    std::string s = "(";
    for (std::size_t i = 0; i < k; ++i) {
      if (i) s += ",";
      s += factors[i].label(Element{coords[id][i]});
    }
    labels[id] = s + ")";
  }
  std::string name;
  for (std::size_t i = 0; i < k; ++i) {
    if (i) name += "*";
    name += factors[i].name();
  }
  return Group(order, std::move(table), std::move(name), std::move(labels), max_order);
}

inline Group direct_product(const Group& g1, const Group& g2,
                            std::size_t max_order = kDefaultMaxOrder) {
  const Group pair[] = {g1, g2};
  return direct_product(std::span<const Group>(pair), max_order);
}

// Permutations act on {0..m-1}; perm[i] is the image of i.
using Permutation = std::vector<std::uint32_t>;

inline std::string cycle_notation(const Permutation& p) {
  std::string out;
  std::vector<char> done(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (done[i] || p[i] == i) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = 1;
      if (!first) out += " ";
      out += std::to_string(j);
      first = false;
      j = p[j];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

// Closure of the generators under composition, breadth first from the
// identity. Element ids follow discovery order; x*y is "apply y, then x".
inline Group from_permutations(const std::vector<Permutation>& generators,
                               std::string name = {},
                               std::size_t max_order = kDefaultMaxOrder) {
  std::size_t degree = generators.empty() ? 0 : generators.front().size();
  for (const auto& p : generators) {
    if (p.size() != degree) throw InvalidArgumentError("generators act on different ground sets");
    std::vector<char> hit(degree);
    for (auto v : p) {
      if (v >= degree || hit[v]) throw InvalidArgumentError("generator is not a bijection");
      hit[v] = 1;
    }
  }
  Permutation identity(degree);
  std::iota(identity.begin(), identity.end(), 0U);

  auto compose = [](const Permutation& outer, const Permutation& inner) {
    Permutation r(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i) r[i] = outer[inner[i]];
    return r;
  };

  std::vector<Permutation> elements{identity};
  std::map<Permutation, std::uint32_t> index{{identity, 0}};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& gen : generators) {
      Permutation next = compose(gen, elements[head]);
      if (index.emplace(next, static_cast<std::uint32_t>(elements.size())).second) {
        elements.push_back(std::move(next));
        if (elements.size() > max_order) {
          throw SizeLimitError("permutation closure exceeds cap " + std::to_string(max_order));
        }
      }
    }
  }
  const std::size_t n = elements.size();
  std::vector<std::uint32_t> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      table[x * n + y] = index.at(compose(elements[x], elements[y]));
    }
  }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& p : elements) labels.push_back(cycle_notation(p));
  return Group(n, std::move(table), std::move(name), std::move(labels), max_order);
}

// ---------------------------------------------------------------------------
// Element and subgroup queries

inline std::size_t element_order(const Group& g, Element x) {
  std::size_t k = 1;
  for (Element y = x; y != g.identity(); y = g.mul(x, y)) ++k;
  return k;
}

inline Subgroup generated_subgroup(const Group& g, std::span<const Element> xs) {
  std::vector<char> in(g.order());
  std::vector<Element> queue{g.identity()};
  in[g.identity().id] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto x : xs) {
      Element next = g.mul(x, queue[head]);
      if (!in[next.id]) {
        in[next.id] = 1;
        queue.push_back(next);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return Subgroup{std::move(queue)};
}

inline Subgroup generated_subgroup(const Group& g, std::initializer_list<Element> xs) {
  return generated_subgroup(g, std::span<const Element>(xs.begin(), xs.size()));
}

inline bool is_subgroup(const Group& g, const Subgroup& s) {
  if (!s.contains(g.identity())) return false;
  for (auto x : s.members) {
    for (auto y : s.members) {
      if (!s.contains(g.mul(x, y))) return false;
    }
  }
  return true;
}

inline bool is_normal(const Group& g, const Subgroup& n) {
  std::vector<char> in(g.order());
  for (auto m : n.members) in[m.id] = 1;
  for (auto x : g.elements()) {
    const Element xi = g.inv(x);
    for (auto m : n.members) {
      if (!in[g.mul(g.mul(x, m), xi).id]) return false;
    }
  }
  return true;
}

// G/N with cosets numbered by ascending least member; the least member is the
// coset's representative. projection[x] is the coset containing x.
struct Quotient {
  Group group;
  std::vector<Element> projection;
  std::vector<Element> representatives;
};

inline Quotient quotient_group(const Group& g, const Subgroup& n) {
  if (!is_subgroup(g, n)) throw PreconditionError("quotient by a set that is not a subgroup");
  if (!is_normal(g, n)) throw PreconditionError("quotient by a non-normal subgroup");
  constexpr std::uint32_t kUnset = UINT32_MAX;
  std::vector<std::uint32_t> coset(g.order(), kUnset);
  std::vector<Element> reps;
  for (auto x : g.elements()) {
    if (coset[x.id] != kUnset) continue;
    const auto c = static_cast<std::uint32_t>(reps.size());
    reps.push_back(x);
    for (auto m : n.members) coset[g.mul(x, m).id] = c;
  }
  const std::size_t q = reps.size();
  std::vector<std::uint32_t> table(q * q);
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) table[i * q + j] = coset[g.mul(reps[i], reps[j]).id];
  }
  std::vector<std::string> labels;
  labels.reserve(q);
  for (auto r : reps) labels.push_back("[" + g.label(r) + "]");
  Quotient out{Group(q, std::move(table), g.name() + "/N", std::move(labels), g.order()), {}, reps};
  out.projection.reserve(g.order());
  for (auto c : coset) out.projection.push_back(Element{c});
  for (auto x : g.elements()) {
    for (auto y : g.elements()) {
      if (out.projection[g.mul(x, y).id] !=
          out.group.mul(out.projection[x.id], out.projection[y.id])) {
        throw PreconditionError("quotient projection is not a homomorphism");
      }
    }
  }
  return out;
}

namespace detail {

inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  for (std::uint64_t v = 1; v < m; ++v) {
    if ((a % m) * v % m == 1) return v;
  }
  throw PreconditionError("no modular inverse");
}

}  // namespace detail

struct EvenOddSplit {
  Element two_part;  // order a power of two
  Element odd_part;  // odd order
};

// With ord(a) = 2^e * m (m odd): two_part = a^(m*m'), m*m' = 1 mod 2^e, and
// odd_part = a^(2^e*v), 2^e*v = 1 mod m. Both are powers of a, so they commute.
inline EvenOddSplit split_even_odd_parts(const Group& g, Element a) {
  const std::uint64_t ord = element_order(g, a);
  std::uint64_t two = 1;
  std::uint64_t odd = ord;
  while (odd % 2 == 0) {
    odd /= 2;
    two *= 2;
  }
  if (two == 1) return {g.identity(), a};
  const std::uint64_t m_inv = detail::inverse_mod(odd % two, two);
  const std::uint64_t v = detail::inverse_mod(two % odd, odd);
  return {g.pow(a, odd * m_inv), g.pow(a, two * v)};
}

inline bool is_power_of_two(std::size_t k) { return k != 0 && (k & (k - 1)) == 0; }

struct SylowSplit {
  Subgroup two_part;  // Q: elements of 2-power order
  Subgroup odd_part;  // H: elements of odd order
};

// Internal direct product G = Q x H with Q the 2-power-order elements and H
// the odd-order elements. Fails for groups that are not of this shape.
inline SylowSplit sylow_q2_decompose(const Group& g) {
  if (g.order() % 2 != 0) throw PreconditionError("group order is odd");
  SylowSplit out;
  for (auto x : g.elements()) {
    const std::size_t k = element_order(g, x);
    if (k % 2 == 1) out.odd_part.members.push_back(x);
    if (is_power_of_two(k)) out.two_part.members.push_back(x);
  }
  if (!is_subgroup(g, out.two_part)) {
    throw NotDecomposableError("elements of 2-power order do not form a subgroup");
  }
  if (!is_subgroup(g, out.odd_part)) {
    throw NotDecomposableError("elements of odd order do not form a subgroup");
  }
  if (out.two_part.size() * out.odd_part.size() != g.order()) {
    throw NotDecomposableError("|Q| * |H| differs from |G|");
  }
  std::vector<char> hit(g.order());
  for (auto q : out.two_part.members) {
    for (auto h : out.odd_part.members) {
      const Element qh = g.mul(q, h);
      if (qh != g.mul(h, q)) throw NotDecomposableError("Q and H do not commute");
      if (hit[qh.id]) throw NotDecomposableError("factorization q*h is not unique");
      hit[qh.id] = 1;
    }
  }
  return out;
}

// One representative per right coset S*t: the identity first, then the least
// element of every further coset in ascending order.
inline std::vector<Element> right_transversal(const Group& g, const Subgroup& s) {
  std::vector<char> covered(g.order());
  std::vector<Element> reps;
  auto take = [&](Element t) {
    reps.push_back(t);
    for (auto m : s.members) covered[g.mul(m, t).id] = 1;
  };
  take(g.identity());
  for (auto x : g.elements()) {
    if (!covered[x.id]) take(x);
  }
  return reps;
}

// A subgroup as a group in its own right: local id i is members[i].
struct SubgroupEmbedding {
  Group group;
  std::vector<Element> to_parent;
  std::vector<std::optional<Element>> from_parent;

  Element lift(Element local) const { return to_parent[local.id]; }
  Element local(Element parent) const {
    const auto& v = from_parent.at(parent.id);
    if (!v) throw PreconditionError("element is not in the subgroup");
    return *v;
  }
};

inline SubgroupEmbedding subgroup_as_group(const Group& g, const Subgroup& s) {
  if (!is_subgroup(g, s)) throw PreconditionError("not a subgroup");
  const std::size_t n = s.size();
  SubgroupEmbedding out{Group(), s.members, std::vector<std::optional<Element>>(g.order())};
  for (std::size_t i = 0; i < n; ++i) {
    out.from_parent[s.members[i].id] = Element{static_cast<std::uint32_t>(i)};
  }
  std::vector<std::uint32_t> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      table[i * n + j] = out.from_parent[g.mul(s.members[i], s.members[j]).id]->id;
    }
  }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (auto m : s.members) labels.push_back(g.label(m));
  out.group = Group(n, std::move(table), g.name() + "<sub>", std::move(labels), g.order());
  return out;
}

}  // namespace onefac

#pragma once

// Text front end for groups and generating sets.
//
//   spec  := atom ("*" atom)*
//   atom  := "Z" int | "Q8" | "D4" | "S3" | "V4"
//          | "perm:" cycles ("," cycles)*      e.g. perm:(0 1 2 3),(1 3)
//          | "table:" path
//
// A product of k atoms uses the row-major encoding of direct_product, which
// coincides with the left-associated binary product. Element labels of a
// product are "(l1,...,lk)".
//
// Table files hold the order n followed by n*n row-major entries; '#' starts
// a comment that runs to the end of the line.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "onefac/catalog.hpp"
#include "onefac/error.hpp"
#include "onefac/group.hpp"

namespace onefac {

struct GroupSpec {
  std::string text;
  Group group;
  std::vector<Group> factors;  // one per atom, in order
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::optional<std::uint64_t> parse_uint(std::string_view s) {
  if (s.empty() || s.size() > 18) return std::nullopt;
  std::uint64_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

// Splits on `sep` outside parentheses. Offsets of each piece are reported so
// parse errors can point into the original text.
inline std::vector<std::pair<std::string_view, std::size_t>> split_top(std::string_view s,
                                                                      char sep,
                                                                      std::size_t base) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') {
      if (--depth < 0) throw ParseError("unbalanced ')'", base + i);
    }
    if (s[i] == sep && depth == 0) {
      out.emplace_back(s.substr(start, i - start), base + start);
      start = i + 1;
    }
  }
  if (depth != 0) throw ParseError("unbalanced '('", base + s.size());
  out.emplace_back(s.substr(start), base + start);
  return out;
}

// "(0 1 2)(3 4)" -> list of cycles.
inline std::vector<std::vector<std::uint32_t>> parse_cycles(std::string_view s, std::size_t base) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip_space();
  if (i == s.size()) throw ParseError("expected a cycle", base + i);
  while (i < s.size()) {
    if (s[i] != '(') throw ParseError("expected '('", base + i);
    ++i;
    std::vector<std::uint32_t> cycle;
    for (;;) {
      while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
      if (i == s.size()) throw ParseError("unterminated cycle", base + i);
      if (s[i] == ')') {
        ++i;
        break;
      }
      const std::size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      auto v = parse_uint(s.substr(start, i - start));
      if (!v || *v > kDefaultMaxOrder * 64) throw ParseError("expected a point", base + start);
      cycle.push_back(static_cast<std::uint32_t>(*v));
    }
    cycles.push_back(std::move(cycle));
    skip_space();
  }
  return cycles;
}

inline Group parse_perm_atom(std::string_view body, std::size_t base, std::size_t max_order) {
  std::vector<std::vector<std::vector<std::uint32_t>>> gens;
  std::uint32_t degree = 0;
  for (auto [piece, at] : split_top(body, ',', base)) {
    auto cycles = parse_cycles(piece, at);
    for (const auto& c : cycles) {
      for (auto p : c) degree = std::max(degree, p + 1);
    }
    gens.push_back(std::move(cycles));
  }
  std::vector<Permutation> perms;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    Permutation p(degree);
    for (std::uint32_t i = 0; i < degree; ++i) p[i] = i;
    std::vector<char> moved(degree);
    for (const auto& c : gens[k]) {
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (moved[c[j]]) {
          throw ParseError("point " + std::to_string(c[j]) + " repeated in a generator", base);
        }
        moved[c[j]] = 1;
        p[c[j]] = c[(j + 1) % c.size()];
      }
    }
    perms.push_back(std::move(p));
  }
  return from_permutations(perms, "perm:" + std::string(body), max_order);
}

}  // namespace detail

inline Group parse_table_text(std::string_view text, std::string name = "table",
                              std::size_t max_order = kDefaultMaxOrder) {
  std::string cleaned;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      cleaned += '\n';
      continue;
    }
    cleaned += text[i];
  }
  std::istringstream in(cleaned);
  long long order = 0;
  if (!(in >> order) || order <= 0) throw InvalidArgumentError("table: missing or invalid order");
  if (static_cast<std::size_t>(order) > max_order) {
    throw SizeLimitError("table order " + std::to_string(order) + " exceeds cap " +
                         std::to_string(max_order));
  }
  const auto n = static_cast<std::size_t>(order);
  std::vector<std::uint32_t> table(n * n);
  for (auto& entry : table) {
    long long v = 0;
    if (!(in >> v)) throw InvalidArgumentError("table: expected " + std::to_string(n * n) + " entries");
    if (v < 0 || v >= order) throw InvalidArgumentError("table: entry " + std::to_string(v) + " out of range");
    entry = static_cast<std::uint32_t>(v);
  }
  std::string extra;
  if (in >> extra) throw InvalidArgumentError("table: trailing content '" + extra + "'");
  return Group(n, std::move(table), std::move(name), {}, max_order);
}

inline Group load_table_file(const std::string& path, std::size_t max_order = kDefaultMaxOrder) {
  std::ifstream in(path);
  if (!in) throw InvalidArgumentError("cannot open table file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_table_text(buf.str(), "table:" + path, max_order);
}

inline GroupSpec parse_group_spec(std::string_view text, std::size_t max_order = kDefaultMaxOrder) {
  GroupSpec out;
  out.text = std::string(detail::trim(text));
  if (out.text.empty()) throw ParseError("empty group spec", 0);
  for (auto [raw, at] : detail::split_top(out.text, '*', 0)) {
    const auto atom = detail::trim(raw);
    const std::size_t pos = at + static_cast<std::size_t>(atom.data() - raw.data());
    if (atom.empty()) throw ParseError("empty factor", pos);
    if (atom.starts_with("perm:")) {
      out.factors.push_back(detail::parse_perm_atom(atom.substr(5), pos + 5, max_order));
    } else if (atom.starts_with("table:")) {
      const auto path = detail::trim(atom.substr(6));
      if (path.empty()) throw ParseError("missing table path", pos + 6);
      out.factors.push_back(load_table_file(std::string(path), max_order));
    } else if (atom.front() == 'Z') {
      auto n = detail::parse_uint(atom.substr(1));
      if (!n) throw ParseError("expected an integer after 'Z'", pos + 1);
      if (*n == 0) throw InvalidArgumentError("Z0 is not a group");
      if (*n > max_order) {
        throw SizeLimitError("Z" + std::to_string(*n) + " exceeds cap " + std::to_string(max_order));
      }
      out.factors.push_back(build_cyclic(static_cast<std::size_t>(*n), max_order));
    } else if (auto g = catalog::named(atom)) {
      out.factors.push_back(std::move(*g));
    } else {
      throw ParseError("unknown group '" + std::string(atom) + "'", pos);
    }
  }
  out.group = direct_product(std::span<const Group>(out.factors), max_order);
  if (out.factors.size() > 1) out.group = out.group.relabeled(out.text, out.group.labels());
  return out;
}

namespace detail {

inline std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

// Integer id, exact label, or label with whitespace ignored (if unique).
inline std::optional<Element> resolve_in(const Group& g, std::string_view token) {
  if (auto v = parse_uint(token)) {
    if (*v < g.order()) return Element{static_cast<std::uint32_t>(*v)};
    return std::nullopt;
  }
  if (auto e = g.find_label(token)) return e;
  const std::string key = strip_spaces(token);
  std::optional<Element> hit;
  for (auto x : g.elements()) {
    if (strip_spaces(g.label(x)) == key) {
      if (hit) return std::nullopt;
      hit = x;
    }
  }
  return hit;
}

}  // namespace detail

// Generators as a comma separated list. Each token is an element id, an
// element label, or a coordinate tuple "(c1,...,ck)" whose components are
// ids or labels in the corresponding factor.
inline std::vector<Element> parse_generators(const GroupSpec& spec, std::string_view text) {
  std::vector<Element> out;
  const auto body = detail::trim(text);
  if (body.empty()) return out;
  for (auto [raw, at] : detail::split_top(body, ',', static_cast<std::size_t>(body.data() - text.data()))) {
    const auto token = detail::trim(raw);
    if (token.empty()) throw ParseError("empty generator", at);
    if (auto e = detail::resolve_in(spec.group, token)) {
      out.push_back(*e);
      continue;
    }
    if (token.front() != '(' || token.back() != ')' || spec.factors.size() < 2) {
      throw ParseError("unknown element '" + std::string(token) + "'", at);
    }
    auto parts = detail::split_top(token.substr(1, token.size() - 2), ',', at + 1);
    if (parts.size() != spec.factors.size()) {
      throw ParseError("tuple has " + std::to_string(parts.size()) + " coordinates, group has " +
                           std::to_string(spec.factors.size()) + " factors",
                       at);
    }
    std::uint32_t id = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      auto c = detail::resolve_in(spec.factors[i], detail::trim(parts[i].first));
      if (!c) {
        throw ParseError("unknown coordinate '" + std::string(detail::trim(parts[i].first)) + "'",
                         parts[i].second);
      }
      id = id * static_cast<std::uint32_t>(spec.factors[i].order()) + c->id;
    }
    out.push_back(Element{id});
  }
  return out;
}

// The Q x H groups exercised by the bench harness and the acceptance suite.
inline std::vector<std::string> nilpotent_catalog(std::size_t max_order = 72) {
  const std::vector<std::pair<std::string, std::size_t>> qs = {
      {"Z2", 2}, {"Z4", 4}, {"Z8", 8}, {"Z2*Z2", 4}, {"Z2*Z4", 8}, {"D4", 8}, {"Q8", 8}};
  const std::vector<std::pair<std::string, std::size_t>> hs = {
      {"Z1", 1}, {"Z3", 3}, {"Z5", 5}, {"Z7", 7}, {"Z9", 9}, {"Z3*Z3", 9}};
  std::vector<std::string> out;
  for (const auto& [q, qn] : qs) {
    for (const auto& [h, hn] : hs) {
      if (qn * hn <= max_order) out.push_back(q + "*" + h);
    }
  }
  return out;
}

}  // namespace onefac

#pragma once

// JSON documents ("cayley-factor/1") for graphs, factorizations and
// certificates, plus DOT export.
//
// Graph document:
//   {"version", "kind": "graph", "group": {"spec", "order"}, "generators",
//    "connection_set", "valence", "vertex_count", "edges": [[u, v], ...]}
// Factorization document:
//   {"version", "kind": "factorization", "group", "generators",
//    "connection_set", "valence", "vertex_count",
//    "classes": [[[u, v], ...], ...], "certificate"}

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "onefac/cayley.hpp"
#include "onefac/error.hpp"
#include "onefac/factorizer.hpp"
#include "onefac/graph.hpp"
#include "onefac/group.hpp"

namespace onefac {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "cayley-factor/1";

namespace detail {

inline json ids_to_json(const std::vector<Element>& xs) {
  json out = json::array();
  for (auto x : xs) out.push_back(x.id);
  return out;
}

inline json edges_to_json(const std::vector<Edge>& es) {
  json out = json::array();
  for (const auto& e : es) out.push_back(json::array({e.u, e.v}));
  return out;
}

template <class T>
T get_field(const json& doc, const char* key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw SchemaError(where + ": missing field '" + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw SchemaError(where + ": field '" + key + "' has the wrong type");
  }
}

inline std::vector<Element> ids_from_json(const json& doc, const char* key,
                                          const std::string& where) {
  std::vector<Element> out;
  for (auto v : get_field<std::vector<std::uint32_t>>(doc, key, where)) out.push_back(Element{v});
  return out;
}

inline std::vector<Edge> edges_from_json(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw SchemaError(where + ": expected an edge list");
  std::vector<Edge> out;
  out.reserve(arr.size());
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() ||
        !e[1].is_number_unsigned()) {
      throw SchemaError(where + ": edges must be pairs of non-negative integers");
    }
    // Not normalized: the verifier reports self-loops and out-of-range ends.
    out.push_back(Edge{e[0].get<Vertex>(), e[1].get<Vertex>()});
  }
  return out;
}

inline void check_header(const json& doc, const std::string& kind) {
  if (!doc.is_object()) throw SchemaError("document is not a JSON object");
  const auto version = get_field<std::string>(doc, "version", "document");
  if (version != kSchemaVersion) throw SchemaError("unsupported version '" + version + "'");
  const auto k = get_field<std::string>(doc, "kind", "document");
  if (k != kind) throw SchemaError("expected a " + kind + " document, got '" + k + "'");
}

inline json header(const char* kind, const std::string& spec, const CayleyGraph& gamma) {
  json doc;
  doc["version"] = kSchemaVersion;
  doc["kind"] = kind;
  doc["group"] = {{"spec", spec}, {"order", gamma.order()}};
  doc["generators"] = ids_to_json(gamma.generators.members);
  doc["connection_set"] = ids_to_json(gamma.connection);
  doc["valence"] = gamma.valence;
  doc["vertex_count"] = gamma.order();
  return doc;
}

}  // namespace detail

inline json certificate_to_json(const Certificate& c) {
  json out;
  out["branch"] = to_string(c.branch);
  out["context"] = to_string(c.context);
  out["context_elements"] = detail::ids_to_json(c.context_elements);
  out["group_order"] = c.group_order;
  out["generators"] = detail::ids_to_json(c.generators);
  json classes = json::array();
  for (const auto& cls : c.factorization.classes) classes.push_back(detail::edges_to_json(cls));
  out["classes"] = std::move(classes);
  out["detail"] = c.detail;
  out["verified"] = c.verified;
  json children = json::array();
  for (const auto& child : c.children) children.push_back(certificate_to_json(child));
  out["children"] = std::move(children);
  return out;
}

inline Certificate certificate_from_json(const json& doc, const std::string& where = "certificate") {
  Certificate c;
  const auto branch = detail::get_field<std::string>(doc, "branch", where);
  auto b = branch_from_string(branch);
  if (!b) throw SchemaError(where + ": unknown branch '" + branch + "'");
  c.branch = *b;
  const auto context = detail::get_field<std::string>(doc, "context", where);
  if (context == "same") {
    c.context = StageContext::kSame;
  } else if (context == "subgroup") {
    c.context = StageContext::kSubgroup;
  } else if (context == "quotient") {
    c.context = StageContext::kQuotient;
  } else {
    throw SchemaError(where + ": unknown context '" + context + "'");
  }
  c.context_elements = detail::ids_from_json(doc, "context_elements", where);
  c.group_order = detail::get_field<std::size_t>(doc, "group_order", where);
  c.generators = detail::ids_from_json(doc, "generators", where);
  if (!doc.contains("classes") || !doc["classes"].is_array()) {
    throw SchemaError(where + ": classes must be an array");
  }
  const auto& classes = doc["classes"];
  for (const auto& cls : classes) {
    c.factorization.classes.push_back(detail::edges_from_json(cls, where));
  }
  c.detail = detail::get_field<std::map<std::string, std::string>>(doc, "detail", where);
  c.verified = detail::get_field<bool>(doc, "verified", where);
  const auto& children = doc.contains("children") ? doc.at("children") : json::array();
  if (!children.is_array()) throw SchemaError(where + ": children must be an array");
  for (std::size_t i = 0; i < children.size(); ++i) {
    c.children.push_back(certificate_from_json(children[i], where + "/" + std::to_string(i)));
  }
  return c;
}

inline json graph_to_json(const std::string& spec, const CayleyGraph& gamma) {
  json doc = detail::header("graph", spec, gamma);
  doc["edges"] = detail::edges_to_json(gamma.edges());
  return doc;
}

inline json factorization_to_json(const std::string& spec, const CayleyGraph& gamma,
                                  const Factorization& f,
                                  const std::optional<Certificate>& cert = std::nullopt) {
  json doc = detail::header("factorization", spec, gamma);
  json classes = json::array();
  for (const auto& cls : f.classes) classes.push_back(detail::edges_to_json(cls));
  doc["classes"] = std::move(classes);
  if (cert) doc["certificate"] = certificate_to_json(*cert);
  return doc;
}

struct GraphDocument {
  std::optional<std::string> spec;
  std::vector<Element> generators;
  std::size_t valence = 0;
  SimpleGraph graph;
};

inline GraphDocument graph_from_json(const json& doc) {
  detail::check_header(doc, "graph");
  GraphDocument out;
  if (doc.contains("group") && doc["group"].contains("spec")) {
    out.spec = detail::get_field<std::string>(doc["group"], "spec", "group");
  }
  if (doc.contains("generators")) out.generators = detail::ids_from_json(doc, "generators", "graph");
  out.valence = detail::get_field<std::size_t>(doc, "valence", "graph");
  const auto n = detail::get_field<std::size_t>(doc, "vertex_count", "graph");
  try {
    out.graph = SimpleGraph::from_edges(n, detail::edges_from_json(doc.at("edges"), "graph"));
  } catch (const InvalidArgumentError& e) {
    throw SchemaError(std::string("graph: ") + e.what());
  } catch (const json::exception&) {
    throw SchemaError("graph: missing field 'edges'");
  }
  return out;
}

struct FactorizationDocument {
  std::optional<std::string> spec;
  std::vector<Element> generators;
  std::size_t valence = 0;
  std::size_t vertex_count = 0;
  Factorization factorization;
  std::optional<Certificate> certificate;
};

inline FactorizationDocument factorization_from_json(const json& doc) {
  detail::check_header(doc, "factorization");
  FactorizationDocument out;
  if (doc.contains("group") && doc["group"].contains("spec")) {
    out.spec = detail::get_field<std::string>(doc["group"], "spec", "group");
  }
  out.generators = detail::ids_from_json(doc, "generators", "factorization");
  out.valence = detail::get_field<std::size_t>(doc, "valence", "factorization");
  out.vertex_count = detail::get_field<std::size_t>(doc, "vertex_count", "factorization");
  if (!doc.contains("classes") || !doc["classes"].is_array()) {
    throw SchemaError("factorization: missing field 'classes'");
  }
  for (const auto& cls : doc["classes"]) {
    out.factorization.classes.push_back(detail::edges_from_json(cls, "factorization"));
  }
  if (doc.contains("certificate")) out.certificate = certificate_from_json(doc["certificate"]);
  return out;
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

// Undirected DOT. With a factorization, every edge carries color=cK for its
// class K; vertices are labelled with element labels when a group is given.
inline void write_dot(std::ostream& out, const SimpleGraph& g, const Group* group = nullptr,
                      const Factorization* f = nullptr) {
  out << "graph cayley {\n";
  for (Vertex v = 0; v < g.vertex_count; ++v) {
    out << "  " << v;
    if (group) out << " [label=" << json(group->label(Element{v})).dump() << "]";
    out << ";\n";
  }
  if (f) {
    for (std::size_t k = 0; k < f->classes.size(); ++k) {
      for (const auto& e : f->classes[k]) {
        out << "  " << e.u << " -- " << e.v << " [color=c" << k << "];\n";
      }
    }
  } else {
    for (const auto& e : g.edges) out << "  " << e.u << " -- " << e.v << ";\n";
  }
  out << "}\n";
}

}  // namespace onefac

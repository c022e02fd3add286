#pragma once
// JSON formats for every CLI-facing type.  Output uses ordered_json so field
// order is stable; naturals above the 53-bit safe range are emitted as
// decimal strings.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "semigraph/correspondence.hpp"
#include "semigraph/errors.hpp"
#include "semigraph/graph.hpp"
#include "semigraph/minor.hpp"
#include "semigraph/semigroup.hpp"
#include "semigraph/theorem.hpp"

namespace semigraph {

using ordered_json = nlohmann::ordered_json;

namespace detail {

constexpr std::uint64_t json_safe_max = 9007199254740991ULL;  // 2^53 - 1

inline bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline std::uint64_t parse_u64_text(const std::string& s) {
  if (!all_digits(s)) throw input_error("not a decimal natural: " + s);
  std::uint64_t out = 0;
  for (char c : s) {
    const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
    if (out > (std::numeric_limits<std::uint64_t>::max() - digit) / 10)
      throw input_error("number out of 64-bit range: " + s);
    out = out * 10 + digit;
  }
  return out;
}

inline std::uint64_t parse_u64_json(const ordered_json& j, const std::string& what) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_string()) return parse_u64_text(j.get<std::string>());
  throw input_error(what + " must be a natural number or a decimal string");
}

}  // namespace detail

inline ordered_json natural_to_json(std::uint64_t n) {
  if (n <= detail::json_safe_max) return ordered_json(n);
  return ordered_json(std::to_string(n));
}

inline ordered_json element_to_json(const FactoredElement& x) {
  if (auto v = evaluate(x)) return natural_to_json(*v);
  ordered_json primes = ordered_json::object();
  for (const auto& [symbol, exponent] : x.exponents())
    primes[symbol.text()] = natural_to_json(exponent);
  return ordered_json{{"primes", std::move(primes)}};
}

struct ParsedSet {
  SemigroupContext context;
  std::vector<FactoredElement> elements;
};

namespace detail {

inline FactoredElement parse_primes_object(const ordered_json& j,
                                           std::set<PrimeSymbol>* universe) {
  if (!j.is_object() || j.size() != 1 || !j.contains("primes") || !j["primes"].is_object())
    throw input_error("factored element must be {\"primes\": {\"symbol\": exponent}}");
  std::map<PrimeSymbol, std::uint64_t> exps;
  for (const auto& [key, value] : j["primes"].items()) {
    PrimeSymbol symbol =
        all_digits(key) ? PrimeSymbol::number(parse_u64_text(key)) : PrimeSymbol::name(key);
    const std::uint64_t exponent = parse_u64_json(value, "exponent of " + key);
    if (exponent == 0) throw input_error("exponent of " + key + " must be >= 1");
    if (universe && !symbol.is_number()) universe->insert(symbol);
    exps.emplace(std::move(symbol), exponent);
  }
  return FactoredElement::from_exponents(std::move(exps));
}

inline bool uses_primes_form(const ordered_json& set_json) {
  for (const auto& entry : set_json) {
    if (entry.is_object()) return true;
  }
  return false;
}

}  // namespace detail

// A set file is a JSON array.  Plain integers (or decimal strings) select
// the naturals backend; {"primes": ...} objects select the free backend
// with the union of the mentioned symbols as universe.  The two forms must
// not be mixed.
inline ParsedSet parse_set_json(const ordered_json& j) {
  if (!j.is_array()) throw input_error("element set must be a JSON array");
  if (detail::uses_primes_form(j)) {
    std::set<PrimeSymbol> universe;
    std::vector<FactoredElement> elements;
    for (const auto& entry : j) {
      if (!entry.is_object())
        throw input_error("set mixes plain naturals with factored elements");
      elements.push_back(detail::parse_primes_object(entry, &universe));
    }
    ParsedSet out{SemigroupContext::free_fcsg(std::move(universe)), std::move(elements)};
    for (const FactoredElement& x : out.elements) out.context.require_valid(x);
    return out;
  }
  ParsedSet out{SemigroupContext::naturals(), {}};
  for (const auto& entry : j)
    out.elements.push_back(factorize(detail::parse_u64_json(entry, "set element")));
  return out;
}

// A sequence file is a JSON array of set arrays sharing one backend.
inline SubsetSequence parse_sequence_json(const ordered_json& j) {
  if (!j.is_array()) throw input_error("sequence must be a JSON array of element sets");
  bool free_form = false;
  for (const auto& set_json : j) {
    if (!set_json.is_array())
      throw input_error("sequence must be a JSON array of element sets");
    free_form = free_form || detail::uses_primes_form(set_json);
  }
  if (free_form) {
    std::set<PrimeSymbol> universe;
    std::vector<std::vector<FactoredElement>> sets;
    for (const auto& set_json : j) {
      std::vector<FactoredElement> elements;
      for (const auto& entry : set_json) {
        if (!entry.is_object())
          throw input_error("sequence mixes plain naturals with factored elements");
        elements.push_back(detail::parse_primes_object(entry, &universe));
      }
      sets.push_back(std::move(elements));
    }
    SubsetSequence out{SemigroupContext::free_fcsg(std::move(universe)), std::move(sets)};
    for (const auto& set : out.sets)
      for (const FactoredElement& x : set) out.context.require_valid(x);
    return out;
  }
  SubsetSequence out{SemigroupContext::naturals(), {}};
  for (const auto& set_json : j) {
    std::vector<FactoredElement> elements;
    for (const auto& entry : set_json)
      elements.push_back(factorize(detail::parse_u64_json(entry, "set element")));
    out.sets.push_back(std::move(elements));
  }
  return out;
}

namespace detail {

inline VertexLabel parse_vertex_json(const ordered_json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_unsigned()) return std::to_string(j.get<std::uint64_t>());
  throw input_error("vertex label must be a string or a natural number");
}

}  // namespace detail

inline SimpleGraph parse_graph_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
    throw input_error("graph must be {\"vertices\": [...], \"edges\": [[a,b], ...]}");
  std::vector<VertexLabel> vertices;
  for (const auto& v : j["vertices"]) vertices.push_back(detail::parse_vertex_json(v));
  std::vector<std::pair<VertexLabel, VertexLabel>> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw input_error("graph edges must be an array of pairs");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2)
        throw input_error("each edge must be a pair of vertex labels");
      edges.emplace_back(detail::parse_vertex_json(e[0]), detail::parse_vertex_json(e[1]));
    }
  }
  return SimpleGraph(std::move(vertices), edges);
}

inline ordered_json graph_to_json(const SimpleGraph& g) {
  ordered_json vertices = ordered_json::array();
  for (const VertexLabel& v : g.vertices()) vertices.push_back(v);
  ordered_json edges = ordered_json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back(ordered_json::array({a, b}));
  return ordered_json{{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

inline MinorEmbedding parse_embedding_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("branch_sets") || !j["branch_sets"].is_object())
    throw input_error("embedding must be {\"branch_sets\": {\"h\": [\"g\", ...]}}");
  MinorEmbedding emb;
  for (const auto& [key, value] : j["branch_sets"].items()) {
    if (!value.is_array()) throw input_error("branch set of " + key + " must be an array");
    std::set<VertexLabel> block;
    for (const auto& v : value) block.insert(detail::parse_vertex_json(v));
    emb.branch_sets.emplace(key, std::move(block));
  }
  return emb;
}

inline ordered_json embedding_to_json(const MinorEmbedding& emb) {
  ordered_json sets = ordered_json::object();
  for (const auto& [h, block] : emb.branch_sets) {
    ordered_json members = ordered_json::array();
    for (const VertexLabel& v : block) members.push_back(v);
    sets[h] = std::move(members);
  }
  return ordered_json{{"branch_sets", std::move(sets)}};
}

inline ordered_json embedding_report_to_json(const EmbeddingReport& report) {
  ordered_json clauses = ordered_json::array();
  for (const auto& clause : report.clauses)
    clauses.push_back(ordered_json{
        {"name", clause.name}, {"ok", clause.ok}, {"detail", clause.detail}});
  return ordered_json{{"ok", report.ok}, {"clauses", std::move(clauses)}};
}

inline ordered_json operations_to_json(const std::vector<MinorOperation>& ops) {
  ordered_json out = ordered_json::array();
  for (const MinorOperation& op : ops) {
    if (op.kind == MinorOpKind::delete_vertex) {
      out.push_back(ordered_json{{"op", minor_op_name(op.kind)}, {"vertex", op.a}});
    } else {
      out.push_back(ordered_json{{"op", minor_op_name(op.kind)},
                                 {"edge", ordered_json::array({op.a, op.b})}});
    }
  }
  return out;
}

inline std::vector<MinorOperation> parse_operations_json(const ordered_json& j) {
  if (!j.is_array()) throw input_error("operation sequence must be a JSON array");
  std::vector<MinorOperation> ops;
  for (const auto& entry : j) {
    if (!entry.is_object() || !entry.contains("op") || !entry["op"].is_string())
      throw input_error("each operation must be an object with an \"op\" field");
    const std::string kind = entry["op"].get<std::string>();
    if (kind == "delete_vertex") {
      if (!entry.contains("vertex"))
        throw input_error("delete_vertex needs a \"vertex\" field");
      ops.push_back({MinorOpKind::delete_vertex,
                     detail::parse_vertex_json(entry["vertex"]), {}});
      continue;
    }
    MinorOpKind op_kind;
    if (kind == "delete_edge") {
      op_kind = MinorOpKind::delete_edge;
    } else if (kind == "contract_edge") {
      op_kind = MinorOpKind::contract_edge;
    } else {
      throw input_error("unknown operation: " + kind);
    }
    if (!entry.contains("edge") || !entry["edge"].is_array() || entry["edge"].size() != 2)
      throw input_error(kind + " needs an \"edge\" pair");
    ops.push_back({op_kind, detail::parse_vertex_json(entry["edge"][0]),
                   detail::parse_vertex_json(entry["edge"][1])});
  }
  return ops;
}

inline ordered_json element_list_to_json(std::vector<FactoredElement> elements) {
  std::sort(elements.begin(), elements.end(), output_less);
  ordered_json out = ordered_json::array();
  for (const FactoredElement& x : elements) out.push_back(element_to_json(x));
  return out;
}

inline ordered_json gcd_graph_to_json(const GcdGraphResult& result) {
  ordered_json table = ordered_json::object();
  for (const VertexLabel& v : result.graph.vertices())
    table[v] = element_to_json(result.element_of.at(v));
  return ordered_json{{"graph", graph_to_json(result.graph)},
                      {"element_of", std::move(table)}};
}

inline ordered_json partition_to_json(const PartitionResult& partition) {
  ordered_json blocks = ordered_json::object();
  std::vector<FactoredElement> keys;
  for (const auto& [k, block] : partition.blocks) keys.push_back(k);
  std::sort(keys.begin(), keys.end(), output_less);
  for (const FactoredElement& k : keys)
    blocks[canonical_label(k)] = element_list_to_json(partition.blocks.at(k));
  return ordered_json{
      {"index_pair", ordered_json::array({partition.index_pair.first,
                                          partition.index_pair.second})},
      {"covers_all", partition.covers_all},
      {"exceptional_k0", partition.exceptional_k0
                             ? element_to_json(*partition.exceptional_k0)
                             : ordered_json(nullptr)},
      {"blocks", std::move(blocks)}};
}

inline ordered_json partition_report_to_json(const PartitionReport& report) {
  ordered_json checks = ordered_json::array();
  for (const auto& check : report.checks)
    checks.push_back(ordered_json{
        {"name", check.name}, {"ok", check.ok}, {"detail", check.detail}});
  return ordered_json{{"ok", report.ok}, {"checks", std::move(checks)}};
}

inline ordered_json coloring_to_json(const PairColoring& coloring) {
  ordered_json pairs = ordered_json::array();
  for (const auto& [pair, color] : coloring.colors)
    pairs.push_back(ordered_json{{"pair", ordered_json::array({pair.first, pair.second})},
                                 {"color", pair_color_name(color)}});
  return ordered_json{{"length", coloring.length}, {"pairs", std::move(pairs)}};
}

inline ordered_json scan_to_json(const ScanResult& scan) {
  ordered_json demos = ordered_json::array();
  for (const Demonstration& demo : scan.demonstrations) {
    ordered_json record{
        {"pair", ordered_json::array({demo.pair.first, demo.pair.second})},
        {"embedding", embedding_to_json(demo.embedding)},
        {"partial_partition", partition_to_json(demo.partial)},
        {"partial_report", partition_report_to_json(demo.partial_report)},
        {"full_partition",
         demo.full ? partition_to_json(*demo.full) : ordered_json(nullptr)},
        {"full_report", demo.full_report ? partition_report_to_json(*demo.full_report)
                                         : ordered_json(nullptr)}};
    demos.push_back(std::move(record));
  }
  return ordered_json{{"coloring", coloring_to_json(scan.coloring)},
                      {"chain", longest_green_chain(scan.coloring)},
                      {"demonstrations", std::move(demos)}};
}

inline ordered_json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file: " + path);
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error("invalid JSON in " + path + ": " + std::string(e.what()));
  }
}

}  // namespace semigraph

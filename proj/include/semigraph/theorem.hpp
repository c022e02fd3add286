#pragma once
// Finite content of the partition theorem: coloring index pairs of a set
// sequence by minor comparability of their gcd graphs, longest comparable
// chains, and construction plus verification of block partitions indexed
// by a smaller set.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semigraph/correspondence.hpp"
#include "semigraph/errors.hpp"
#include "semigraph/graph.hpp"
#include "semigraph/minor.hpp"
#include "semigraph/semigroup.hpp"

namespace semigraph {

// Finite prefix of a set sequence; I/O indices are 1-based.
struct SubsetSequence {
  SemigroupContext context;
  std::vector<std::vector<FactoredElement>> sets;
};

enum class PairColor { red, yellow, green };

inline std::string pair_color_name(PairColor c) {
  switch (c) {
    case PairColor::red: return "red";
    case PairColor::yellow: return "yellow";
    case PairColor::green: return "green";
  }
  return "";
}

struct PairColoring {
  int length = 0;
  std::map<std::pair<int, int>, PairColor> colors;  // keys (i, j), 1-based, i < j
};

// Green: the earlier gcd graph is a minor of the later one.  Red: only the
// reverse containment holds; isomorphic graphs cannot land here because
// isomorphy already implies the green containment.  Yellow: incomparable.
inline PairColoring color_pairs(const SubsetSequence& seq, MinorSearchOptions options = {}) {
  PairColoring out;
  out.length = static_cast<int>(seq.sets.size());
  std::vector<SimpleGraph> graphs;
  for (const auto& set : seq.sets) graphs.push_back(build_gcd_graph(seq.context, set).graph);
  for (int i = 1; i <= out.length; ++i) {
    for (int j = i + 1; j <= out.length; ++j) {
      try {
        PairColor color = PairColor::yellow;
        if (find_minor_embedding(graphs[static_cast<std::size_t>(i - 1)],
                                 graphs[static_cast<std::size_t>(j - 1)], options))
          color = PairColor::green;
        else if (find_minor_embedding(graphs[static_cast<std::size_t>(j - 1)],
                                      graphs[static_cast<std::size_t>(i - 1)], options))
          color = PairColor::red;
        out.colors.emplace(std::make_pair(i, j), color);
      } catch (const resource_error& e) {
        throw resource_error("pair (" + std::to_string(i) + "," + std::to_string(j) +
                             "): " + e.what());
      }
    }
  }
  return out;
}

// Longest all-green index chain, lexicographically smallest among the
// maximum-length ones.
inline std::vector<int> longest_green_chain(const PairColoring& coloring) {
  const int n = coloring.length;
  if (n == 0) return {};
  std::vector<int> len(static_cast<std::size_t>(n) + 1, 1);
  std::vector<int> next(static_cast<std::size_t>(n) + 1, 0);
  for (int i = n; i >= 1; --i) {
    for (int j = i + 1; j <= n; ++j) {
      if (coloring.colors.at({i, j}) != PairColor::green) continue;
      if (1 + len[static_cast<std::size_t>(j)] > len[static_cast<std::size_t>(i)]) {
        len[static_cast<std::size_t>(i)] = 1 + len[static_cast<std::size_t>(j)];
        next[static_cast<std::size_t>(i)] = j;
      }
    }
  }
  int start = 1;
  for (int i = 2; i <= n; ++i)
    if (len[static_cast<std::size_t>(i)] > len[static_cast<std::size_t>(start)]) start = i;
  std::vector<int> chain;
  for (int i = start; i != 0; i = next[static_cast<std::size_t>(i)]) chain.push_back(i);
  return chain;
}

struct PartitionResult {
  std::pair<int, int> index_pair{1, 2};
  std::map<FactoredElement, std::vector<FactoredElement>> blocks;
  std::optional<FactoredElement> exceptional_k0;
  bool covers_all = false;
};

struct PartitionCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct PartitionReport {
  bool ok = true;
  std::vector<PartitionCheck> checks;
};

// Checks the partition shape (keys, membership, disjointness, coverage when
// the partition claims to be full), then condition A on every pair of
// non-coprime indices and condition B on every block.  Condition B is
// exempted exactly for the merged block of a full partition.
inline PartitionReport verify_partition(const SemigroupContext& context,
                                        const std::vector<FactoredElement>& m_h,
                                        const std::vector<FactoredElement>& m_g,
                                        const PartitionResult& result) {
  PartitionReport report;
  auto add = [&report](std::string name, bool ok, std::string detail) {
    report.ok = report.ok && ok;
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  bool structure_ok = true;
  {
    bool ok = true;
    std::string detail;
    std::set<FactoredElement> index(m_h.begin(), m_h.end());
    for (const auto& [k, block] : result.blocks) {
      if (!index.count(k)) {
        ok = false;
        detail = "block keyed by " + canonical_label(k) + ", which is not an index element";
        break;
      }
    }
    if (ok) {
      for (const FactoredElement& k : m_h) {
        if (!result.blocks.count(k)) {
          ok = false;
          detail = "no block for index element " + canonical_label(k);
          break;
        }
      }
    }
    add("keys", ok, ok ? "blocks keyed exactly by the index set" : detail);
    structure_ok = structure_ok && ok;
  }
  {
    bool ok = true;
    std::string detail;
    std::set<std::string> ground;
    for (const FactoredElement& x : m_g) ground.insert(canonical_label(x));
    for (const auto& [k, block] : result.blocks) {
      std::set<std::string> seen;
      for (const FactoredElement& x : block) {
        const std::string label = canonical_label(x);
        if (!ground.count(label)) {
          ok = false;
          detail = "block of " + canonical_label(k) + " contains " + label +
                   ", which is not in the partitioned set";
          break;
        }
        if (!seen.insert(label).second) {
          ok = false;
          detail = "block of " + canonical_label(k) + " repeats " + label;
          break;
        }
      }
      if (!ok) break;
    }
    add("members", ok, ok ? "all block members come from the partitioned set" : detail);
    structure_ok = structure_ok && ok;
  }
  {
    bool ok = true;
    std::string detail;
    std::map<std::string, std::string> owner;
    for (const auto& [k, block] : result.blocks) {
      for (const FactoredElement& x : block) {
        const std::string label = canonical_label(x);
        auto [it, fresh] = owner.emplace(label, canonical_label(k));
        if (!fresh) {
          ok = false;
          detail = label + " appears in the blocks of " + it->second + " and " +
                   canonical_label(k);
          break;
        }
      }
      if (!ok) break;
    }
    add("disjoint", ok, ok ? "blocks pairwise disjoint" : detail);
    structure_ok = structure_ok && ok;
  }
  if (result.covers_all) {
    bool ok = true;
    std::string detail;
    std::set<std::string> covered;
    for (const auto& [k, block] : result.blocks)
      for (const FactoredElement& x : block) covered.insert(canonical_label(x));
    for (const FactoredElement& x : m_g) {
      const std::string label = canonical_label(x);
      if (!covered.count(label)) {
        ok = false;
        detail = label + " is not covered by any block";
        break;
      }
    }
    add("coverage", ok, ok ? "blocks cover the whole partitioned set" : detail);
    structure_ok = structure_ok && ok;
  }
  if (!structure_ok) return report;

  for (auto it = result.blocks.begin(); it != result.blocks.end(); ++it) {
    for (auto jt = std::next(it); jt != result.blocks.end(); ++jt) {
      if (is_unit(context.gcd(it->first, jt->first))) continue;
      const std::string name =
          "condition_a:{" + canonical_label(it->first) + "," + canonical_label(jt->first) + "}";
      const FactoredElement shared =
          context.gcd(context.set_product(it->second), context.set_product(jt->second));
      const bool ok = !is_unit(shared);
      add(name, ok,
          ok ? "block products share " + canonical_label(shared)
             : "block products are coprime");
    }
  }

  for (const auto& [k, block] : result.blocks) {
    const std::string name = "condition_b:" + canonical_label(k);
    if (result.exceptional_k0 && *result.exceptional_k0 == k) {
      add(name, true, "exempt: merged block");
      continue;
    }
    const bool ok = is_connected(build_gcd_graph(context, block).graph);
    add(name, ok,
        ok ? "block is gcd-chain connected"
           : "block of " + canonical_label(k) + " splits into several gcd components");
  }

  return report;
}

// Blocks are the branch sets of a verified embedding of the index set's gcd
// graph into the partitioned set's gcd graph, translated back to elements.
inline PartitionResult construct_partial_partition(const SemigroupContext& context,
                                                   const std::vector<FactoredElement>& m_h,
                                                   const std::vector<FactoredElement>& m_g,
                                                   const MinorEmbedding& emb) {
  GcdGraphResult gh = build_gcd_graph(context, m_h);
  GcdGraphResult gg = build_gcd_graph(context, m_g);
  const EmbeddingReport check = verify_embedding(gh.graph, gg.graph, emb);
  if (!check.ok) {
    for (const auto& clause : check.clauses)
      if (!clause.ok) throw input_error("invalid embedding: " + clause.detail);
  }
  PartitionResult out;
  for (const auto& [hv, branch] : emb.branch_sets) {
    std::vector<FactoredElement> block;
    for (const VertexLabel& v : branch) block.push_back(gg.element_of.at(v));
    std::sort(block.begin(), block.end(), output_less);
    out.blocks.emplace(gh.element_of.at(hv), std::move(block));
  }
  if (!verify_partition(context, m_h, m_g, out).ok)
    throw std::logic_error("constructed partition failed verification");
  return out;
}

inline FactoredElement default_k0(const std::vector<FactoredElement>& m_h) {
  if (m_h.empty()) throw input_error("k0 undefined: the index set is empty");
  return *std::min_element(m_h.begin(), m_h.end());
}

// Leftover elements are merged into the block of k0; condition A survives
// because multiplying a block product never shrinks its gcds, and condition
// B is no longer claimed for that one block.
inline PartitionResult extend_to_full_partition(const SemigroupContext& context,
                                                const PartitionResult& partial,
                                                const std::vector<FactoredElement>& m_h,
                                                const std::vector<FactoredElement>& m_g,
                                                const FactoredElement& k0) {
  if (!partial.blocks.count(k0))
    throw input_error("k0 is not an element of the index set: " + canonical_label(k0));
  PartitionResult out = partial;
  std::set<std::string> covered;
  for (const auto& [k, block] : out.blocks)
    for (const FactoredElement& x : block) covered.insert(canonical_label(x));
  std::vector<FactoredElement>& target = out.blocks.at(k0);
  for (const FactoredElement& x : m_g)
    if (!covered.count(canonical_label(x))) target.push_back(x);
  std::sort(target.begin(), target.end(), output_less);
  out.covers_all = true;
  out.exceptional_k0 = k0;
  if (!verify_partition(context, m_h, m_g, out).ok)
    throw std::logic_error("extended partition failed verification");
  return out;
}

// Explicit condition-B witness: the elements strictly between x and y on a
// shortest gcd-chain inside the block, empty when gcd(x,y) is already a
// non-unit or x = y, nullopt when no chain exists.
inline std::optional<std::vector<FactoredElement>> find_gcd_chain(
    const SemigroupContext& context, const std::vector<FactoredElement>& block,
    const FactoredElement& x, const FactoredElement& y) {
  GcdGraphResult gcd_graph = build_gcd_graph(context, block);
  auto sx = gcd_graph.graph.index_of(canonical_label(x));
  auto sy = gcd_graph.graph.index_of(canonical_label(y));
  if (!sx || !sy) throw input_error("chain endpoints must belong to the block");
  if (*sx == *sy) return std::vector<FactoredElement>{};
  const int n = static_cast<int>(gcd_graph.graph.vertex_count());
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> queue{*sx};
  parent[static_cast<std::size_t>(*sx)] = *sx;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int w : gcd_graph.graph.neighbors(v)) {
      if (parent[static_cast<std::size_t>(w)] >= 0) continue;
      parent[static_cast<std::size_t>(w)] = v;
      queue.push_back(w);
    }
  }
  if (parent[static_cast<std::size_t>(*sy)] < 0) return std::nullopt;
  std::vector<FactoredElement> chain;
  for (int v = parent[static_cast<std::size_t>(*sy)]; v != *sx;
       v = parent[static_cast<std::size_t>(v)])
    chain.push_back(gcd_graph.element_of.at(gcd_graph.graph.label(v)));
  std::reverse(chain.begin(), chain.end());
  return chain;
}

struct ScanOptions {
  bool all_pairs = false;
  MinorSearchOptions search;
};

struct Demonstration {
  std::pair<int, int> pair;
  MinorEmbedding embedding;
  PartitionResult partial;
  PartitionReport partial_report;
  std::optional<PartitionResult> full;      // absent when the index set is empty
  std::optional<PartitionReport> full_report;
};

struct ScanResult {
  PairColoring coloring;
  std::vector<Demonstration> demonstrations;
};

// Colors all pairs, then demonstrates the theorem on green pairs: the
// embedding, the partial partition, and the full partition with the default
// k0.  By default only the first green pair per left index is demonstrated.
inline ScanResult scan_and_demonstrate(const SubsetSequence& seq, ScanOptions options = {}) {
  ScanResult out{color_pairs(seq, options.search), {}};
  for (int i = 1; i <= out.coloring.length; ++i) {
    for (int j = i + 1; j <= out.coloring.length; ++j) {
      if (out.coloring.colors.at({i, j}) != PairColor::green) continue;
      const auto& m_h = seq.sets[static_cast<std::size_t>(i - 1)];
      const auto& m_g = seq.sets[static_cast<std::size_t>(j - 1)];
      GcdGraphResult gh = build_gcd_graph(seq.context, m_h);
      GcdGraphResult gg = build_gcd_graph(seq.context, m_g);
      Demonstration demo{{i, j},
                         find_minor_embedding(gh.graph, gg.graph, options.search).value(),
                         {},
                         {},
                         std::nullopt,
                         std::nullopt};
      demo.partial = construct_partial_partition(seq.context, m_h, m_g, demo.embedding);
      demo.partial.index_pair = {i, j};
      demo.partial_report = verify_partition(seq.context, m_h, m_g, demo.partial);
      if (!m_h.empty()) {
        demo.full = extend_to_full_partition(seq.context, demo.partial, m_h, m_g,
                                             default_k0(m_h));
        demo.full->index_pair = {i, j};
        demo.full_report = verify_partition(seq.context, m_h, m_g, *demo.full);
      }
      out.demonstrations.push_back(std::move(demo));
      if (!options.all_pairs) break;
    }
  }
  return out;
}

}  // namespace semigraph

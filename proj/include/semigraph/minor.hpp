#pragma once
// Minor containment H <= G: branch-set witnesses found by exhaustive
// backtracking over connected vertex sets, an independent delete/contract
// oracle, and a per-clause embedding verifier.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semigraph/errors.hpp"
#include "semigraph/graph.hpp"

namespace semigraph {

struct MinorEmbedding {
  std::map<VertexLabel, std::set<VertexLabel>> branch_sets;

  friend bool operator==(const MinorEmbedding&, const MinorEmbedding&) = default;
};

enum class MinorOpKind { delete_edge, delete_vertex, contract_edge };

inline const char* minor_op_name(MinorOpKind kind) {
  switch (kind) {
    case MinorOpKind::delete_edge: return "delete_edge";
    case MinorOpKind::delete_vertex: return "delete_vertex";
    case MinorOpKind::contract_edge: return "contract_edge";
  }
  return "";
}

// For delete_vertex only `a` is meaningful; edge operations use {a, b}.
struct MinorOperation {
  MinorOpKind kind;
  VertexLabel a;
  VertexLabel b;

  friend bool operator==(const MinorOperation&, const MinorOperation&) = default;
};

// Contraction merges the two endpoints into the smaller label and keeps the
// graph simple: loops vanish, parallel edges collapse.
inline SimpleGraph apply_operation(const SimpleGraph& g, const MinorOperation& op) {
  switch (op.kind) {
    case MinorOpKind::delete_vertex: {
      if (!g.has_vertex(op.a)) throw input_error("delete_vertex: no such vertex: " + op.a);
      std::vector<VertexLabel> vertices;
      for (const VertexLabel& v : g.vertices())
        if (v != op.a) vertices.push_back(v);
      std::vector<std::pair<VertexLabel, VertexLabel>> edges;
      for (const auto& e : g.edges())
        if (e.first != op.a && e.second != op.a) edges.push_back(e);
      return SimpleGraph(std::move(vertices), edges);
    }
    case MinorOpKind::delete_edge: {
      if (!g.has_edge(op.a, op.b))
        throw input_error("delete_edge: no such edge: {" + op.a + "," + op.b + "}");
      const std::pair<VertexLabel, VertexLabel> key{std::min(op.a, op.b), std::max(op.a, op.b)};
      std::vector<std::pair<VertexLabel, VertexLabel>> edges;
      for (const auto& e : g.edges())
        if (e != key) edges.push_back(e);
      return SimpleGraph(g.vertices(), edges);
    }
    case MinorOpKind::contract_edge: {
      if (!g.has_edge(op.a, op.b))
        throw input_error("contract_edge: no such edge: {" + op.a + "," + op.b + "}");
      const VertexLabel keep = std::min(op.a, op.b);
      const VertexLabel drop = std::max(op.a, op.b);
      std::vector<VertexLabel> vertices;
      for (const VertexLabel& v : g.vertices())
        if (v != drop) vertices.push_back(v);
      std::vector<std::pair<VertexLabel, VertexLabel>> edges;
      for (auto [x, y] : g.edges()) {
        if (x == drop) x = keep;
        if (y == drop) y = keep;
        if (x == y) continue;
        edges.emplace_back(x, y);
      }
      return SimpleGraph(std::move(vertices), edges);
    }
  }
  throw input_error("apply_operation: unknown operation kind");
}

struct EmbeddingClause {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct EmbeddingReport {
  bool ok = true;
  std::vector<EmbeddingClause> clauses;
};

// Checks every defining clause of a branch-set witness and never throws:
// malformed embeddings produce failing clauses.
inline EmbeddingReport verify_embedding(const SimpleGraph& h, const SimpleGraph& g,
                                        const MinorEmbedding& emb) {
  EmbeddingReport report;
  auto add = [&report](std::string name, bool ok, std::string detail) {
    report.ok = report.ok && ok;
    report.clauses.push_back({std::move(name), ok, std::move(detail)});
  };

  {
    bool ok = true;
    std::string detail;
    for (const VertexLabel& v : h.vertices()) {
      if (!emb.branch_sets.count(v)) {
        ok = false;
        detail = "no branch set for vertex " + v;
        break;
      }
    }
    if (ok) {
      for (const auto& [key, unused] : emb.branch_sets) {
        if (!h.has_vertex(key)) {
          ok = false;
          detail = "branch set keyed by unknown vertex " + key;
          break;
        }
      }
    }
    add("keys", ok, ok ? "branch sets keyed exactly by the minor's vertices" : detail);
    if (!ok) return report;
  }

  {
    bool ok = true;
    std::string detail;
    for (const auto& [key, block] : emb.branch_sets) {
      if (block.empty()) {
        ok = false;
        detail = "branch set of " + key + " is empty";
        break;
      }
    }
    add("nonempty", ok, ok ? "all branch sets nonempty" : detail);
  }

  {
    bool ok = true;
    std::string detail;
    for (const auto& [key, block] : emb.branch_sets) {
      for (const VertexLabel& v : block) {
        if (!g.has_vertex(v)) {
          ok = false;
          detail = "branch set of " + key + " uses unknown host vertex " + v;
          break;
        }
      }
      if (!ok) break;
    }
    add("contained", ok, ok ? "all branch sets lie in the host graph" : detail);
    if (!ok) return report;
  }

  {
    bool ok = true;
    std::string detail;
    std::map<VertexLabel, VertexLabel> owner;
    for (const auto& [key, block] : emb.branch_sets) {
      for (const VertexLabel& v : block) {
        auto [it, fresh] = owner.emplace(v, key);
        if (!fresh) {
          ok = false;
          detail = "host vertex " + v + " shared by branch sets of " + it->second + " and " + key;
          break;
        }
      }
      if (!ok) break;
    }
    add("disjoint", ok, ok ? "branch sets pairwise disjoint" : detail);
  }

  for (const auto& [key, block] : emb.branch_sets) {
    const bool ok = is_connected(induced_subgraph(g, block));
    add("connected:" + key, ok,
        ok ? "branch set induces a connected subgraph"
           : "branch set of " + key + " induces a disconnected subgraph");
  }

  for (const auto& [a, b] : h.edges()) {
    const auto& block_a = emb.branch_sets.at(a);
    const auto& block_b = emb.branch_sets.at(b);
    bool ok = false;
    for (const VertexLabel& x : block_a) {
      auto ix = g.index_of(x);
      if (!ix) continue;
      for (const VertexLabel& y : block_b) {
        auto iy = g.index_of(y);
        if (iy && g.adjacent(*ix, *iy)) {
          ok = true;
          break;
        }
      }
      if (ok) break;
    }
    add("edge:{" + a + "," + b + "}", ok,
        ok ? "host edge joins the two branch sets"
           : "no host edge joins the branch sets of " + a + " and " + b);
  }

  return report;
}

struct MinorSearchOptions {
  std::uint64_t node_budget = 10'000'000;
};

namespace detail {

// Adjacency-bitmask view of a host graph; the branch-set search needs the
// host to fit in one 64-bit word.
struct MaskGraph {
  int n = 0;
  std::vector<std::uint64_t> adj;

  static MaskGraph from(const SimpleGraph& g) {
    if (g.vertex_count() > 64)
      throw resource_error("branch-set search limited to 64 host vertices, got " +
                           std::to_string(g.vertex_count()));
    MaskGraph m;
    m.n = static_cast<int>(g.vertex_count());
    m.adj.assign(static_cast<std::size_t>(m.n), 0);
    for (int v = 0; v < m.n; ++v)
      for (int w : g.neighbors(v)) m.adj[static_cast<std::size_t>(v)] |= std::uint64_t{1} << w;
    return m;
  }

  std::uint64_t neighborhood(std::uint64_t set) const {
    std::uint64_t out = 0;
    while (set) {
      const int v = std::countr_zero(set);
      set &= set - 1;
      out |= adj[static_cast<std::size_t>(v)];
    }
    return out;
  }
};

struct BranchSearch {
  const MaskGraph& host;
  const SimpleGraph& h;
  std::vector<int> order;           // H vertices, search order
  std::vector<std::vector<int>> h_adj_pos;  // H adjacency in order positions
  std::vector<std::uint64_t> branch;
  std::vector<std::uint64_t> branch_nbrs;
  std::uint64_t used = 0;
  std::uint64_t budget;
  std::uint64_t budget_limit;

  BranchSearch(const MaskGraph& host_graph, const SimpleGraph& minor, std::uint64_t node_budget)
      : host(host_graph), h(minor), budget(node_budget), budget_limit(node_budget) {
    const int k = static_cast<int>(h.vertex_count());
    order.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [this](int a, int b) {
      if (h.degree(a) != h.degree(b)) return h.degree(a) > h.degree(b);
      return a < b;
    });
    std::vector<int> pos(static_cast<std::size_t>(k));
    for (int d = 0; d < k; ++d) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(d)])] = d;
    h_adj_pos.assign(static_cast<std::size_t>(k), {});
    for (int d = 0; d < k; ++d) {
      for (int w : h.neighbors(order[static_cast<std::size_t>(d)]))
        h_adj_pos[static_cast<std::size_t>(d)].push_back(pos[static_cast<std::size_t>(w)]);
      std::sort(h_adj_pos[static_cast<std::size_t>(d)].begin(),
                h_adj_pos[static_cast<std::size_t>(d)].end());
    }
    branch.assign(static_cast<std::size_t>(k), 0);
    branch_nbrs.assign(static_cast<std::size_t>(k), 0);
  }

  void spend() {
    if (budget == 0)
      throw resource_error("minor search budget exhausted (limit " +
                           std::to_string(budget_limit) + " node expansions)");
    --budget;
  }

  std::uint64_t free_mask() const {
    const std::uint64_t all = host.n == 64 ? ~std::uint64_t{0}
                                           : (std::uint64_t{1} << host.n) - 1;
    return all & ~used;
  }

  // Prunes checked after tentatively committing a branch set at depth d.
  bool commit_feasible(int d) const {
    const int k = static_cast<int>(order.size());
    const std::uint64_t free = free_mask();
    if (std::popcount(free) < k - d - 1) return false;
    // Every assigned set still awaiting neighbors needs one distinct free
    // frontier vertex per future neighbor (their branch sets are disjoint).
    for (int e = 0; e <= d; ++e) {
      int future = 0;
      for (int p : h_adj_pos[static_cast<std::size_t>(e)])
        if (p > d) ++future;
      if (future == 0) continue;
      const std::uint64_t frontier = branch_nbrs[static_cast<std::size_t>(e)] & free;
      if (std::popcount(frontier) < future) return false;
    }
    return true;
  }

  bool candidate_satisfies(int d, std::uint64_t set) const {
    for (int p : h_adj_pos[static_cast<std::size_t>(d)]) {
      if (p >= d) continue;
      if ((branch_nbrs[static_cast<std::size_t>(p)] & set) == 0) return false;
    }
    return true;
  }

  bool place(int d, std::uint64_t set, std::uint64_t nbrs) {
    branch[static_cast<std::size_t>(d)] = set;
    branch_nbrs[static_cast<std::size_t>(d)] = nbrs & ~set;
    used |= set;
    if (commit_feasible(d) && assign(d + 1)) return true;
    used &= ~set;
    branch[static_cast<std::size_t>(d)] = 0;
    branch_nbrs[static_cast<std::size_t>(d)] = 0;
    return false;
  }

  // Enumerates every connected free set containing `set`, avoiding
  // `forbidden`, each exactly once, smallest extensions first.
  bool grow(int d, std::uint64_t set, std::uint64_t nbrs, std::uint64_t forbidden, int cap) {
    spend();
    if (candidate_satisfies(d, set) && place(d, set, nbrs)) return true;
    if (std::popcount(set) >= cap) return false;
    std::uint64_t ext = nbrs & free_mask() & ~set & ~forbidden;
    std::uint64_t taken = 0;
    while (ext) {
      const int v = std::countr_zero(ext);
      ext &= ext - 1;
      const std::uint64_t bit = std::uint64_t{1} << v;
      if (grow(d, set | bit, nbrs | host.adj[static_cast<std::size_t>(v)],
               forbidden | taken, cap))
        return true;
      taken |= bit;
    }
    return false;
  }

  bool assign(int d) {
    const int k = static_cast<int>(order.size());
    if (d == k) return true;
    const std::uint64_t free = free_mask();
    const int cap = std::popcount(free) - (k - d - 1);
    if (cap < 1) return false;

    // Isolated H-vertices only ever need singletons.
    if (h.degree(order[static_cast<std::size_t>(d)]) == 0) {
      std::uint64_t rest = free;
      while (rest) {
        const int v = std::countr_zero(rest);
        rest &= rest - 1;
        spend();
        const std::uint64_t bit = std::uint64_t{1} << v;
        if (place(d, bit, host.adj[static_cast<std::size_t>(v)])) return true;
      }
      return false;
    }

    // Seed from the assigned neighbor with the smallest frontier; any valid
    // branch set must touch every assigned neighbor's frontier.
    std::uint64_t seeds = free;
    int best = -1;
    for (int p : h_adj_pos[static_cast<std::size_t>(d)]) {
      if (p >= d) continue;
      const std::uint64_t frontier = branch_nbrs[static_cast<std::size_t>(p)] & free;
      if (frontier == 0) return false;
      if (best < 0 || std::popcount(frontier) < std::popcount(seeds)) {
        seeds = frontier;
        best = p;
      }
    }

    std::uint64_t taken = 0;
    std::uint64_t rest = seeds;
    while (rest) {
      const int v = std::countr_zero(rest);
      rest &= rest - 1;
      const std::uint64_t bit = std::uint64_t{1} << v;
      if (grow(d, bit, host.adj[static_cast<std::size_t>(v)], taken, cap)) return true;
      taken |= bit;
    }
    return false;
  }
};

}  // namespace detail

// Exhaustive branch-set search for h as a minor of g.  Deterministic: H
// vertices descending by degree with label tiebreak, host sets smallest
// label first.  nullopt means no embedding exists; running out of budget
// throws instead.
inline std::optional<MinorEmbedding> find_minor_embedding(const SimpleGraph& h,
                                                          const SimpleGraph& g,
                                                          MinorSearchOptions options = {}) {
  if (h.vertex_count() > g.vertex_count()) return std::nullopt;
  if (h.edge_count() > g.edge_count()) return std::nullopt;
  if (h.vertex_count() == 0) return MinorEmbedding{};
  const detail::MaskGraph host = detail::MaskGraph::from(g);
  detail::BranchSearch search(host, h, options.node_budget);
  if (!search.assign(0)) return std::nullopt;
  MinorEmbedding emb;
  for (std::size_t d = 0; d < search.order.size(); ++d) {
    std::set<VertexLabel> block;
    std::uint64_t set = search.branch[d];
    while (set) {
      const int v = std::countr_zero(set);
      set &= set - 1;
      block.insert(g.label(v));
    }
    emb.branch_sets.emplace(h.label(search.order[d]), std::move(block));
  }
  if (!verify_embedding(h, g, emb).ok)
    throw std::logic_error("branch-set search produced an invalid embedding");
  return emb;
}

struct OperationSearchOptions {
  std::size_t max_host_vertices = 8;
};

namespace detail {

// Restricted-growth enumeration of partitions of `items` into exactly
// `blocks` parts; returns true when the visitor accepts one.
inline bool each_partition(const std::vector<int>& items, int blocks,
                           const std::function<bool(const std::vector<std::vector<int>>&)>& visit) {
  const int n = static_cast<int>(items.size());
  if (blocks <= 0 || blocks > n) return false;
  std::vector<int> assign(static_cast<std::size_t>(n), 0);
  std::function<bool(int, int)> rec = [&](int i, int used) {
    if (n - i < blocks - used) return false;
    if (i == n) {
      if (used != blocks) return false;
      std::vector<std::vector<int>> parts(static_cast<std::size_t>(blocks));
      for (int j = 0; j < n; ++j)
        parts[static_cast<std::size_t>(assign[static_cast<std::size_t>(j)])].push_back(
            items[static_cast<std::size_t>(j)]);
      return visit(parts);
    }
    const int limit = std::min(used, blocks - 1);
    for (int b = 0; b <= limit; ++b) {
      assign[static_cast<std::size_t>(i)] = b;
      if (rec(i + 1, b == used ? used + 1 : used)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

}  // namespace detail

// Independent oracle for Def-by-operations minors: enumerate a kept vertex
// set, a partition into connected blocks, and a block-to-vertex matching,
// then emit the concrete delete/contract sequence and re-check by replay.
inline std::optional<std::vector<MinorOperation>> minor_by_operations(
    const SimpleGraph& h, const SimpleGraph& g, OperationSearchOptions options = {}) {
  if (g.vertex_count() > options.max_host_vertices)
    throw resource_error("operation oracle limited to " +
                         std::to_string(options.max_host_vertices) + " host vertices, got " +
                         std::to_string(g.vertex_count()));
  if (h.vertex_count() > g.vertex_count()) return std::nullopt;
  if (h.edge_count() > g.edge_count()) return std::nullopt;

  const int n = static_cast<int>(g.vertex_count());
  const int k = static_cast<int>(h.vertex_count());

  if (k == 0) {
    std::vector<MinorOperation> ops;
    for (const VertexLabel& v : g.vertices())
      ops.push_back({MinorOpKind::delete_vertex, v, {}});
    return ops;
  }

  auto build_sequence = [&](const std::vector<std::vector<int>>& parts,
                            const std::vector<int>& part_to_h) -> std::vector<MinorOperation> {
    std::vector<MinorOperation> ops;
    SimpleGraph current = g;
    std::uint64_t kept = 0;
    for (const auto& part : parts)
      for (int v : part) kept |= std::uint64_t{1} << v;
    for (int v = 0; v < n; ++v) {
      if (kept & (std::uint64_t{1} << v)) continue;
      MinorOperation op{MinorOpKind::delete_vertex, g.label(v), {}};
      current = apply_operation(current, op);
      ops.push_back(std::move(op));
    }
    // Contract each block down to its smallest label.
    std::map<VertexLabel, VertexLabel> block_rep;  // final label -> h vertex
    for (std::size_t p = 0; p < parts.size(); ++p) {
      std::set<VertexLabel> members;
      for (int v : parts[p]) members.insert(g.label(v));
      while (members.size() > 1) {
        bool contracted = false;
        for (auto it = members.begin(); it != members.end() && !contracted; ++it) {
          for (auto jt = std::next(it); jt != members.end(); ++jt) {
            if (!current.has_edge(*it, *jt)) continue;
            MinorOperation op{MinorOpKind::contract_edge, *it, *jt};
            current = apply_operation(current, op);
            ops.push_back(op);
            const VertexLabel keep = std::min(op.a, op.b);
            members.erase(std::max(op.a, op.b));
            if (!members.count(keep)) members.insert(keep);
            contracted = true;
            break;
          }
        }
        if (!contracted) throw std::logic_error("operation oracle lost block connectivity");
      }
      block_rep.emplace(*members.begin(), h.label(part_to_h[p]));
    }
    // Drop surviving edges with no counterpart in the minor.
    for (const auto& [x, y] : current.edges()) {
      const VertexLabel& hx = block_rep.at(x);
      const VertexLabel& hy = block_rep.at(y);
      if (h.has_edge(hx, hy)) continue;
      MinorOperation op{MinorOpKind::delete_edge, x, y};
      current = apply_operation(current, op);
      ops.push_back(std::move(op));
    }
    if (!are_isomorphic(current, h)) throw std::logic_error("operation oracle replay mismatch");
    return ops;
  };

  // Blocks must be connected; the quotient may carry extra edges (deleted at
  // the end) but must contain every minor edge under some matching.
  std::optional<std::vector<MinorOperation>> found;
  auto try_partition = [&](const std::vector<std::vector<int>>& parts) -> bool {
    for (const auto& part : parts) {
      std::set<VertexLabel> block;
      for (int v : part) block.insert(g.label(v));
      if (!is_connected(induced_subgraph(g, block))) return false;
    }
    std::vector<std::vector<bool>> quotient(parts.size(),
                                            std::vector<bool>(parts.size(), false));
    for (std::size_t p = 0; p < parts.size(); ++p) {
      for (std::size_t q = p + 1; q < parts.size(); ++q) {
        bool touched = false;
        for (int v : parts[p]) {
          for (int w : parts[q]) {
            if (g.adjacent(v, w)) {
              touched = true;
              break;
            }
          }
          if (touched) break;
        }
        quotient[p][q] = quotient[q][p] = touched;
      }
    }
    std::vector<std::size_t> q_deg(parts.size(), 0);
    for (std::size_t p = 0; p < parts.size(); ++p)
      for (std::size_t q = 0; q < parts.size(); ++q)
        if (quotient[p][q]) ++q_deg[p];

    std::vector<int> part_to_h(parts.size(), -1);
    std::vector<bool> h_used(static_cast<std::size_t>(k), false);
    std::function<bool(std::size_t)> match = [&](std::size_t p) -> bool {
      if (p == parts.size()) return true;
      for (int hv = 0; hv < k; ++hv) {
        if (h_used[static_cast<std::size_t>(hv)]) continue;
        if (h.degree(hv) > q_deg[p]) continue;
        bool ok = true;
        for (std::size_t q = 0; q < p; ++q) {
          if (h.adjacent(hv, part_to_h[q]) && !quotient[p][q]) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        part_to_h[p] = hv;
        h_used[static_cast<std::size_t>(hv)] = true;
        if (match(p + 1)) return true;
        h_used[static_cast<std::size_t>(hv)] = false;
        part_to_h[p] = -1;
      }
      return false;
    };
    if (!match(0)) return false;
    found = build_sequence(parts, part_to_h);
    return true;
  };

  // Kept sets largest first, so isomorphic pairs yield the empty-deletion
  // route; masks ascend within one size for determinism.
  std::vector<std::uint64_t> masks;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
    if (std::popcount(m) >= k) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::popcount(a) > std::popcount(b);
  });
  for (std::uint64_t mask : masks) {
    std::vector<int> items;
    for (int v = 0; v < n; ++v)
      if (mask & (std::uint64_t{1} << v)) items.push_back(v);
    if (detail::each_partition(items, k, try_partition)) return found;
  }
  return std::nullopt;
}

}  // namespace semigraph

#pragma once
// Finite simple undirected graphs over string labels: construction with
// validation, induced subgraphs, connectivity, and exact isomorphism
// testing at small scale.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semigraph/errors.hpp"

namespace semigraph {

using VertexLabel = std::string;

// Immutable simple graph.  Vertices are kept sorted; adjacency is stored
// as sorted index lists.  No loops, no parallel edges.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  SimpleGraph(std::vector<VertexLabel> vertices,
              const std::vector<std::pair<VertexLabel, VertexLabel>>& edges) {
    std::sort(vertices.begin(), vertices.end());
    auto dup = std::adjacent_find(vertices.begin(), vertices.end());
    if (dup != vertices.end()) throw input_error("duplicate vertex label: " + *dup);
    verts_ = std::move(vertices);
    adj_.assign(verts_.size(), {});
    std::set<std::pair<int, int>> seen;
    for (const auto& [a, b] : edges) {
      int ia = checked_index(a);
      int ib = checked_index(b);
      if (ia == ib) throw input_error("loop edge rejected at vertex: " + a);
      auto key = std::minmax(ia, ib);
      if (!seen.insert(key).second) continue;
      adj_[static_cast<std::size_t>(ia)].push_back(ib);
      adj_[static_cast<std::size_t>(ib)].push_back(ia);
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
  }

  std::size_t vertex_count() const { return verts_.size(); }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& nbrs : adj_) twice += nbrs.size();
    return twice / 2;
  }

  const std::vector<VertexLabel>& vertices() const { return verts_; }

  const VertexLabel& label(int index) const { return verts_[static_cast<std::size_t>(index)]; }

  std::optional<int> index_of(const VertexLabel& v) const {
    auto it = std::lower_bound(verts_.begin(), verts_.end(), v);
    if (it == verts_.end() || *it != v) return std::nullopt;
    return static_cast<int>(it - verts_.begin());
  }

  bool has_vertex(const VertexLabel& v) const { return index_of(v).has_value(); }

  const std::vector<int>& neighbors(int index) const {
    return adj_[static_cast<std::size_t>(index)];
  }

  std::size_t degree(int index) const { return adj_[static_cast<std::size_t>(index)].size(); }

  bool adjacent(int a, int b) const {
    const auto& nbrs = adj_[static_cast<std::size_t>(a)];
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
  }

  bool has_edge(const VertexLabel& a, const VertexLabel& b) const {
    auto ia = index_of(a);
    auto ib = index_of(b);
    return ia && ib && adjacent(*ia, *ib);
  }

  // Edges with endpoints in label order, list sorted.
  std::vector<std::pair<VertexLabel, VertexLabel>> edges() const {
    std::vector<std::pair<VertexLabel, VertexLabel>> out;
    for (int i = 0; i < static_cast<int>(verts_.size()); ++i) {
      for (int j : neighbors(i)) {
        if (i < j) out.emplace_back(label(i), label(j));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  int checked_index(const VertexLabel& v) const {
    auto idx = index_of(v);
    if (!idx) throw input_error("edge endpoint is not a vertex: " + v);
    return *idx;
  }

  std::vector<VertexLabel> verts_;
  std::vector<std::vector<int>> adj_;
};

inline SimpleGraph induced_subgraph(const SimpleGraph& g, const std::set<VertexLabel>& keep) {
  std::vector<int> indices;
  for (const VertexLabel& v : keep) {
    auto idx = g.index_of(v);
    if (!idx) throw input_error("induced_subgraph: vertex not in graph: " + v);
    indices.push_back(*idx);
  }
  std::vector<VertexLabel> vertices(keep.begin(), keep.end());
  std::vector<std::pair<VertexLabel, VertexLabel>> edges;
  for (int i : indices) {
    for (int j : g.neighbors(i)) {
      if (i < j && keep.count(g.label(j))) edges.emplace_back(g.label(i), g.label(j));
    }
  }
  return SimpleGraph(std::move(vertices), edges);
}

// The empty graph and singletons count as connected.
inline bool is_connected(const SimpleGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n <= 1) return true;
  std::vector<bool> seen(n, false);
  std::vector<int> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    for (int w : g.neighbors(v)) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  return reached == n;
}

// Maximal connected blocks, each sorted, ordered by smallest member.
inline std::vector<std::vector<VertexLabel>> connected_components(const SimpleGraph& g) {
  const int n = static_cast<int>(g.vertex_count());
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<std::vector<VertexLabel>> blocks;
  for (int start = 0; start < n; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> queue{start};
    seen[static_cast<std::size_t>(start)] = true;
    std::vector<VertexLabel> block;
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      block.push_back(g.label(v));
      for (int w : g.neighbors(v)) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          queue.push_back(w);
        }
      }
    }
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  return blocks;
}

// Validates that `bijection` maps V(g) onto V(h) preserving edges in both
// directions.  Shared post-check for every isomorphism witness.
inline bool is_isomorphism(const SimpleGraph& g, const SimpleGraph& h,
                           const std::map<VertexLabel, VertexLabel>& bijection) {
  if (g.vertex_count() != h.vertex_count()) return false;
  if (g.edge_count() != h.edge_count()) return false;
  if (bijection.size() != g.vertex_count()) return false;
  std::set<VertexLabel> image;
  for (const auto& [from, to] : bijection) {
    if (!g.has_vertex(from) || !h.has_vertex(to)) return false;
    if (!image.insert(to).second) return false;
  }
  for (const auto& [a, b] : g.edges()) {
    if (!h.has_edge(bijection.at(a), bijection.at(b))) return false;
  }
  return true;
}

struct IsomorphismOptions {
  std::size_t max_vertices = 12;
};

namespace detail {

// Joint color refinement; returns per-graph color vectors with colors drawn
// from one shared palette.
inline std::pair<std::vector<int>, std::vector<int>> refine_colors(const SimpleGraph& g,
                                                                   const SimpleGraph& h) {
  const std::size_t n = g.vertex_count();
  std::vector<int> cg(n), ch(n);
  for (std::size_t i = 0; i < n; ++i) cg[i] = static_cast<int>(g.degree(static_cast<int>(i)));
  for (std::size_t i = 0; i < n; ++i) ch[i] = static_cast<int>(h.degree(static_cast<int>(i)));
  for (std::size_t round = 0; round < n; ++round) {
    using Signature = std::pair<int, std::vector<int>>;
    std::map<Signature, int> palette;
    auto signature = [](const SimpleGraph& graph, const std::vector<int>& colors, int v) {
      std::vector<int> nbr;
      for (int w : graph.neighbors(v)) nbr.push_back(colors[static_cast<std::size_t>(w)]);
      std::sort(nbr.begin(), nbr.end());
      return Signature{colors[static_cast<std::size_t>(v)], std::move(nbr)};
    };
    std::vector<Signature> sg(n), sh(n);
    for (std::size_t i = 0; i < n; ++i) sg[i] = signature(g, cg, static_cast<int>(i));
    for (std::size_t i = 0; i < n; ++i) sh[i] = signature(h, ch, static_cast<int>(i));
    for (const auto& s : sg) palette.emplace(s, 0);
    for (const auto& s : sh) palette.emplace(s, 0);
    int next = 0;
    for (auto& [sig, color] : palette) color = next++;
    std::vector<int> ng(n), nh(n);
    for (std::size_t i = 0; i < n; ++i) ng[i] = palette.at(sg[i]);
    for (std::size_t i = 0; i < n; ++i) nh[i] = palette.at(sh[i]);
    if (ng == cg && nh == ch) break;
    cg = std::move(ng);
    ch = std::move(nh);
  }
  return {cg, ch};
}

inline bool extend_isomorphism(const SimpleGraph& g, const SimpleGraph& h,
                               const std::vector<int>& order, std::size_t depth,
                               const std::vector<int>& cg, const std::vector<int>& ch,
                               std::vector<int>& g_to_h, std::vector<bool>& used) {
  if (depth == order.size()) return true;
  const int v = order[depth];
  for (std::size_t hw = 0; hw < h.vertex_count(); ++hw) {
    const int w = static_cast<int>(hw);
    if (used[hw]) continue;
    if (ch[hw] != cg[static_cast<std::size_t>(v)]) continue;
    bool consistent = true;
    for (std::size_t d = 0; d < depth; ++d) {
      const int placed = order[d];
      if (g.adjacent(v, placed) != h.adjacent(w, g_to_h[static_cast<std::size_t>(placed)])) {
        consistent = false;
        break;
      }
    }
    if (!consistent) continue;
    g_to_h[static_cast<std::size_t>(v)] = w;
    used[hw] = true;
    if (extend_isomorphism(g, h, order, depth + 1, cg, ch, g_to_h, used)) return true;
    used[hw] = false;
    g_to_h[static_cast<std::size_t>(v)] = -1;
  }
  return false;
}

}  // namespace detail

// Edge-preserving bijection V(g) -> V(h), or nullopt.  Degree and color
// refinement prune before backtracking; any found witness is re-validated
// edge by edge.  Equal vertex counts above the size limit raise a
// resource_error rather than risking an incomplete search.
inline std::optional<std::map<VertexLabel, VertexLabel>> are_isomorphic(
    const SimpleGraph& g, const SimpleGraph& h, IsomorphismOptions options = {}) {
  if (g.vertex_count() != h.vertex_count()) return std::nullopt;
  if (g.edge_count() != h.edge_count()) return std::nullopt;
  if (g.vertex_count() > options.max_vertices)
    throw resource_error("isomorphism search limited to " +
                         std::to_string(options.max_vertices) + " vertices, got " +
                         std::to_string(g.vertex_count()));
  const std::size_t n = g.vertex_count();
  auto [cg, ch] = detail::refine_colors(g, h);
  {
    auto hist = [](std::vector<int> colors) {
      std::sort(colors.begin(), colors.end());
      return colors;
    };
    if (hist(cg) != hist(ch)) return std::nullopt;
  }
  // Assign rare colors first.
  std::map<int, int> frequency;
  for (int c : cg) ++frequency[c];
  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const int fa = frequency.at(cg[static_cast<std::size_t>(a)]);
    const int fb = frequency.at(cg[static_cast<std::size_t>(b)]);
    if (fa != fb) return fa < fb;
    return a < b;
  });
  std::vector<int> g_to_h(n, -1);
  std::vector<bool> used(n, false);
  if (!detail::extend_isomorphism(g, h, order, 0, cg, ch, g_to_h, used)) return std::nullopt;
  std::map<VertexLabel, VertexLabel> bijection;
  for (std::size_t i = 0; i < n; ++i)
    bijection.emplace(g.label(static_cast<int>(i)), h.label(g_to_h[i]));
  if (!is_isomorphism(g, h, bijection))
    throw std::logic_error("isomorphism search produced an invalid witness");
  return bijection;
}

}  // namespace semigraph

#pragma once
// The dictionary between element sets and graphs: gcd graphs of finite
// subsets, and realization of an arbitrary graph as such a subset.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semigraph/errors.hpp"
#include "semigraph/graph.hpp"
#include "semigraph/semigroup.hpp"

namespace semigraph {

struct GcdGraphResult {
  SimpleGraph graph;
  std::map<VertexLabel, FactoredElement> element_of;
};

// Graph on the elements of M with an edge wherever the gcd is a non-unit.
// Vertices are the canonical labels; units are legal members and end up
// isolated.  Duplicate canonical forms are rejected by name.
inline GcdGraphResult build_gcd_graph(const SemigroupContext& context,
                                      const std::vector<FactoredElement>& elements) {
  GcdGraphResult out;
  std::vector<VertexLabel> vertices;
  for (const FactoredElement& x : elements) {
    context.require_valid(x);
    VertexLabel label = canonical_label(x);
    if (!out.element_of.emplace(label, x).second)
      throw input_error("duplicate element in set: " + label);
    vertices.push_back(std::move(label));
  }
  std::vector<std::pair<VertexLabel, VertexLabel>> edges;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      if (!is_unit(gcd(elements[i], elements[j])))
        edges.emplace_back(canonical_label(elements[i]), canonical_label(elements[j]));
    }
  }
  out.graph = SimpleGraph(std::move(vertices), edges);
  return out;
}

struct Realization {
  SemigroupContext context;
  std::vector<FactoredElement> elements;
  std::map<VertexLabel, FactoredElement> element_of;
};

namespace detail {

// Consecutive primes 2, 3, 5, ... from the sieve, then by direct testing.
class PrimeStream {
 public:
  std::uint64_t next() {
    const auto& primes = small_primes();
    if (index_ < primes.size()) return last_ = primes[index_++];
    std::uint64_t candidate = last_ + 1;
    while (!is_prime_u64(candidate)) ++candidate;
    return last_ = candidate;
  }

 private:
  std::size_t index_ = 0;
  std::uint64_t last_ = 1;
};

}  // namespace detail

// Inverse direction of the dictionary: a set of elements whose gcd graph is
// isomorphic to g.  Every vertex gets a fresh prime, every edge gets a
// fresh prime, and the element of a vertex is its own prime times the
// primes of its incident edges.  Two elements then share a prime exactly
// when the vertices share an edge, and the vertex primes keep elements
// distinct and non-unit.  The vertex-to-element map is validated as a
// graph isomorphism before returning.
inline Realization realize_graph(const SimpleGraph& g, Backend backend = Backend::naturals) {
  const auto edges = g.edges();
  std::map<VertexLabel, PrimeSymbol> vertex_prime;
  std::map<std::pair<VertexLabel, VertexLabel>, PrimeSymbol> edge_prime;
  std::set<PrimeSymbol> universe;
  if (backend == Backend::naturals) {
    detail::PrimeStream primes;
    for (const VertexLabel& v : g.vertices())
      vertex_prime.emplace(v, PrimeSymbol::number(primes.next()));
    for (const auto& e : edges) edge_prime.emplace(e, PrimeSymbol::number(primes.next()));
  } else {
    std::uint64_t serial = 0;
    for (const VertexLabel& v : g.vertices()) {
      PrimeSymbol p = PrimeSymbol::name("v" + std::to_string(++serial));
      universe.insert(p);
      vertex_prime.emplace(v, std::move(p));
    }
    serial = 0;
    for (const auto& e : edges) {
      PrimeSymbol p = PrimeSymbol::name("e" + std::to_string(++serial));
      universe.insert(p);
      edge_prime.emplace(e, std::move(p));
    }
  }

  Realization out{backend == Backend::naturals ? SemigroupContext::naturals()
                                               : SemigroupContext::free_fcsg(universe),
                  {},
                  {}};
  for (const VertexLabel& v : g.vertices()) {
    std::map<PrimeSymbol, std::uint64_t> exps;
    exps.emplace(vertex_prime.at(v), 1);
    for (const auto& e : edges) {
      if (e.first == v || e.second == v) exps.emplace(edge_prime.at(e), 1);
    }
    FactoredElement x = FactoredElement::from_exponents(std::move(exps));
    if (backend == Backend::naturals && !evaluate(x))
      throw resource_error("realized element for vertex " + v +
                           " exceeds 64 bits; use the free backend");
    out.element_of.emplace(v, x);
    out.elements.push_back(std::move(x));
  }

  GcdGraphResult rebuilt = build_gcd_graph(out.context, out.elements);
  std::map<VertexLabel, VertexLabel> bijection;
  for (const auto& [v, x] : out.element_of) bijection.emplace(v, canonical_label(x));
  if (!is_isomorphism(g, rebuilt.graph, bijection))
    throw std::logic_error("realization failed its gcd-graph round-trip");
  return out;
}

}  // namespace semigraph

// Command-line surface: every library operation behind one subcommand with
// JSON input and output.  Exit codes: 0 answered yes / computed, 1 answered
// no, 2 bad input, 3 out of budget or capacity.

#include <cstdint>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "semigraph/semigraph.hpp"

namespace sg = semigraph;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_no = 1;
constexpr int exit_input = 2;
constexpr int exit_resource = 3;

int emit(const sg::ordered_json& j, int code) {
  std::cout << j.dump(2) << "\n";
  return code;
}

sg::SemigroupContext merge_contexts(const sg::ParsedSet& a, const sg::ParsedSet& b) {
  if (a.context.backend() != b.context.backend())
    throw sg::input_error("the two sets use different backends");
  if (a.context.backend() == sg::Backend::naturals) return sg::SemigroupContext::naturals();
  std::set<sg::PrimeSymbol> universe = a.context.prime_universe();
  universe.insert(b.context.prime_universe().begin(), b.context.prime_universe().end());
  return sg::SemigroupContext::free_fcsg(std::move(universe));
}

sg::FactoredElement parse_element_text(const std::string& text, sg::Backend backend) {
  if (backend == sg::Backend::naturals)
    return sg::factorize(sg::detail::parse_u64_text(text));
  sg::ordered_json j = sg::ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) throw sg::input_error("element must be valid JSON: " + text);
  return sg::detail::parse_primes_object(j, nullptr);
}

sg::ordered_json element_table_json(const std::map<sg::VertexLabel, sg::FactoredElement>& table) {
  sg::ordered_json out = sg::ordered_json::object();
  for (const auto& [v, x] : table) out[v] = sg::element_to_json(x);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gcd graphs, exact graph minors, and verified set partitions"};
  app.require_subcommand(1);

  std::string arg_a, arg_b, file_a, file_b;
  std::uint64_t budget = sg::MinorSearchOptions{}.node_budget;
  std::string backend_arg = "naturals";
  std::string k0_text;
  bool use_oracle = false;
  bool all_pairs = false;
  bool want_full = false;

  auto* factor_cmd = app.add_subcommand("factor", "factor a natural number >= 1");
  factor_cmd->add_option("n", arg_a, "the number")->required();

  auto* gcd_cmd = app.add_subcommand("gcd", "gcd of two natural numbers");
  gcd_cmd->add_option("a", arg_a, "first number")->required();
  gcd_cmd->add_option("b", arg_b, "second number")->required();

  auto* gcdgraph_cmd = app.add_subcommand("gcdgraph", "gcd graph of an element set");
  gcdgraph_cmd->add_option("set", file_a, "JSON set file")->required();

  auto* realize_cmd = app.add_subcommand("realize", "element set whose gcd graph matches");
  realize_cmd->add_option("graph", file_a, "JSON graph file")->required();
  realize_cmd->add_option("--backend", backend_arg, "naturals or free")
      ->check(CLI::IsMember({"naturals", "free"}));

  auto* minor_cmd = app.add_subcommand("minor", "test H <= G, emitting a witness");
  minor_cmd->add_option("H", file_a, "JSON graph file, the minor")->required();
  minor_cmd->add_option("G", file_b, "JSON graph file, the host")->required();
  minor_cmd->add_flag("--oracle", use_oracle, "use the delete/contract oracle");
  minor_cmd->add_option("--budget", budget, "search node budget");

  auto* iso_cmd = app.add_subcommand("iso", "test graph isomorphism");
  iso_cmd->add_option("G1", file_a, "JSON graph file")->required();
  iso_cmd->add_option("G2", file_b, "JSON graph file")->required();

  auto* partition_cmd = app.add_subcommand("partition", "partition one set along another");
  partition_cmd->add_option("Mh", file_a, "JSON set file, the index set")->required();
  partition_cmd->add_option("Mg", file_b, "JSON set file, the partitioned set")->required();
  partition_cmd->add_flag("--full", want_full, "extend to a full partition");
  partition_cmd->add_option("--k0", k0_text, "merge block for the full partition");
  partition_cmd->add_option("--budget", budget, "search node budget");

  auto* scan_cmd = app.add_subcommand("scan", "color a sequence and demonstrate partitions");
  scan_cmd->add_option("sequence", file_a, "JSON sequence file")->required();
  scan_cmd->add_flag("--all-pairs", all_pairs, "demonstrate every green pair");
  scan_cmd->add_option("--budget", budget, "search node budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  }

  try {
    if (*factor_cmd) {
      const std::uint64_t n = sg::detail::parse_u64_text(arg_a);
      const sg::FactoredElement x = sg::factorize(n);
      sg::ordered_json primes = sg::ordered_json::object();
      for (const auto& [symbol, exponent] : x.exponents())
        primes[symbol.text()] = sg::natural_to_json(exponent);
      return emit(sg::ordered_json{{"input", sg::natural_to_json(n)},
                                   {"primes", std::move(primes)},
                                   {"text", sg::factored_text(x)}},
                  exit_ok);
    }

    if (*gcd_cmd) {
      const sg::FactoredElement a = sg::factorize(sg::detail::parse_u64_text(arg_a));
      const sg::FactoredElement b = sg::factorize(sg::detail::parse_u64_text(arg_b));
      return emit(sg::ordered_json{{"gcd", sg::element_to_json(sg::gcd(a, b))}}, exit_ok);
    }

    if (*gcdgraph_cmd) {
      const sg::ParsedSet set = sg::parse_set_json(sg::load_json_file(file_a));
      const sg::GcdGraphResult result = sg::build_gcd_graph(set.context, set.elements);
      return emit(sg::ordered_json{{"backend", sg::backend_name(set.context.backend())},
                                   {"graph", sg::graph_to_json(result.graph)},
                                   {"element_of", element_table_json(result.element_of)}},
                  exit_ok);
    }

    if (*realize_cmd) {
      const sg::SimpleGraph g = sg::parse_graph_json(sg::load_json_file(file_a));
      const sg::Backend backend =
          backend_arg == "free" ? sg::Backend::free_fcsg : sg::Backend::naturals;
      const sg::Realization real = sg::realize_graph(g, backend);
      return emit(sg::ordered_json{{"backend", sg::backend_name(backend)},
                                   {"elements", sg::element_list_to_json(real.elements)},
                                   {"element_of", element_table_json(real.element_of)}},
                  exit_ok);
    }

    if (*minor_cmd) {
      const sg::SimpleGraph h = sg::parse_graph_json(sg::load_json_file(file_a));
      const sg::SimpleGraph g = sg::parse_graph_json(sg::load_json_file(file_b));
      if (use_oracle) {
        auto ops = sg::minor_by_operations(h, g);
        if (!ops) return emit(sg::ordered_json{{"minor", false}}, exit_no);
        return emit(sg::ordered_json{{"minor", true}, {"operations", sg::operations_to_json(*ops)}},
                    exit_ok);
      }
      auto emb = sg::find_minor_embedding(h, g, {budget});
      if (!emb) return emit(sg::ordered_json{{"minor", false}}, exit_no);
      sg::ordered_json out{{"minor", true}};
      out["branch_sets"] = sg::embedding_to_json(*emb)["branch_sets"];
      return emit(out, exit_ok);
    }

    if (*iso_cmd) {
      const sg::SimpleGraph a = sg::parse_graph_json(sg::load_json_file(file_a));
      const sg::SimpleGraph b = sg::parse_graph_json(sg::load_json_file(file_b));
      auto bijection = sg::are_isomorphic(a, b);
      if (!bijection) return emit(sg::ordered_json{{"isomorphic", false}}, exit_no);
      sg::ordered_json map = sg::ordered_json::object();
      for (const auto& [from, to] : *bijection) map[from] = to;
      return emit(sg::ordered_json{{"isomorphic", true}, {"bijection", std::move(map)}}, exit_ok);
    }

    if (*partition_cmd) {
      const sg::ParsedSet m_h = sg::parse_set_json(sg::load_json_file(file_a));
      const sg::ParsedSet m_g = sg::parse_set_json(sg::load_json_file(file_b));
      const sg::SemigroupContext context = merge_contexts(m_h, m_g);
      const sg::GcdGraphResult gh = sg::build_gcd_graph(context, m_h.elements);
      const sg::GcdGraphResult gg = sg::build_gcd_graph(context, m_g.elements);
      auto emb = sg::find_minor_embedding(gh.graph, gg.graph, {budget});
      if (!emb) return emit(sg::ordered_json{{"minor", false}}, exit_no);
      sg::PartitionResult partial =
          sg::construct_partial_partition(context, m_h.elements, m_g.elements, *emb);
      const sg::PartitionReport partial_report =
          sg::verify_partition(context, m_h.elements, m_g.elements, partial);
      sg::ordered_json out{
          {"pair", sg::ordered_json::array({1, 2})},
          {"embedding", sg::embedding_to_json(*emb)},
          {"partial_partition", sg::partition_to_json(partial)},
          {"partial_report", sg::partition_report_to_json(partial_report)},
          {"full_partition", nullptr},
          {"full_report", nullptr}};
      if (want_full) {
        const sg::FactoredElement k0 =
            k0_text.empty() ? sg::default_k0(m_h.elements)
                            : parse_element_text(k0_text, context.backend());
        const sg::PartitionResult full =
            sg::extend_to_full_partition(context, partial, m_h.elements, m_g.elements, k0);
        out["full_partition"] = sg::partition_to_json(full);
        out["full_report"] = sg::partition_report_to_json(
            sg::verify_partition(context, m_h.elements, m_g.elements, full));
      }
      return emit(out, exit_ok);
    }

    if (*scan_cmd) {
      const sg::SubsetSequence seq = sg::parse_sequence_json(sg::load_json_file(file_a));
      sg::ScanOptions options;
      options.all_pairs = all_pairs;
      options.search.node_budget = budget;
      return emit(sg::scan_to_json(sg::scan_and_demonstrate(seq, options)), exit_ok);
    }
  } catch (const sg::input_error& e) {
    return emit(sg::ordered_json{{"error", e.what()}}, exit_input);
  } catch (const sg::resource_error& e) {
    return emit(sg::ordered_json{{"error", e.what()}}, exit_resource);
  }

  return exit_input;
}

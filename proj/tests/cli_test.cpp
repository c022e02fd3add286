#include <semigraph/semigraph.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "test_util.hpp"

using namespace semigraph;
using testutil::run_cli;
using testutil::sample_path;

namespace {

ordered_json parsed(const std::string& text) { return ordered_json::parse(text); }

}  // namespace

TEST_CASE("factor subcommand", "[cli]") {
    const auto r = run_cli("factor 360");
    REQUIRE(r.exit_code == 0);
    const ordered_json j = parsed(r.output);
    REQUIRE(j["input"] == ordered_json(360));
    REQUIRE(j["primes"] == ordered_json::parse(R"({"2": 3, "3": 2, "5": 1})"));
    REQUIRE(j["text"] == ordered_json("2^3*3^2*5"));

    const auto unit = run_cli("factor 1");
    REQUIRE(unit.exit_code == 0);
    REQUIRE(parsed(unit.output)["text"] == ordered_json("e"));

    const auto zero = run_cli("factor 0");
    REQUIRE(zero.exit_code == 2);
    REQUIRE(parsed(zero.output).contains("error"));

    const auto text = run_cli("factor abc");
    REQUIRE(text.exit_code == 2);
    REQUIRE(parsed(text.output).contains("error"));
}

TEST_CASE("gcd subcommand", "[cli]") {
    const auto r = run_cli("gcd 12 18");
    REQUIRE(r.exit_code == 0);
    REQUIRE(parsed(r.output) == ordered_json::parse(R"({"gcd": 6})"));

    const auto coprime = run_cli("gcd 4 9");
    REQUIRE(coprime.exit_code == 0);
    REQUIRE(parsed(coprime.output) == ordered_json::parse(R"({"gcd": 1})"));

    REQUIRE(run_cli("gcd 12").exit_code == 2);  // missing operand
}

TEST_CASE("gcdgraph subcommand", "[cli]") {
    const auto r = run_cli("gcdgraph " + sample_path("set_demo.json"));
    REQUIRE(r.exit_code == 0);
    const ordered_json j = parsed(r.output);
    REQUIRE(j["backend"] == ordered_json("naturals"));
    REQUIRE(j["graph"]["vertices"] == ordered_json::parse(R"(["10", "15", "6", "7"])"));
    REQUIRE(j["graph"]["edges"] == ordered_json::parse(R"([["10", "15"], ["10", "6"], ["15", "6"]])"));
    REQUIRE(j["element_of"]["7"] == ordered_json(7));

    const testutil::TempFile dup("[6, 6]");
    const auto bad = run_cli("gcdgraph " + dup.path());
    REQUIRE(bad.exit_code == 2);
    REQUIRE(parsed(bad.output)["error"].get<std::string>().find("duplicate") != std::string::npos);

    const auto free_run = run_cli("gcdgraph " + sample_path("free_set.json"));
    REQUIRE(free_run.exit_code == 0);
    const ordered_json fj = parsed(free_run.output);
    REQUIRE(fj["backend"] == ordered_json("free"));
    REQUIRE(fj["graph"]["vertices"] == ordered_json::parse(R"(["p*q", "q*r", "r*s"])"));
    REQUIRE(fj["graph"]["edges"] == ordered_json::parse(R"([["p*q", "q*r"], ["q*r", "r*s"]])"));
}

TEST_CASE("realize subcommand", "[cli]") {
    const auto r = run_cli("realize " + sample_path("p3.json"));
    REQUIRE(r.exit_code == 0);
    const ordered_json j = parsed(r.output);
    REQUIRE(j["backend"] == ordered_json("naturals"));
    REQUIRE(j["elements"] == ordered_json::parse("[14, 55, 231]"));
    REQUIRE(j["element_of"] == ordered_json::parse(R"({"u": 14, "v": 231, "w": 55})"));

    const auto free_run = run_cli("realize " + sample_path("p3.json") + " --backend free");
    REQUIRE(free_run.exit_code == 0);
    const ordered_json fj = parsed(free_run.output);
    REQUIRE(fj["backend"] == ordered_json("free"));
    // Feed the emitted set back through the library and compare graphs.
    const ParsedSet set = parse_set_json(fj["elements"]);
    const GcdGraphResult rebuilt = build_gcd_graph(set.context, set.elements);
    const SimpleGraph p3 = parse_graph_json(load_json_file(sample_path("p3.json")));
    REQUIRE(are_isomorphic(rebuilt.graph, p3).has_value());

    REQUIRE(run_cli("realize " + sample_path("p3.json") + " --backend other").exit_code == 2);
}

TEST_CASE("minor subcommand", "[cli]") {
    const auto yes = run_cli("minor " + sample_path("k3.json") + " " + sample_path("c4.json"));
    REQUIRE(yes.exit_code == 0);
    const ordered_json j = parsed(yes.output);
    REQUIRE(j["minor"] == ordered_json(true));
    REQUIRE(j["branch_sets"] == ordered_json::parse(R"({"a": ["a"], "b": ["b"], "c": ["c", "d"]})"));

    const auto no = run_cli("minor " + sample_path("k4.json") + " " + sample_path("c4.json"));
    REQUIRE(no.exit_code == 1);
    REQUIRE(parsed(no.output) == ordered_json::parse(R"({"minor": false})"));

    const auto deep = run_cli("minor " + sample_path("k5.json") + " " + sample_path("petersen.json"));
    REQUIRE(deep.exit_code == 0);
    const ordered_json dj = parsed(deep.output);
    REQUIRE(dj["minor"] == ordered_json(true));
    const MinorEmbedding emb = parse_embedding_json(
        ordered_json{{"branch_sets", dj["branch_sets"]}});
    const SimpleGraph k5 = parse_graph_json(load_json_file(sample_path("k5.json")));
    const SimpleGraph petersen = parse_graph_json(load_json_file(sample_path("petersen.json")));
    REQUIRE(verify_embedding(k5, petersen, emb).ok);

    const auto starved = run_cli("minor " + sample_path("k5.json") + " " + sample_path("petersen.json") +
                                 " --budget 1");
    REQUIRE(starved.exit_code == 3);
    REQUIRE(parsed(starved.output)["error"].get<std::string>().find("budget") != std::string::npos);
}

TEST_CASE("minor oracle flag replays to the minor", "[cli]") {
    const auto r = run_cli("minor --oracle " + sample_path("k3.json") + " " + sample_path("c4.json"));
    REQUIRE(r.exit_code == 0);
    const ordered_json j = parsed(r.output);
    REQUIRE(j["minor"] == ordered_json(true));
    const std::vector<MinorOperation> ops = parse_operations_json(j["operations"]);
    REQUIRE(ops.size() == 1);
    SimpleGraph current = parse_graph_json(load_json_file(sample_path("c4.json")));
    for (const MinorOperation& op : ops) current = apply_operation(current, op);
    const SimpleGraph k3 = parse_graph_json(load_json_file(sample_path("k3.json")));
    REQUIRE(are_isomorphic(current, k3).has_value());

    const auto no = run_cli("minor --oracle " + sample_path("k4.json") + " " + sample_path("c4.json"));
    REQUIRE(no.exit_code == 1);
}

TEST_CASE("iso subcommand", "[cli]") {
    const auto yes = run_cli("iso " + sample_path("c4.json") + " " + sample_path("c4_renamed.json"));
    REQUIRE(yes.exit_code == 0);
    const ordered_json j = parsed(yes.output);
    REQUIRE(j["isomorphic"] == ordered_json(true));
    std::map<VertexLabel, VertexLabel> bijection;
    for (const auto& [from, to] : j["bijection"].items()) bijection[from] = to.get<std::string>();
    const SimpleGraph a = parse_graph_json(load_json_file(sample_path("c4.json")));
    const SimpleGraph b = parse_graph_json(load_json_file(sample_path("c4_renamed.json")));
    REQUIRE(is_isomorphism(a, b, bijection));

    const auto no = run_cli("iso " + sample_path("k3.json") + " " + sample_path("p3.json"));
    REQUIRE(no.exit_code == 1);
    REQUIRE(parsed(no.output) == ordered_json::parse(R"({"isomorphic": false})"));
}

TEST_CASE("partition subcommand", "[cli]") {
    const std::string pair = sample_path("mh_demo.json") + " " + sample_path("mg_demo.json");

    const auto partial = run_cli("partition " + pair);
    REQUIRE(partial.exit_code == 0);
    const ordered_json j = parsed(partial.output);
    REQUIRE(j["pair"] == ordered_json::parse("[1, 2]"));
    REQUIRE(j["embedding"]["branch_sets"] == ordered_json::parse(R"({"10": ["4"], "6": ["6"]})"));
    REQUIRE(j["partial_partition"]["blocks"] == ordered_json::parse(R"({"6": [6], "10": [4]})"));
    REQUIRE(j["partial_report"]["ok"] == ordered_json(true));
    REQUIRE(j["full_partition"].is_null());
    REQUIRE(j["full_report"].is_null());

    const auto full = run_cli("partition --full " + pair);
    REQUIRE(full.exit_code == 0);
    const ordered_json fj = parsed(full.output);
    REQUIRE(fj["full_partition"]["blocks"] == ordered_json::parse(R"({"6": [6, 9, 35], "10": [4]})"));
    REQUIRE(fj["full_partition"]["exceptional_k0"] == ordered_json(6));
    REQUIRE(fj["full_partition"]["covers_all"] == ordered_json(true));
    REQUIRE(fj["full_report"]["ok"] == ordered_json(true));

    const auto other_k0 = run_cli("partition --full --k0 10 " + pair);
    REQUIRE(other_k0.exit_code == 0);
    const ordered_json oj = parsed(other_k0.output);
    REQUIRE(oj["full_partition"]["blocks"] == ordered_json::parse(R"({"6": [6], "10": [4, 9, 35]})"));
    REQUIRE(oj["full_partition"]["exceptional_k0"] == ordered_json(10));
    REQUIRE(oj["full_report"]["ok"] == ordered_json(true));

    REQUIRE(run_cli("partition --full --k0 7 " + pair).exit_code == 2);

    // Four isolated vertices cannot embed into a two-vertex graph.
    const testutil::TempFile wide("[2, 3, 5, 7]");
    const testutil::TempFile narrow("[4, 9]");
    const auto not_minor = run_cli("partition " + wide.path() + " " + narrow.path());
    REQUIRE(not_minor.exit_code == 1);
    REQUIRE(parsed(not_minor.output) == ordered_json::parse(R"({"minor": false})"));
}

TEST_CASE("partition over the free backend", "[cli]") {
    const testutil::TempFile m_h(R"([{"primes": {"p": 1}}, {"primes": {"p": 1, "q": 1}}])");
    const testutil::TempFile m_g(
        R"([{"primes": {"p": 2}}, {"primes": {"p": 1, "r": 1}}, {"primes": {"s": 1}}])");
    const auto r = run_cli("partition --full " + m_h.path() + " " + m_g.path());
    REQUIRE(r.exit_code == 0);
    const ordered_json j = parsed(r.output);
    REQUIRE(j["partial_report"]["ok"] == ordered_json(true));
    REQUIRE(j["full_report"]["ok"] == ordered_json(true));
    REQUIRE(j["full_partition"]["exceptional_k0"] == ordered_json::parse(R"({"primes": {"p": 1}})"));

    const testutil::TempFile nats("[6, 10]");
    const auto mixed = run_cli("partition " + nats.path() + " " + m_g.path());
    REQUIRE(mixed.exit_code == 2);
    REQUIRE(parsed(mixed.output)["error"].get<std::string>().find("different backends") != std::string::npos);
}

TEST_CASE("scan subcommand", "[cli]") {
    const auto r = run_cli("scan " + sample_path("seq_demo.json"));
    REQUIRE(r.exit_code == 0);
    const ordered_json j = parsed(r.output);
    REQUIRE(j["coloring"]["pairs"] == ordered_json::parse(R"([{"pair": [1, 2], "color": "green"}])"));
    REQUIRE(j["chain"] == ordered_json::parse("[1, 2]"));
    REQUIRE(j["demonstrations"].size() == 1);
    REQUIRE(j["demonstrations"][0]["full_report"]["ok"] == ordered_json(true));

    const auto kkk = run_cli("scan " + sample_path("seq_kkk.json"));
    REQUIRE(kkk.exit_code == 0);
    const ordered_json kj = parsed(kkk.output);
    REQUIRE(kj["coloring"]["pairs"] == ordered_json::parse(
                R"([{"pair": [1, 2], "color": "red"},
                    {"pair": [1, 3], "color": "green"},
                    {"pair": [2, 3], "color": "green"}])"));
    REQUIRE(kj["chain"] == ordered_json::parse("[1, 3]"));

    const testutil::TempFile towers("[[2], [2, 4], [2, 4, 8]]");
    const auto firsts = run_cli("scan " + towers.path());
    REQUIRE(parsed(firsts.output)["demonstrations"].size() == 2);
    const auto all = run_cli("scan --all-pairs " + towers.path());
    REQUIRE(parsed(all.output)["demonstrations"].size() == 3);

    const auto starved = run_cli("scan --budget 1 " + sample_path("seq_demo.json"));
    REQUIRE(starved.exit_code == 3);
    REQUIRE(parsed(starved.output)["error"].get<std::string>().find("pair (1,2)") != std::string::npos);
}

TEST_CASE("usage and input failures exit with code 2", "[cli]") {
    REQUIRE(run_cli("").exit_code == 2);
    REQUIRE(run_cli("conjure").exit_code == 2);
    REQUIRE(run_cli("factor 6 --frobnicate").exit_code == 2);
    REQUIRE(run_cli("--help").exit_code == 0);

    const auto missing = run_cli("gcdgraph /nonexistent/set.json");
    REQUIRE(missing.exit_code == 2);
    REQUIRE(parsed(missing.output)["error"].get<std::string>().find("cannot open file") != std::string::npos);

    const testutil::TempFile broken("{");
    const auto invalid = run_cli("gcdgraph " + broken.path());
    REQUIRE(invalid.exit_code == 2);
    REQUIRE(parsed(invalid.output)["error"].get<std::string>().find("invalid JSON") != std::string::npos);

    // A set file where a graph is expected.
    const auto wrong_shape = run_cli("minor " + sample_path("set_demo.json") + " " + sample_path("c4.json"));
    REQUIRE(wrong_shape.exit_code == 2);
}

TEST_CASE("repeated runs are byte-identical", "[cli]") {
    const std::vector<std::string> commands{
        "factor 360",
        "gcd 12 18",
        "gcdgraph " + sample_path("set_demo.json"),
        "gcdgraph " + sample_path("free_set.json"),
        "realize " + sample_path("p3.json"),
        "realize --backend free " + sample_path("star.json"),
        "minor " + sample_path("k3.json") + " " + sample_path("c4.json"),
        "minor " + sample_path("k5.json") + " " + sample_path("petersen.json"),
        "minor --oracle " + sample_path("k3.json") + " " + sample_path("c4.json"),
        "iso " + sample_path("c4.json") + " " + sample_path("c4_renamed.json"),
        "partition --full " + sample_path("mh_demo.json") + " " + sample_path("mg_demo.json"),
        "scan " + sample_path("seq_demo.json"),
        "scan --all-pairs " + sample_path("seq_kkk.json"),
    };
    for (const std::string& command : commands) {
        const auto first = run_cli(command);
        const auto second = run_cli(command);
        REQUIRE(first.exit_code == 0);
        REQUIRE(second.exit_code == first.exit_code);
        REQUIRE(second.output == first.output);
        REQUIRE_FALSE(first.output.empty());
    }
}

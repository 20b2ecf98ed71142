#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <variant>
#include <vector>

#include "sous/oracle.hpp"
#include "sous/selection.hpp"
#include "support.hpp"

using namespace sous;
using sous_test::Dahl;

namespace {

struct StitchedDahl {
    std::vector<Process> processes;
    RequiresGraph graph;
};

StitchedDahl stitched_dahl() {
    const Dahl d = sous_test::make_dahl();
    const auto result = select_content(d.dish, d.supplies, d.kb);
    const auto& action_list = std::get<SelectedContent>(result).action_list;
    auto [stitched, graph] = remove_and_stitch(action_list, build_requires_graph(action_list));
    return {std::move(stitched), std::move(graph)};
}

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("permutation filter finds the 40 dahl orders") {
    const auto fixture = stitched_dahl();
    const auto brute = oracle::all_orders_bruteforce(fixture.processes, fixture.graph);
    const auto mine = find_all_lists(fixture.graph);
    CHECK(brute.size() == 40);
    std::set<std::vector<ProcessId>> a, b;
    for (const auto& o : mine) a.insert(o.order);
    for (const auto& o : brute) b.insert(o.order);
    CHECK(a == b);
}

TEST_CASE("a chain admits one order, an antichain all of them") {
    auto chain = sous_test::abstract_processes({{1, 0}, {2, 0}, {3, 0}, {4, 0}});
    const RequiresGraph cg = sous_test::graph_of(chain, {{1, 0}, {2, 1}, {3, 2}});
    CHECK(oracle::all_orders_bruteforce(chain, cg).size() == 1);

    auto anti = sous_test::abstract_processes({{1, 0}, {2, 0}, {3, 0}});
    const RequiresGraph ag = sous_test::graph_of(anti, {});
    CHECK(oracle::all_orders_bruteforce(anti, ag).size() == 6);
}

TEST_CASE("size guards are hard errors") {
    auto nine = sous_test::abstract_processes(
        {{1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}});
    const RequiresGraph g = sous_test::graph_of(nine, {});
    CHECK_THROWS_AS(oracle::all_orders_bruteforce(nine, g), TooLarge);

    auto eight = sous_test::abstract_processes(
        {{1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}});
    const RequiresGraph g8 = sous_test::graph_of(eight, {});
    CHECK_THROWS_AS(oracle::min_makespan_bruteforce(eight, g8), TooLarge);
}

TEST_CASE("exhaustive minimum for the dahl instance is 3180") {
    const auto fixture = stitched_dahl();
    auto [makespan, witness] = oracle::min_makespan_bruteforce(fixture.processes, fixture.graph);
    CHECK(makespan == 3180);
    CHECK(coherence_violation(witness, fixture.graph).empty());
}

TEST_CASE("pairwise dependent processes cannot be packed at all") {
    auto processes = sous_test::abstract_processes({{100, 90}, {200, 150}, {300, 250}});
    const RequiresGraph g = sous_test::graph_of(processes, {{1, 0}, {2, 1}, {2, 0}});
    auto [makespan, witness] = oracle::min_makespan_bruteforce(processes, g);
    CHECK(makespan == 600);
    CHECK(witness.items.size() == 3);
}

TEST_CASE("the two-process packing example again, exhaustively") {
    auto processes = sous_test::abstract_processes({{100, 80}, {50, 0}});
    const RequiresGraph g = sous_test::graph_of(processes, {});
    auto [makespan, witness] = oracle::min_makespan_bruteforce(processes, g);
    CHECK(makespan == 100);
    REQUIRE(witness.items.size() == 1);
    CHECK(std::get<Combination>(witness.items[0]).insertees.size() == 1);
}

TEST_CASE("oracle never exceeds the optimizer") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        auto processes = sous_test::random_processes(rng, n, 600);
        const RequiresGraph g = sous_test::random_dag(rng, processes, 0.3);
        auto [plan, optimized] = optimize(processes, g);
        auto [brute, witness] = oracle::min_makespan_bruteforce(processes, g);
        CHECK(brute <= optimized);
        CHECK(coherence_violation(witness, g).empty());
    }
}

TEST_CASE("verify agrees on the dahl fixture") {
    const auto fixture = stitched_dahl();
    const auto report =
        oracle::compare_with_optimizer("dahl", fixture.processes, fixture.graph);
    CHECK(report.oracle_makespan <= report.optimizer_makespan);
    CHECK(report.optimizer_makespan == 3180);
    CHECK(report.agrees == (report.oracle_makespan == report.optimizer_makespan));
}

TEST_CASE("reports serialize to text and json") {
    auto processes = sous_test::abstract_processes({{100, 80}, {50, 0}});
    const RequiresGraph g = sous_test::graph_of(processes, {});
    auto report = oracle::compare_with_optimizer("tiny", processes, g);
    const std::string text = oracle::to_text(report);
    CHECK(text.find("instance: tiny") != std::string::npos);
    CHECK(text.find("agreement: yes") != std::string::npos);

    const auto dir = std::filesystem::temp_directory_path() / "sous_oracle_test";
    std::filesystem::remove_all(dir);
    const auto path = oracle::write_report(dir, report);
    CHECK(std::filesystem::exists(path));
    CHECK(std::filesystem::exists(dir / "tiny.txt"));
    std::ifstream in(path);
    nlohmann::json j;
    in >> j;
    CHECK(j.at("agrees").get<bool>());
    CHECK(j.at("optimizer_makespan").get<Seconds>() == 100);
    std::filesystem::remove_all(dir);
}

} // TEST_SUITE

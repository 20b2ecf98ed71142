#pragma once

#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sous/knowledge.hpp"
#include "sous/process.hpp"
#include "sous/scheduling.hpp"
#include "sous/strings.hpp"

namespace sous_test {

using namespace sous;

/// The vegetable-dahl scenario, built in code with the same content as
/// fixtures/dahl_kb.json. Ids follow compilation order.
struct Dahl {
    KnowledgeBase kb;
    StringSet supplies;
    DescriptiveString dish{"vegetable dahl"};

    static constexpr ProcessId chop_broccoli = 0;
    static constexpr ProcessId chop_carrot = 1;
    static constexpr ProcessId fry_vegetables = 2;
    static constexpr ProcessId ghost = 3;
    static constexpr ProcessId bring_to_boil = 4;
    static constexpr ProcessId boil_lentils = 5;
    static constexpr ProcessId strain_lentils = 6;
    static constexpr ProcessId mix_dahl = 7;
};

inline Process make_process(std::initializer_list<const char*> input,
                            std::initializer_list<const char*> output, Seconds time,
                            Seconds f_time, const char* direction) {
    Process p;
    for (const char* s : input) p.input.insert(DescriptiveString(s));
    for (const char* s : output) p.output.insert(DescriptiveString(s));
    p.time = time;
    p.f_time = f_time;
    p.direction = direction;
    return p;
}

inline Dahl make_dahl() {
    Dahl d;
    const auto actions = builtin_actions();
    std::vector<FoodClass> foods{
        {"broccoli", "raw", {{"chop", Indicator::duration(120)}}},
        {"carrot", "raw", {{"chop", Indicator::duration(120)}}},
        {"vegetables", "chopped", {{"fry", Indicator::duration(420)}}},
    };
    std::vector<Synonym> synonyms{
        {DescriptiveString("chopped vegetables"),
         StringSet{DescriptiveString("chopped broccoli"), DescriptiveString("chopped carrot")}},
    };
    std::vector<Process> custom{
        make_process({"water"}, {"boiling water"}, 300, 270,
                     "fill pot with water and bring to boil"),
        make_process({"lentils", "boiling water"}, {"boiled lentils in boiling water"}, 2700,
                     2670, "boil the lentils"),
        make_process({"boiled lentils in boiling water"}, {"boiled lentils"}, 60, 0,
                     "strain the lentils"),
        make_process({"fried vegetables", "coconut milk", "boiled lentils"}, {"vegetable dahl"},
                     120, 0, "mix the fried vegetables, coconut milk and boiled lentils"),
    };
    d.kb = produce_content(foods, actions, synonyms, custom);
    for (const char* s : {"coconut milk", "raw carrot", "raw broccoli", "lentils", "water"})
        d.supplies.insert(DescriptiveString(s));
    return d;
}

/// n processes with pairwise disjoint strings, so all dependence comes from
/// an explicitly supplied graph.
inline std::vector<Process> abstract_processes(const std::vector<std::pair<Seconds, Seconds>>& times) {
    std::vector<Process> out;
    for (std::size_t i = 0; i < times.size(); ++i) {
        Process p = make_process({}, {}, times[i].first, times[i].second,
                                 ("do step " + std::to_string(i)).c_str());
        p.id = static_cast<ProcessId>(i);
        p.input.insert(DescriptiveString("before " + std::to_string(i)));
        p.output.insert(DescriptiveString("after " + std::to_string(i)));
        out.push_back(std::move(p));
    }
    return out;
}

inline RequiresGraph graph_of(const std::vector<Process>& processes,
                              const std::vector<std::pair<ProcessId, ProcessId>>& edges) {
    std::vector<ProcessId> nodes;
    for (const auto& p : processes) nodes.push_back(p.id);
    return RequiresGraph(nodes, edges);
}

/// Random DAG: requires(i, j) only for j earlier in node order, so the
/// relation is acyclic by construction.
inline RequiresGraph random_dag(std::mt19937_64& rng, const std::vector<Process>& processes,
                                double edge_prob) {
    std::bernoulli_distribution coin(edge_prob);
    std::vector<std::pair<ProcessId, ProcessId>> edges;
    for (std::size_t i = 0; i < processes.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (coin(rng)) edges.emplace_back(processes[i].id, processes[j].id);
    return graph_of(processes, edges);
}

/// Random instance for scheduling properties: times in [1, max_time],
/// f_time in [0, time] with a bias toward 0.
inline std::vector<Process> random_processes(std::mt19937_64& rng, std::size_t n,
                                             Seconds max_time) {
    std::uniform_int_distribution<Seconds> time_dist(1, max_time);
    std::bernoulli_distribution has_free(0.6);
    std::vector<std::pair<Seconds, Seconds>> times;
    for (std::size_t i = 0; i < n; ++i) {
        const Seconds t = time_dist(rng);
        Seconds f = 0;
        if (has_free(rng)) f = std::uniform_int_distribution<Seconds>(0, t)(rng);
        times.emplace_back(t, f);
    }
    return abstract_processes(times);
}

} // namespace sous_test

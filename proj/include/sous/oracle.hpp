#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sous/compression.hpp"
#include "sous/errors.hpp"
#include "sous/process.hpp"
#include "sous/scheduling.hpp"

namespace sous::oracle {

inline constexpr std::size_t kMaxOrderNodes = 8;
inline constexpr std::size_t kMaxMakespanNodes = 7;

/// Filter of all |S|! permutations by the permissibility definition. A slow,
/// direct reading of the definition, kept independent of the enumerator it
/// checks.
inline std::vector<PermissibleOrder> all_orders_bruteforce(std::span<const Process> processes,
                                                           const RequiresGraph& g) {
    if (processes.size() > kMaxOrderNodes)
        throw TooLarge("permutation filter is limited to " + std::to_string(kMaxOrderNodes) +
                       " processes");
    std::vector<std::size_t> idx(processes.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<PermissibleOrder> out;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < idx.size() && ok; ++i)
            for (std::size_t j = i + 1; j < idx.size() && ok; ++j)
                if (g.depends_on(processes[idx[i]].id, processes[idx[j]].id)) ok = false;
        if (ok) {
            PermissibleOrder order;
            for (std::size_t i : idx) order.order.push_back(processes[i].id);
            out.push_back(std::move(order));
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

namespace detail {

/// First permissible order of the group graph, or nullopt if it is cyclic.
inline std::optional<std::vector<std::size_t>>
first_group_order(const std::vector<std::vector<char>>& group_edges) {
    const std::size_t k = group_edges.size();
    std::vector<char> used(k, 0);
    std::vector<std::size_t> order;
    for (std::size_t step = 0; step < k; ++step) {
        bool placed = false;
        for (std::size_t i = 0; i < k && !placed; ++i) {
            if (used[i]) continue;
            bool ready = true;
            for (std::size_t j = 0; j < k; ++j)
                if (!used[j] && j != i && group_edges[i][j]) {
                    ready = false;
                    break;
                }
            if (ready) {
                used[i] = 1;
                order.push_back(i);
                placed = true;
            }
        }
        if (!placed) return std::nullopt;
    }
    return order;
}

} // namespace detail

/// Exhaustive minimum over every flat insertion assignment: each process is
/// either top-level or inserted into exactly one top-level host, all
/// co-combined processes are pairwise independent, insertees fit the host's
/// free time, and the top level admits a permissible order under the
/// transferred requirement edges. Deliberately wider than the optimizer's
/// search: insertees need not have been contiguous anywhere.
inline std::pair<Seconds, RecipePlan> min_makespan_bruteforce(std::span<const Process> processes,
                                                              const RequiresGraph& g) {
    const std::size_t n = processes.size();
    if (n > kMaxMakespanNodes)
        throw TooLarge("makespan search is limited to " + std::to_string(kMaxMakespanNodes) +
                       " processes");
    if (n == 0) return {0, RecipePlan{}};

    constexpr std::size_t kTop = static_cast<std::size_t>(-1);
    std::vector<std::size_t> host(n, kTop); // host[i]: index hosting i, or kTop
    std::optional<Seconds> best_time;
    RecipePlan best_plan;

    auto consider = [&]() {
        // hosts must be top-level themselves
        for (std::size_t i = 0; i < n; ++i)
            if (host[i] != kTop && host[host[i]] != kTop) return;

        std::vector<std::vector<std::size_t>> group(n);
        std::vector<std::size_t> tops;
        for (std::size_t i = 0; i < n; ++i)
            if (host[i] == kTop) {
                group[i].push_back(i);
                tops.push_back(i);
            }
        for (std::size_t i = 0; i < n; ++i)
            if (host[i] != kTop) group[host[i]].push_back(i);

        Seconds makespan = 0;
        for (std::size_t t : tops) {
            makespan += processes[t].time;
            Seconds insertee_sum = 0;
            for (std::size_t m : group[t])
                if (m != t) insertee_sum += processes[m].time;
            if (insertee_sum > processes[t].f_time) return; // capacity
            for (std::size_t a : group[t])
                for (std::size_t b : group[t])
                    if (a < b && !g.independent(processes[a].id, processes[b].id))
                        return; // combined processes must be pairwise independent
        }
        if (best_time && makespan >= *best_time) return;

        // the transferred relation over the groups must admit an order
        std::vector<std::vector<char>> group_edges(tops.size(),
                                                   std::vector<char>(tops.size(), 0));
        for (std::size_t x = 0; x < tops.size(); ++x)
            for (std::size_t y = 0; y < tops.size(); ++y) {
                if (x == y) continue;
                for (std::size_t a : group[tops[x]])
                    for (std::size_t b : group[tops[y]])
                        if (g.depends_on(processes[a].id, processes[b].id))
                            group_edges[x][y] = 1;
            }
        auto order = detail::first_group_order(group_edges);
        if (!order) return;

        RecipePlan plan;
        for (std::size_t x : *order) {
            const std::size_t t = tops[x];
            if (group[t].size() == 1) {
                plan.items.emplace_back(processes[t]);
            } else {
                Combination combo;
                combo.host = processes[t];
                combo.host_original_direction = processes[t].direction;
                Seconds rem = processes[t].f_time;
                for (std::size_t m : group[t])
                    if (m != t) {
                        combo.insertees.push_back(processes[m]);
                        rem -= processes[m].time;
                    }
                combo.remaining_f_time = rem;
                plan.items.emplace_back(std::move(combo));
            }
        }
        best_time = makespan;
        best_plan = std::move(plan);
    };

    // Odometer over host choices, in process order; kTop first so the
    // first-found plan for a given makespan is the least-inserted one.
    // Hosting by an earlier process that is itself hosted is pruned here;
    // consider() re-checks the later-host case.
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == n) {
            consider();
            return;
        }
        host[i] = kTop;
        self(self, i + 1);
        for (std::size_t h = 0; h < n; ++h) {
            if (h == i) continue;
            if (h < i && host[h] != kTop) continue;
            host[i] = h;
            self(self, i + 1);
        }
        host[i] = kTop;
    };
    rec(rec, 0);

    if (!best_time) throw CyclicPrecedence("no coherent plan exists for the process set");
    return {*best_time, std::move(best_plan)};
}

/// Outcome of pitting the optimizer against the exhaustive search on one
/// instance.
struct OracleReport {
    std::string instance_id;
    Seconds optimizer_makespan = 0;
    Seconds oracle_makespan = 0;
    RecipePlan witness_plan;
    bool agrees = false;
};

inline OracleReport compare_with_optimizer(const std::string& instance_id,
                                           std::span<const Process> action_list,
                                           const RequiresGraph& g) {
    auto [plan, makespan] = optimize(action_list, g);
    auto [oracle_makespan, witness] = min_makespan_bruteforce(action_list, g);
    OracleReport report;
    report.instance_id = instance_id;
    report.optimizer_makespan = makespan;
    report.oracle_makespan = oracle_makespan;
    report.witness_plan = std::move(witness);
    report.agrees = makespan == oracle_makespan;
    return report;
}

namespace detail {

inline nlohmann::json plan_to_json(const RecipePlan& plan) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& item : plan.items) {
        nlohmann::json entry;
        entry["host"] = item_host(item).id;
        entry["direction"] = item_host(item).direction;
        nlohmann::json insertees = nlohmann::json::array();
        if (const auto* c = std::get_if<Combination>(&item))
            for (const auto& p : c->insertees) insertees.push_back(p.id);
        entry["insertees"] = std::move(insertees);
        items.push_back(std::move(entry));
    }
    return items;
}

} // namespace detail

inline std::string to_text(const OracleReport& r) {
    std::string out;
    out += "instance: " + r.instance_id + "\n";
    out += "optimizer makespan: " + std::to_string(r.optimizer_makespan) + "\n";
    out += "oracle makespan: " + std::to_string(r.oracle_makespan) + "\n";
    out += std::string("agreement: ") + (r.agrees ? "yes" : "NO") + "\n";
    if (r.oracle_makespan > r.optimizer_makespan)
        out += "INVARIANT VIOLATION: the optimizer's plan lies outside the search space\n";
    out += "oracle witness:\n";
    for (const auto& item : r.witness_plan.items) {
        out += "  " + std::to_string(item_host(item).id);
        if (const auto* c = std::get_if<Combination>(&item)) {
            out += " hosting";
            for (const auto& p : c->insertees) out += " " + std::to_string(p.id);
        }
        out += "\n";
    }
    return out;
}

/// Persist one report as both a text file and a JSON record; returns the JSON
/// path.
inline std::filesystem::path write_report(const std::filesystem::path& dir,
                                          const OracleReport& r) {
    std::filesystem::create_directories(dir);
    const auto json_path = dir / (r.instance_id + ".json");
    nlohmann::json j;
    j["instance_id"] = r.instance_id;
    j["optimizer_makespan"] = r.optimizer_makespan;
    j["oracle_makespan"] = r.oracle_makespan;
    j["agrees"] = r.agrees;
    j["witness_plan"] = detail::plan_to_json(r.witness_plan);
    std::ofstream(json_path) << j.dump(2) << "\n";
    std::ofstream(dir / (r.instance_id + ".txt")) << to_text(r);
    return json_path;
}

} // namespace sous::oracle

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "sous/errors.hpp"
#include "sous/process.hpp"
#include "sous/scheduling.hpp"

namespace sous {

/// One or more processes performed during another's free time. The host is
/// kept as-is; its pre-combination direction is recorded for the passive-time
/// report. Insertees are bare processes: combinations never nest.
struct Combination {
    Process host;
    std::string host_original_direction;
    std::vector<Process> insertees;
    Seconds remaining_f_time = 0;

    StringSet effective_input() const {
        StringSet s = host.input;
        for (const auto& p : insertees)
            for (const auto& str : p.input) s.insert(str);
        return s;
    }
    StringSet effective_output() const {
        StringSet s = host.output;
        for (const auto& p : insertees)
            for (const auto& str : p.output) s.insert(str);
        return s;
    }
};

using PlanItem = std::variant<Process, Combination>;

/// An ordered list of plan items; the schedule the recipe text is printed from.
struct RecipePlan {
    std::vector<PlanItem> items;
};

inline bool is_combination(const PlanItem& item) {
    return std::holds_alternative<Combination>(item);
}

inline const Process& item_host(const PlanItem& item) {
    if (const auto* c = std::get_if<Combination>(&item)) return c->host;
    return std::get<Process>(item);
}

/// Host time plus the free time still unconsumed at the item's end.
inline Seconds item_remaining_f_time(const PlanItem& item) {
    if (const auto* c = std::get_if<Combination>(&item)) return c->remaining_f_time;
    return std::get<Process>(item).f_time;
}

/// All processes carried by the item, host first.
inline std::vector<const Process*> item_members(const PlanItem& item) {
    std::vector<const Process*> out;
    if (const auto* c = std::get_if<Combination>(&item)) {
        out.push_back(&c->host);
        for (const auto& p : c->insertees) out.push_back(&p);
    } else {
        out.push_back(&std::get<Process>(item));
    }
    return out;
}

/// Condition for inserting p1 into a host: it fits in the free time that is
/// still left, and the two are independent.
inline bool can_insert(const Process& p1, Seconds remaining_f_time, bool are_independent) {
    return are_independent && p1.time <= remaining_f_time;
}

/// Sum of the times of everything not inserted into something else.
inline Seconds total_time(const RecipePlan& plan) {
    Seconds total = 0;
    for (const auto& item : plan.items) total += item_host(item).time;
    return total;
}

namespace detail {

/// Requirement between two member groups under the edge-transfer rule: a
/// combination inherits both the incoming and outgoing edges of its insertees.
inline bool group_depends_on(const std::vector<const Process*>& a,
                             const std::vector<const Process*>& b, const RequiresGraph& g) {
    for (const Process* pa : a)
        for (const Process* pb : b)
            if (g.depends_on(pa->id, pb->id)) return true;
    return false;
}

inline bool group_independent(const std::vector<const Process*>& a,
                              const std::vector<const Process*>& b, const RequiresGraph& g) {
    return !group_depends_on(a, b, g) && !group_depends_on(b, a, g);
}

} // namespace detail

/// Walk the list from last process to first, and for each host collect the
/// contiguous run of following processes that fit its free time and are
/// independent of it (and of each other); the run ends at the first process
/// that does not qualify. Before committing, look left for a host this one
/// could itself be inserted into later; if one exists, drop any collected
/// process that would block that bigger insertion. Survivors keep their
/// relative order.
inline RecipePlan concurrent_compression(const PermissibleOrder& order,
                                         std::span<const Process> processes,
                                         const RequiresGraph& g) {
    std::unordered_map<ProcessId, const Process*> by_id;
    for (const auto& p : processes) by_id[p.id] = &p;
    if (order.order.size() != processes.size())
        throw NotPermissible("order does not cover the process set");
    {
        std::set<ProcessId> distinct(order.order.begin(), order.order.end());
        if (distinct.size() != order.order.size())
            throw NotPermissible("order repeats a process");
    }
    for (ProcessId id : order.order)
        if (!by_id.count(id)) throw NotPermissible("order names a process outside the set");
    for (std::size_t i = 0; i < order.order.size(); ++i)
        for (std::size_t j = i + 1; j < order.order.size(); ++j)
            if (g.depends_on(order.order[i], order.order[j]))
                throw NotPermissible("list violates its requirement relation");

    std::vector<PlanItem> working;
    working.reserve(order.order.size());
    for (ProcessId id : order.order) working.emplace_back(*by_id.at(id));

    // Host positions are visited right to left; the positions to the left of
    // the cursor are still bare processes.
    for (std::size_t pos = working.size(); pos-- > 0;) {
        const Process host = std::get<Process>(working[pos]);
        if (host.f_time <= 0) continue;

        std::vector<std::size_t> concurrents; // indices into `working`, in scan order
        Seconds remaining = host.f_time;
        for (std::size_t s = pos + 1; s < working.size(); ++s) {
            if (is_combination(working[s])) break; // flat: a combination is not insertable
            const Process& candidate = std::get<Process>(working[s]);
            bool are_independent = g.independent(host.id, candidate.id);
            for (std::size_t c : concurrents) {
                if (!are_independent) break;
                are_independent =
                    are_independent && g.independent(std::get<Process>(working[c]).id, candidate.id);
            }
            if (!can_insert(candidate, remaining, are_independent)) break;
            concurrents.push_back(s);
            remaining -= candidate.time;
        }
        if (concurrents.empty()) continue;

        // Look-ahead: would performing these insertions cost us a later,
        // larger insertion of this host into some predecessor?
        std::optional<ProcessId> future_insertee_host;
        Seconds required_f_time = host.time;
        for (std::size_t q = pos; q-- > 0;) {
            const Process& prev = std::get<Process>(working[q]);
            if (!g.independent(host.id, prev.id)) break;
            if (prev.f_time >= required_f_time) {
                future_insertee_host = prev.id;
                break;
            }
            required_f_time += prev.time;
        }
        if (future_insertee_host) {
            std::vector<std::size_t> kept;
            for (std::size_t s : concurrents) {
                const Process& candidate = std::get<Process>(working[s]);
                if (g.independent(candidate.id, *future_insertee_host)) {
                    kept.push_back(s);
                } else {
                    remaining += candidate.time; // credit the forgone insertion back
                }
            }
            concurrents = std::move(kept);
        }
        if (concurrents.empty()) continue;

        Combination combo;
        combo.host = host;
        combo.host_original_direction = host.direction;
        combo.remaining_f_time = remaining;
        for (std::size_t s : concurrents) combo.insertees.push_back(std::get<Process>(working[s]));

        std::vector<PlanItem> next;
        next.reserve(working.size() - concurrents.size());
        for (std::size_t i = 0; i < working.size(); ++i) {
            if (i == pos) {
                next.emplace_back(combo);
            } else if (std::find(concurrents.begin(), concurrents.end(), i) == concurrents.end()) {
                next.push_back(std::move(working[i]));
            }
        }
        working = std::move(next);
    }

    return RecipePlan{std::move(working)};
}

/// Why a plan is incoherent, if it is. Empty string means coherent.
inline std::string coherence_violation(const RecipePlan& plan, const RequiresGraph& g) {
    const auto& items = plan.items;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto members = item_members(items[i]);
        // nothing combined with anything it depends on, either way
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b)
                if (!g.independent(members[a]->id, members[b]->id))
                    return "combination pairs dependent processes";
        // insertees fit the host's free time
        if (const auto* c = std::get_if<Combination>(&items[i])) {
            Seconds sum = 0;
            for (const auto& p : c->insertees) sum += p.time;
            if (sum > c->host.f_time) return "insertees exceed the host's free time";
            if (c->remaining_f_time != c->host.f_time - sum)
                return "remaining free time is inconsistent";
            if (c->insertees.empty()) return "combination without insertees";
        }
        // every requirement points backward across items
        for (std::size_t j = i + 1; j < items.size(); ++j)
            for (const Process* pa : members)
                for (const Process* pb : item_members(items[j]))
                    if (g.depends_on(pa->id, pb->id))
                        return "a process precedes one of its requirements";
    }
    return "";
}

/// Compress every permissible order of the (ghost-free) action list under the
/// given requirement graph and keep the plan with the least total time; ties
/// go to the earliest order in the deterministic enumeration.
inline std::pair<RecipePlan, Seconds> optimize(std::span<const Process> action_list,
                                               const RequiresGraph& g,
                                               std::size_t limit = kDefaultOrderLimit) {
    std::optional<RecipePlan> best;
    Seconds best_time = 0;
    std::size_t count = 0;
    const bool completed = detail::for_each_extension(g, [&](const std::vector<ProcessId>& order) {
        if (count >= limit) return false;
        ++count;
        RecipePlan plan = concurrent_compression(PermissibleOrder{order}, action_list, g);
        const Seconds t = total_time(plan);
        if (!best || t < best_time) {
            best = std::move(plan);
            best_time = t;
        }
        return true;
    });
    if (!completed)
        throw OrderExplosion(count, "more than " + std::to_string(limit) + " permissible orders");
    if (!best) {
        if (action_list.empty()) return {RecipePlan{}, 0};
        throw CyclicPrecedence("no permissible order exists for a non-empty set");
    }
    return {std::move(*best), best_time};
}

/// Overload for lists whose requirements are fully carried by their input
/// and output strings (no stitched edges).
inline std::pair<RecipePlan, Seconds> optimize(std::span<const Process> action_list,
                                               std::size_t limit = kDefaultOrderLimit) {
    return optimize(action_list, build_requires_graph(action_list), limit);
}

} // namespace sous

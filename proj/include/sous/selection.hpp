#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <random>
#include <set>
#include <variant>
#include <vector>

#include "sous/errors.hpp"
#include "sous/knowledge.hpp"
#include "sous/process.hpp"
#include "sous/strings.hpp"

namespace sous {

/// The ingredients drawn from supplies plus the processes that jointly turn
/// them into the requested dish.
struct SelectedContent {
    StringSet ingred_list;
    std::vector<Process> action_list;
};

struct InsufficientIngredients {
    std::vector<DescriptiveString> needed; // sorted, unique
};

using SelectionResult = std::variant<SelectedContent, InsufficientIngredients>;

/// Backward chaining from the dish: strings found in supplies become
/// ingredients, strings nobody can make become `needed`, and every other
/// string is replaced by the inputs of a process that outputs it. With no
/// seed the first producer in skills order is taken; with a seed the choice
/// among producers is uniform. Re-reaching a string that was already expanded
/// means the skills rewrite each other in a loop, which is an error.
inline SelectionResult select_content(const DescriptiveString& dish, const StringSet& supplies,
                                      const KnowledgeBase& kb,
                                      std::optional<std::uint64_t> seed = std::nullopt) {
    if (normalize_text(dish.text()).empty()) throw EmptyDish("requested dish is empty");

    std::optional<std::mt19937_64> rng;
    if (seed) rng.emplace(*seed);

    StringSet ingred_list;
    StringSet needed;
    std::vector<Process> action_list;
    std::set<ProcessId> chosen;

    std::deque<DescriptiveString> looking_for{dish};
    std::set<DescriptiveString> pending{dish};
    std::set<DescriptiveString> expanded;

    while (!looking_for.empty()) {
        const DescriptiveString item = looking_for.front();
        looking_for.pop_front();
        pending.erase(item);

        if (supplies.contains(item)) {
            ingred_list.insert(item);
            continue;
        }
        if (!kb.can_make.contains(item)) {
            needed.insert(item);
            continue;
        }
        if (expanded.count(item))
            throw CyclicKnowledgeBase("'" + item.text() + "' was reached again after expansion");

        const Process* producer = nullptr;
        if (!rng) {
            for (const auto& p : kb.skills)
                if (p.output.contains(item)) {
                    producer = &p;
                    break;
                }
        } else {
            std::vector<const Process*> candidates;
            for (const auto& p : kb.skills)
                if (p.output.contains(item)) candidates.push_back(&p);
            if (!candidates.empty()) {
                std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
                producer = candidates[pick(*rng)];
            }
        }
        if (producer == nullptr) {
            // In can_make only as a seed food description: makeable by nobody,
            // so the user simply needs it.
            needed.insert(item);
            continue;
        }
        expanded.insert(item);

        if (chosen.insert(producer->id).second) action_list.push_back(*producer);
        for (const auto& in : producer->input) {
            if (pending.count(in)) continue;
            looking_for.push_back(in);
            pending.insert(in);
        }
    }

    if (!needed.empty()) {
        std::vector<DescriptiveString> sorted(needed.begin(), needed.end());
        std::sort(sorted.begin(), sorted.end());
        return InsufficientIngredients{std::move(sorted)};
    }
    return SelectedContent{std::move(ingred_list), std::move(action_list)};
}

} // namespace sous

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sous/compression.hpp"
#include "sous/process.hpp"
#include "sous/strings.hpp"

namespace sous {

/// A window during which the cook is free, labelled with what is quietly
/// happening in the background. The window sits at the end of its step.
struct PassiveInterval {
    Seconds start = 0;
    Seconds end = 0;
    std::string activity;

    bool operator==(const PassiveInterval&) const = default;
};

struct RenderedRecipe {
    std::string title;
    Seconds total = 0;
    std::vector<std::string> ingredients;
    std::vector<std::pair<Seconds, std::string>> instructions; // (start offset, text)
    std::vector<PassiveInterval> passives;
};

/// Walk the plan with a clock that marks where each item ends; items that
/// still have free time left contribute a passive window ending there,
/// labelled with the host's original direction.
inline std::pair<std::vector<PassiveInterval>, Seconds> get_passives(const RecipePlan& plan) {
    std::vector<PassiveInterval> passives;
    Seconds clock = 0;
    for (const auto& item : plan.items) {
        clock += item_host(item).time;
        const Seconds rem = item_remaining_f_time(item);
        if (rem > 0) {
            const auto* combo = std::get_if<Combination>(&item);
            const std::string& activity =
                combo ? combo->host_original_direction : std::get<Process>(item).direction;
            passives.push_back(PassiveInterval{clock - rem, clock, activity});
        }
    }
    return {std::move(passives), clock};
}

/// Seconds to "H hrs M min S secs", omitting zero components; 0 is "0 secs".
inline std::string hms(Seconds seconds) {
    const Seconds h = seconds / 3600;
    const Seconds m = (seconds % 3600) / 60;
    const Seconds s = seconds % 60;
    std::string out;
    auto append = [&](Seconds v, const char* unit) {
        if (!out.empty()) out += ' ';
        out += std::to_string(v);
        out += ' ';
        out += unit;
    };
    if (h > 0) append(h, "hrs");
    if (m > 0) append(m, "min");
    if (s > 0) append(s, "secs");
    if (out.empty()) out = "0 secs";
    return out;
}

namespace detail {

/// First word of the direction turned into its -ing form ("boil the lentils"
/// -> "boiling the lentils"). Basic spelling rules only.
inline std::string gerundize(const std::string& direction) {
    const std::size_t space = direction.find(' ');
    std::string verb = direction.substr(0, space);
    std::string rest = space == std::string::npos ? "" : direction.substr(space);
    if (verb.empty()) return direction;
    auto is_vowel = [](char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; };
    const std::size_t n = verb.size();
    if (n >= 2 && verb[n - 1] == 'e' && verb[n - 2] != 'e') {
        verb.pop_back();
    } else if (n >= 3 && !is_vowel(verb[n - 1]) && verb[n - 1] != 'w' && verb[n - 1] != 'x' &&
               verb[n - 1] != 'y' && is_vowel(verb[n - 2]) && !is_vowel(verb[n - 3])) {
        verb.push_back(verb[n - 1]);
    }
    return verb + "ing" + rest;
}

inline std::string instruction_text(const PlanItem& item, bool gerund) {
    if (const auto* combo = std::get_if<Combination>(&item)) {
        std::string host_text =
            gerund ? gerundize(combo->host.direction) : combo->host.direction;
        std::string text = "while " + host_text + ", ";
        for (std::size_t i = 0; i < combo->insertees.size(); ++i) {
            if (i > 0) text += " and ";
            text += combo->insertees[i].direction;
        }
        return text;
    }
    return std::get<Process>(item).direction;
}

} // namespace detail

/// Assemble the printable recipe. Instruction offsets use the same clock as
/// the passive extraction, marking where each item starts.
inline RenderedRecipe realize(const DescriptiveString& dish, const StringSet& ingred_list,
                              const RecipePlan& plan, bool gerund = false) {
    RenderedRecipe r;
    r.title = dish.text();
    for (const auto& s : ingred_list) r.ingredients.push_back(s.text());
    Seconds clock = 0;
    for (const auto& item : plan.items) {
        r.instructions.emplace_back(clock, detail::instruction_text(item, gerund));
        clock += item_host(item).time;
    }
    auto [passives, total] = get_passives(plan);
    r.passives = std::move(passives);
    r.total = total;
    return r;
}

/// Fixed plain-text layout; LF line endings.
inline std::string render_text(const RenderedRecipe& r) {
    std::string out;
    out += r.title;
    out += "\nTime: " + hms(r.total) + "\n";
    if (!r.ingredients.empty()) {
        out += "Ingredients\n";
        for (const auto& ing : r.ingredients) out += ing + "\n";
    }
    if (!r.instructions.empty()) {
        out += "Instructions\n";
        for (const auto& [offset, text] : r.instructions)
            out += hms(offset) + ": " + text + "\n";
    }
    if (!r.passives.empty()) {
        out += "Passive times:\n";
        for (const auto& p : r.passives)
            out += "from " + hms(p.start) + " to " + hms(p.end) + " while " + p.activity + "\n";
    }
    return out;
}

} // namespace sous

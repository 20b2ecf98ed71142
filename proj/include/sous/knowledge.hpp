#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sous/errors.hpp"
#include "sous/process.hpp"
#include "sous/strings.hpp"

namespace sous {

/// Per-action field of a food class: disabled, or the duration the action
/// takes on that class.
class Indicator {
  public:
    static Indicator disabled() { return Indicator{}; }
    static Indicator duration(Seconds d) {
        if (d <= 0) throw ValidationError("indicator duration must be positive");
        Indicator i;
        i.duration_ = d;
        return i;
    }

    bool is_disabled() const { return !duration_.has_value(); }
    Seconds seconds() const { return duration_.value(); }

    bool operator==(const Indicator&) const = default;

  private:
    std::optional<Seconds> duration_;
};

/// root + state + per-action indicators; the generator seed for processes.
struct FoodClass {
    std::string root;
    std::string state; // may be empty
    std::map<std::string, Indicator> indicators;
};

/// The descriptive string of a food class: its state prefixed to its root.
inline DescriptiveString description(const FoodClass& fc) {
    if (normalize_text(fc.state).empty()) return DescriptiveString(fc.root);
    return DescriptiveString(fc.state + " " + fc.root);
}

enum class StateMode {
    replace, // acting replaces the state word ("raw carrot" -> "chopped carrot")
    prepend, // acting stacks state words ("raw carrot" -> "chopped raw carrot")
};

/// How one cooking verb turns a food class into a process plus a successor
/// class. `disables` always contains the action's own name, which is what
/// bounds the production fixpoint.
struct CookingActionSpec {
    std::string name;
    std::string state_word;
    std::string direction_template; // "{root}" and optional "{seconds}" placeholders
    StringSet extra_inputs;
    std::optional<Seconds> active_seconds; // absent => produced f_time is 0
    std::set<std::string> disables;
};

inline void validate_action(const CookingActionSpec& a) {
    if (normalize_text(a.name).empty()) throw ValidationError("action name is empty");
    if (!a.disables.count(a.name))
        throw ValidationError("action '" + a.name + "' does not disable itself");
    if (a.active_seconds && *a.active_seconds < 0)
        throw ValidationError("action '" + a.name + "' has negative active seconds");
}

/// A new vocabulary item and the strings that jointly define it.
struct Synonym {
    DescriptiveString name;
    StringSet definition;
};

inline void validate_synonym(const Synonym& s) {
    if (s.definition.empty())
        throw ValidationError("synonym '" + s.name.text() + "' has an empty definition");
    if (s.definition.contains(s.name))
        throw ValidationError("synonym '" + s.name.text() + "' appears in its own definition");
}

/// Everything the planner knows: all recognized strings and all recognized
/// processes, in a deterministic order that downstream tie-breaking relies on.
struct KnowledgeBase {
    StringSet can_make;
    std::vector<Process> skills;
};

namespace detail {

inline std::string fill_template(std::string text, const std::string& root, Seconds seconds) {
    auto replace_all = [&](const std::string& key, const std::string& value) {
        std::size_t pos = 0;
        while ((pos = text.find(key, pos)) != std::string::npos) {
            text.replace(pos, key.size(), value);
            pos += value.size();
        }
    };
    replace_all("{root}", root);
    replace_all("{seconds}", std::to_string(seconds));
    return text;
}

} // namespace detail

/// Apply one cooking action to one food class, yielding the process performed
/// and the successor class. Throws IndicatorDisabled when the class does not
/// admit the action.
inline std::pair<Process, FoodClass> apply_action(const CookingActionSpec& action,
                                                  const FoodClass& fc,
                                                  StateMode mode = StateMode::replace) {
    auto it = fc.indicators.find(action.name);
    if (it == fc.indicators.end() || it->second.is_disabled())
        throw IndicatorDisabled("action '" + action.name + "' is disabled for '" +
                                description(fc).text() + "'");
    const Seconds d = it->second.seconds();

    FoodClass next = fc;
    if (mode == StateMode::replace || normalize_text(fc.state).empty())
        next.state = action.state_word;
    else
        next.state = action.state_word + " " + fc.state;
    for (const auto& name : action.disables) {
        auto jt = next.indicators.find(name);
        if (jt != next.indicators.end()) jt->second = Indicator::disabled();
    }

    Process p;
    p.input.insert(description(fc));
    for (const auto& s : action.extra_inputs) p.input.insert(s);
    p.output.insert(description(next));
    p.time = d;
    p.f_time = action.active_seconds ? std::max<Seconds>(0, d - *action.active_seconds) : 0;
    p.direction = detail::fill_template(action.direction_template, normalize_text(fc.root), d);
    return {p, next};
}

/// The three actions specified in full: chop (no passive time), boil (cook is
/// active for the first 30 s and the pot needs boiling water), fry (active for
/// the first 120 s, and frying rules out boiling afterwards).
inline std::vector<CookingActionSpec> builtin_actions() {
    std::vector<CookingActionSpec> actions;
    actions.push_back({"chop", "chopped", "chop the {root}", {}, std::nullopt, {"chop"}});
    actions.push_back({"boil",
                       "boiled",
                       "boil the {root} for {seconds}",
                       StringSet{DescriptiveString("boiling water")},
                       Seconds{30},
                       {"boil"}});
    actions.push_back(
        {"fry", "fried", "fry the {root} for {seconds}", {}, Seconds{120}, {"fry", "boil"}});
    return actions;
}

/// Worklist fixpoint that builds the process database: every compatible action
/// is applied to every reachable food class, then one ghost process is added
/// per synonym, then hand-specified processes are appended. Self-disabling
/// actions guarantee termination. Output is a pure function of the inputs.
inline KnowledgeBase produce_content(std::span<const FoodClass> foods,
                                     std::span<const CookingActionSpec> actions,
                                     std::span<const Synonym> synonyms,
                                     std::span<const Process> custom,
                                     StateMode mode = StateMode::replace) {
    for (const auto& a : actions) validate_action(a);
    for (const auto& fc : foods)
        for (const auto& [key, ind] : fc.indicators) {
            const bool known = std::any_of(actions.begin(), actions.end(),
                                           [&](const auto& a) { return a.name == key; });
            if (!known)
                throw ValidationError("food '" + description(fc).text() +
                                      "' references unknown action '" + key + "'");
        }
    for (const auto& s : synonyms) validate_synonym(s);

    KnowledgeBase kb;
    ProcessId next_id = 0;

    std::deque<FoodClass> worklist(foods.begin(), foods.end());
    for (const auto& fc : worklist) kb.can_make.insert(description(fc));

    while (!worklist.empty()) {
        const FoodClass fc = std::move(worklist.front());
        worklist.pop_front();
        for (const auto& action : actions) {
            auto it = fc.indicators.find(action.name);
            if (it == fc.indicators.end() || it->second.is_disabled()) continue;
            auto [process, next] = apply_action(action, fc, mode);
            process.id = next_id++;
            kb.skills.push_back(std::move(process));
            worklist.push_back(std::move(next));
        }
    }

    for (const auto& syn : synonyms) {
        Process ghost;
        ghost.id = next_id++;
        ghost.input = syn.definition;
        ghost.output.insert(syn.name);
        kb.skills.push_back(std::move(ghost));
    }

    for (const auto& p : custom) {
        Process copy = p;
        validate_process(copy);
        copy.id = next_id++;
        kb.skills.push_back(std::move(copy));
    }

    // Close can_make over everything the skills mention.
    for (const auto& p : kb.skills) {
        for (const auto& s : p.input) kb.can_make.insert(s);
        for (const auto& s : p.output) kb.can_make.insert(s);
    }

    std::set<ProcessId> seen;
    for (const auto& p : kb.skills)
        if (!seen.insert(p.id).second)
            throw DuplicateProcessId("duplicate process id " + std::to_string(p.id));
    return kb;
}

} // namespace sous

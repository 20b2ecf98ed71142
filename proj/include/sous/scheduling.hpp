#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sous/errors.hpp"
#include "sous/process.hpp"

namespace sous {

inline constexpr std::size_t kDefaultOrderLimit = 100000;

/// The requirement relation over a fixed node set, kept in the action-list
/// order that all deterministic tie-breaking downstream relies on. Always
/// acyclic: construction rejects cycles.
class RequiresGraph {
  public:
    RequiresGraph() = default;

    /// Build from explicit nodes and requires(a, b) pairs.
    RequiresGraph(std::vector<ProcessId> nodes, const std::vector<std::pair<ProcessId, ProcessId>>& edges)
        : nodes_(std::move(nodes)), matrix_(nodes_.size(), std::vector<char>(nodes_.size(), 0)) {
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (index_.count(nodes_[i])) throw ValidationError("duplicate node id in requires graph");
            index_[nodes_[i]] = i;
        }
        for (const auto& [a, b] : edges) set_edge(a, b);
        ensure_acyclic();
    }

    const std::vector<ProcessId>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }

    bool has_node(ProcessId id) const { return index_.count(id) != 0; }

    /// requires(a, b): a needs b to have finished first.
    bool depends_on(ProcessId a, ProcessId b) const { return matrix_[at(a)][at(b)] != 0; }

    bool independent(ProcessId a, ProcessId b) const {
        return !depends_on(a, b) && !depends_on(b, a);
    }

    /// All edges, ordered by (source, target) node position.
    std::vector<std::pair<ProcessId, ProcessId>> edges() const {
        std::vector<std::pair<ProcessId, ProcessId>> out;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            for (std::size_t j = 0; j < nodes_.size(); ++j)
                if (matrix_[i][j]) out.emplace_back(nodes_[i], nodes_[j]);
        return out;
    }

    std::size_t edge_count() const {
        std::size_t n = 0;
        for (const auto& row : matrix_)
            for (char c : row) n += (c != 0);
        return n;
    }

  private:
    friend RequiresGraph build_requires_graph(std::span<const Process> action_list);
    friend std::pair<std::vector<Process>, RequiresGraph>
    remove_and_stitch(std::span<const Process> action_list, const RequiresGraph& g);

    std::size_t at(ProcessId id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw ValidationError("unknown node id in requires graph");
        return it->second;
    }

    void set_edge(ProcessId a, ProcessId b) { matrix_[at(a)][at(b)] = 1; }

    void ensure_acyclic() const {
        // Kahn count over the "b must precede a" orientation.
        const std::size_t n = nodes_.size();
        std::vector<std::size_t> unmet(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (matrix_[i][j]) ++unmet[i];
        std::vector<std::size_t> ready;
        for (std::size_t i = 0; i < n; ++i)
            if (unmet[i] == 0) ready.push_back(i);
        std::size_t done = 0;
        while (!ready.empty()) {
            const std::size_t j = ready.back();
            ready.pop_back();
            ++done;
            for (std::size_t i = 0; i < n; ++i)
                if (matrix_[i][j] && --unmet[i] == 0) ready.push_back(i);
        }
        if (done != n) throw CyclicPrecedence("requirement relation contains a cycle");
    }

    std::vector<ProcessId> nodes_;
    std::unordered_map<ProcessId, std::size_t> index_;
    std::vector<std::vector<char>> matrix_; // matrix_[i][j]: nodes_[i] requires nodes_[j]
};

/// Edge (a, b) for every ordered pair with requires(a, b).
inline RequiresGraph build_requires_graph(std::span<const Process> action_list) {
    RequiresGraph g;
    g.nodes_.reserve(action_list.size());
    for (const auto& p : action_list) {
        if (g.index_.count(p.id)) throw ValidationError("duplicate process id in action list");
        g.index_[p.id] = g.nodes_.size();
        g.nodes_.push_back(p.id);
    }
    g.matrix_.assign(g.nodes_.size(), std::vector<char>(g.nodes_.size(), 0));
    for (std::size_t i = 0; i < action_list.size(); ++i)
        for (std::size_t j = 0; j < action_list.size(); ++j)
            if (i != j && depends_on(action_list[i], action_list[j])) g.matrix_[i][j] = 1;
    g.ensure_acyclic();
    return g;
}

/// Remove every ghost process, bridging requirements across it: whenever
/// requires(a, g) and requires(g, b) held, requires(a, b) is added. Repeats
/// until no ghosts remain, so ghost-requires-ghost chains collapse too.
inline std::pair<std::vector<Process>, RequiresGraph>
remove_and_stitch(std::span<const Process> action_list, const RequiresGraph& g) {
    std::vector<Process> working(action_list.begin(), action_list.end());
    std::vector<std::vector<char>> req(working.size(), std::vector<char>(working.size(), 0));
    for (std::size_t i = 0; i < working.size(); ++i)
        for (std::size_t j = 0; j < working.size(); ++j)
            if (i != j) req[i][j] = g.depends_on(working[i].id, working[j].id) ? 1 : 0;

    std::vector<char> removed(working.size(), 0);
    bool again = true;
    while (again) {
        again = false;
        for (std::size_t gi = 0; gi < working.size(); ++gi) {
            if (removed[gi] || !working[gi].is_ghost()) continue;
            for (std::size_t a = 0; a < working.size(); ++a) {
                if (removed[a] || a == gi || !req[a][gi]) continue;
                for (std::size_t b = 0; b < working.size(); ++b)
                    if (!removed[b] && b != gi && b != a && req[gi][b]) req[a][b] = 1;
            }
            removed[gi] = 1;
            again = true;
        }
    }

    std::vector<Process> survivors;
    std::vector<ProcessId> nodes;
    for (std::size_t i = 0; i < working.size(); ++i)
        if (!removed[i]) {
            survivors.push_back(working[i]);
            nodes.push_back(working[i].id);
        }
    std::vector<std::pair<ProcessId, ProcessId>> edges;
    for (std::size_t i = 0; i < working.size(); ++i)
        for (std::size_t j = 0; j < working.size(); ++j)
            if (!removed[i] && !removed[j] && req[i][j])
                edges.emplace_back(working[i].id, working[j].id);
    return {std::move(survivors), RequiresGraph(std::move(nodes), edges)};
}

/// True iff x requires nothing in S besides (possibly) itself, i.e. x could
/// come first in a permissible order of S.
inline bool no_requirements(ProcessId x, std::span<const ProcessId> s, const RequiresGraph& g) {
    for (ProcessId other : s)
        if (other != x && g.depends_on(x, other)) return false;
    return true;
}

/// A permutation of the graph's nodes in which every requirement points
/// backward.
struct PermissibleOrder {
    std::vector<ProcessId> order;

    bool operator==(const PermissibleOrder&) const = default;
    bool operator<(const PermissibleOrder& other) const { return order < other.order; }
};

namespace detail {

/// Depth-first emission of every linear extension; candidates are tried in
/// graph node order so the emission sequence is deterministic. Returns false
/// when the callback asks to stop.
inline bool for_each_extension(const RequiresGraph& g,
                               const std::function<bool(const std::vector<ProcessId>&)>& emit) {
    const auto& nodes = g.nodes();
    const std::size_t n = nodes.size();
    std::vector<char> used(n, 0);
    std::vector<ProcessId> prefix;
    prefix.reserve(n);

    std::function<bool()> rec = [&]() -> bool {
        if (prefix.size() == n) return emit(prefix);
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            bool ready = true;
            for (std::size_t j = 0; j < n; ++j)
                if (!used[j] && j != i && g.depends_on(nodes[i], nodes[j])) {
                    ready = false;
                    break;
                }
            if (!ready) continue;
            used[i] = 1;
            prefix.push_back(nodes[i]);
            const bool keep_going = rec();
            prefix.pop_back();
            used[i] = 0;
            if (!keep_going) return false;
        }
        return true;
    };
    return rec();
}

} // namespace detail

/// Every permissible order of the graph's nodes, each exactly once, in the
/// deterministic depth-first order. Exceeding `limit` is an error rather than
/// a truncation, because optimality claims depend on exhaustiveness.
inline std::vector<PermissibleOrder> find_all_lists(const RequiresGraph& g,
                                                    std::size_t limit = kDefaultOrderLimit) {
    std::vector<PermissibleOrder> out;
    const bool completed = detail::for_each_extension(g, [&](const std::vector<ProcessId>& order) {
        if (out.size() >= limit)
            return false;
        out.push_back(PermissibleOrder{order});
        return true;
    });
    if (!completed)
        throw OrderExplosion(out.size(),
                             "more than " + std::to_string(limit) + " permissible orders");
    if (out.empty() && g.size() > 0)
        throw CyclicPrecedence("no permissible order exists for a non-empty set");
    return out;
}

/// All permissible k-element prefixes, computed stage by stage: seed with the
/// elements that require nothing, then repeatedly extend every list by each
/// element whose requirements lie entirely inside it.
inline std::vector<PermissibleOrder> permissible_prefixes(const RequiresGraph& g, std::size_t k) {
    const auto& nodes = g.nodes();
    if (k > nodes.size()) throw ValidationError("prefix length exceeds node count");
    std::vector<std::vector<ProcessId>> paths;
    if (k == 0) return {};
    for (ProcessId x : nodes)
        if (no_requirements(x, nodes, g)) paths.push_back({x});
    for (std::size_t stage = 1; stage < k; ++stage) {
        std::vector<std::vector<ProcessId>> next;
        for (const auto& path : paths) {
            for (ProcessId y : nodes) {
                if (std::find(path.begin(), path.end(), y) != path.end()) continue;
                bool ready = true;
                for (ProcessId other : nodes) {
                    if (other == y) continue;
                    const bool in_path =
                        std::find(path.begin(), path.end(), other) != path.end();
                    if (!in_path && g.depends_on(y, other)) {
                        ready = false;
                        break;
                    }
                }
                if (!ready) continue;
                auto extended = path;
                extended.push_back(y);
                next.push_back(std::move(extended));
            }
        }
        paths = std::move(next);
    }
    std::vector<PermissibleOrder> out;
    out.reserve(paths.size());
    for (auto& p : paths) out.push_back(PermissibleOrder{std::move(p)});
    return out;
}

} // namespace sous

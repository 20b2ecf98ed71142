#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sous/compression.hpp"
#include "sous/errors.hpp"
#include "sous/kb_io.hpp"
#include "sous/knowledge.hpp"
#include "sous/oracle.hpp"
#include "sous/realization.hpp"
#include "sous/scheduling.hpp"
#include "sous/selection.hpp"

namespace sous {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInsufficient = 2;
inline constexpr int kExitDisagreement = 3;

struct PlanOptions {
    bool gerund = false;
    std::size_t limit = kDefaultOrderLimit;
    std::optional<std::uint64_t> seed;
};

namespace cmd_detail {

struct ResolvedQuery {
    StringSet ingred_list;
    std::vector<Process> stitched; // ghost-free action list
    RequiresGraph graph;           // stitched requirement relation
};

/// Shared front half of plan/orders/verify: load, select, report missing
/// ingredients, stitch. Returns nullopt after printing when ingredients are
/// missing.
inline std::optional<ResolvedQuery> resolve(const std::string& dish_raw,
                                            const std::filesystem::path& db_path,
                                            const std::filesystem::path& supplies_path,
                                            std::optional<std::uint64_t> seed,
                                            std::ostream& out) {
    if (normalize_text(dish_raw).empty()) throw EmptyDish("no dish requested");
    const KnowledgeBase kb = load_database(db_path);
    const StringSet supplies = load_supplies(supplies_path);
    const DescriptiveString dish(dish_raw);

    SelectionResult result = select_content(dish, supplies, kb, seed);
    if (const auto* missing = std::get_if<InsufficientIngredients>(&result)) {
        out << "Insufficient ingredients, you need:\n";
        for (const auto& s : missing->needed) out << s.text() << "\n";
        return std::nullopt;
    }
    auto& content = std::get<SelectedContent>(result);

    const RequiresGraph raw = build_requires_graph(content.action_list);
    auto [stitched, graph] = remove_and_stitch(content.action_list, raw);
    return ResolvedQuery{std::move(content.ingred_list), std::move(stitched), std::move(graph)};
}

} // namespace cmd_detail

/// Compile a declarative KB file into the process database.
inline int run_produce(const std::filesystem::path& kb_path,
                       const std::filesystem::path& out_path, std::ostream& out,
                       std::ostream& err) {
    try {
        const KnowledgeBaseFile file = load_kb_file(kb_path);
        const KnowledgeBase kb = compile_kb(file);
        save_database(out_path, kb);
        out << "can_make: " << kb.can_make.size() << "\n";
        out << "skills: " << kb.skills.size() << "\n";
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

/// Full pipeline: select, stitch, enumerate, compress, pick the fastest plan,
/// print the recipe.
inline int run_plan(const std::string& dish_raw, const std::filesystem::path& db_path,
                    const std::filesystem::path& supplies_path, const PlanOptions& options,
                    std::ostream& out, std::ostream& err) {
    try {
        auto query = cmd_detail::resolve(dish_raw, db_path, supplies_path, options.seed, out);
        if (!query) return kExitInsufficient;
        auto [plan, makespan] = optimize(query->stitched, query->graph, options.limit);
        (void)makespan;
        const RenderedRecipe recipe =
            realize(DescriptiveString(dish_raw), query->ingred_list, plan, options.gerund);
        out << render_text(recipe);
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

/// Order statistics: how many permissible orders exist and how well each one
/// compresses.
inline int run_orders(const std::string& dish_raw, const std::filesystem::path& db_path,
                      const std::filesystem::path& supplies_path,
                      std::size_t limit, std::ostream& out, std::ostream& err) {
    try {
        auto query = cmd_detail::resolve(dish_raw, db_path, supplies_path, std::nullopt, out);
        if (!query) return kExitInsufficient;
        const auto orders = find_all_lists(query->graph, limit);
        std::vector<Seconds> makespans;
        makespans.reserve(orders.size());
        for (const auto& order : orders)
            makespans.push_back(
                total_time(concurrent_compression(order, query->stitched, query->graph)));
        std::sort(makespans.begin(), makespans.end());
        out << "orders: " << orders.size() << "\n";
        out << "makespans:";
        for (Seconds m : makespans) out << " " << m;
        out << "\n";
        if (!makespans.empty()) {
            out << "min makespan: " << makespans.front() << "\n";
            out << "max makespan: " << makespans.back() << "\n";
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

/// Pit the optimizer against the exhaustive search on the dish's instance.
inline int run_verify(const std::string& dish_raw, const std::filesystem::path& db_path,
                      const std::filesystem::path& supplies_path,
                      const std::filesystem::path& artifacts_dir, std::ostream& out,
                      std::ostream& err) {
    try {
        auto query = cmd_detail::resolve(dish_raw, db_path, supplies_path, std::nullopt, out);
        if (!query) return kExitInsufficient;
        std::string instance_id = normalize_text(dish_raw);
        std::replace(instance_id.begin(), instance_id.end(), ' ', '_');
        const oracle::OracleReport report =
            oracle::compare_with_optimizer(instance_id, query->stitched, query->graph);
        out << oracle::to_text(report);
        if (!report.agrees) {
            const auto path = oracle::write_report(artifacts_dir, report);
            err << "disagreement persisted to " << path.string() << "\n";
            return kExitDisagreement;
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

} // namespace sous

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sous/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"goal-directed recipe planner with passive-time packing"};
    app.require_subcommand(1);

    std::string kb_path;
    std::string out_path;
    auto* produce = app.add_subcommand("produce", "compile a knowledge base into a database");
    produce->add_option("--kb", kb_path, "knowledge base file (JSON)")->required();
    produce->add_option("--out", out_path, "output database file")->required();

    std::string dish;
    std::string db_path;
    std::string supplies_path;
    bool gerund = false;
    std::size_t limit = sous::kDefaultOrderLimit;
    std::optional<std::uint64_t> seed;

    auto add_query_options = [&](CLI::App* cmd) {
        cmd->add_option("dish", dish, "descriptive string of the dish")->required();
        cmd->add_option("--db", db_path, "compiled database file")->required();
        cmd->add_option("--supplies", supplies_path, "supplies file, one string per line")
            ->required();
    };

    auto* plan = app.add_subcommand("plan", "generate the fastest recipe for a dish");
    add_query_options(plan);
    plan->add_flag("--gerund", gerund, "inflect combined instructions (\"while boiling ...\")");
    plan->add_option("--limit", limit, "cap on enumerated orders");
    plan->add_option("--seed", seed, "randomize choice among alternative producers");

    auto* orders = app.add_subcommand("orders", "count permissible orders and their makespans");
    add_query_options(orders);
    orders->add_option("--limit", limit, "cap on enumerated orders");

    std::string artifacts_dir = "oracle_reports";
    auto* verify = app.add_subcommand("verify", "check the optimizer against brute force");
    add_query_options(verify);
    verify->add_option("--artifacts", artifacts_dir, "directory for disagreement reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? sous::kExitOk : sous::kExitInputError;
    }

    if (produce->parsed())
        return sous::run_produce(kb_path, out_path, std::cout, std::cerr);
    if (plan->parsed())
        return sous::run_plan(dish, db_path, supplies_path, {gerund, limit, seed}, std::cout,
                              std::cerr);
    if (orders->parsed())
        return sous::run_orders(dish, db_path, supplies_path, limit, std::cout, std::cerr);
    if (verify->parsed())
        return sous::run_verify(dish, db_path, supplies_path, artifacts_dir, std::cout,
                                std::cerr);
    return sous::kExitInputError;
}

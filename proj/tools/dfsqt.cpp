// dfsqt: command-line front end: run, table, figure, optimize, sweep

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dfsqt/errors.hpp"
#include "dfsqt/experiments.hpp"

namespace ex = dfsqt::experiments;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Options {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string strategy;
    std::string convention;
    int which = 1;
    std::string panel = "a";
    int points = 1201;
};

ex::ExperimentConfig load(const Options& o) {
    if (o.config.empty()) throw dfsqt::ConfigError("--config is required for this command");
    ex::ExperimentConfig cfg = ex::load_config(o.config);
    try {
        if (o.seed) cfg.seed = *o.seed;
        if (!o.strategy.empty()) cfg.strategy = ex::parse_strategy(o.strategy);
        if (!o.convention.empty()) cfg.convention = ex::parse_convention(o.convention);
    } catch (const std::invalid_argument& e) {
        throw dfsqt::ConfigError(e.what());
    }
    return cfg;
}

void emit(const std::string& text, const std::string& out_flag, const std::string& config_out) {
    const std::string& path = out_flag.empty() ? config_out : out_flag;
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

std::string json_text(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Teleportation through dephasing baths with a decoherence-free subspace"};
    app.set_version_flag("--version", ex::tool_version());
    app.require_subcommand(1);
    Options o;

    auto add_common = [&o](CLI::App* sub, bool with_config) {
        if (with_config) sub->add_option("--config", o.config, "JSON experiment config")->required();
        sub->add_option("--out", o.out, "output path (default: config \"output\" or stdout)");
    };
    auto add_physics = [&o](CLI::App* sub) {
        sub->add_option("--seed", o.seed, "Monte-Carlo seed (overrides config)");
        sub->add_option("--strategy", o.strategy, "retain-psi | retain-all")
            ->check(CLI::IsMember({"retain-psi", "retain-all"}));
        sub->add_option("--convention", o.convention, "physical | paper")->check(CLI::IsMember({"physical", "paper"}));
    };

    auto* run = app.add_subcommand("run", "full protocol report (JSON)");
    add_common(run, true);
    add_physics(run);

    auto* table = app.add_subcommand("table", "regenerate reference table 1, 2 or 3 (CSV)");
    add_common(table, false);
    table->add_option("--which", o.which, "table number")->check(CLI::Range(1, 3));

    auto* figure = app.add_subcommand("figure", "average FTS curve over [0, 12pi] (CSV)");
    add_common(figure, false);
    figure->add_option("--which", o.which, "figure number (2 pure, 3 Werner)")->check(CLI::Range(2, 3));
    figure->add_option("--panel", o.panel, "panel a-d")->check(CLI::IsMember({"a", "b", "c", "d"}));
    figure->add_option("--points", o.points, "curve samples (>= 600)");
    figure->add_option("--convention", o.convention, "physical | paper")->check(CLI::IsMember({"physical", "paper"}));

    auto* optimize = app.add_subcommand("optimize", "best measurement instant in a window (JSON)");
    add_common(optimize, true);
    add_physics(optimize);

    auto* sweep = app.add_subcommand("sweep", "average FTS over the config window (CSV)");
    add_common(sweep, true);
    add_physics(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (run->parsed()) {
            const auto cfg = load(o);
            emit(json_text(ex::cmd_run(cfg)), o.out, cfg.output);
        } else if (table->parsed()) {
            emit(ex::cmd_table(o.which).to_csv(), o.out, "");
        } else if (figure->parsed()) {
            const auto conv = o.convention.empty() ? dfsqt::metrics::Convention::Paper : ex::parse_convention(o.convention);
            emit(ex::cmd_figure(o.which, o.panel.front(), o.points, conv).to_csv(), o.out, "");
        } else if (optimize->parsed()) {
            const auto cfg = load(o);
            emit(json_text(ex::cmd_optimize(cfg)), o.out, cfg.output);
        } else if (sweep->parsed()) {
            const auto cfg = load(o);
            emit(ex::cmd_sweep(cfg).to_csv(), o.out, cfg.output);
        }
    } catch (const dfsqt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const dfsqt::NumericAccuracyError& e) {
        std::cerr << "numeric accuracy failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lstmcs/config.hpp"
#include "lstmcs/experiments.hpp"

namespace {

lstmcs::ExperimentConfig build_config(const std::string& config_path,
                                      const std::vector<std::string>& overrides) {
    lstmcs::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = lstmcs::load_config(config_path);
    for (const auto& assignment : overrides) lstmcs::apply_override(cfg, assignment);
    return cfg;
}

void print_written(const lstmcs::RunReport& report) {
    for (const auto& path : report.written) std::printf("wrote %s\n", path.c_str());
}

void print_solver_means(const lstmcs::RunReport& report) {
    std::map<std::string, std::pair<double, std::size_t>> acc;
    for (const auto& row : report.rows) {
        auto& slot = acc[row.solver];
        slot.first += row.nmse;
        slot.second += 1;
    }
    for (const auto& [solver, slot] : acc)
        std::printf("%-8s mean nmse %.6g over %zu rows\n", solver.c_str(),
                    slot.first / static_cast<double>(slot.second), slot.second);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LSTM-guided distributed compressive sensing toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string axis_name = "k";
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "experiment config file (key = value lines)");
        cmd->add_option("--set", overrides, "override a config key, e.g. --set seed=7");
        return cmd;
    };

    auto* cmd_train = add_common(app.add_subcommand("train", "fit a model and write it to model_path"));
    auto* cmd_solve = add_common(app.add_subcommand("solve", "reconstruct the test set with each solver"));
    auto* cmd_sweep = add_common(app.add_subcommand("sweep", "sweep one axis of the problem grid"));
    cmd_sweep->add_option("--axis", axis_name, "grid axis: k, sigma or m_over_n")
        ->check(CLI::IsMember({"k", "sigma", "m_over_n"}));
    auto* cmd_timing = add_common(app.add_subcommand("timing", "measure per-vector solve times"));
    auto* cmd_gen = add_common(app.add_subcommand("gen-data", "emit the synthetic test set as CSV"));

    CLI11_PARSE(app, argc, argv);

    try {
        const lstmcs::ExperimentConfig cfg = build_config(config_path, overrides);
        lstmcs::RunReport report;
        if (cmd_train->parsed()) {
            report = lstmcs::run_train(cfg);
            if (!report.train_log.empty())
                std::printf("trained %zu epochs, best epoch %zu, final loss %.6g\n",
                            report.train_log.size(), report.best_epoch,
                            report.train_log.back().mean_batch_loss);
        } else if (cmd_solve->parsed()) {
            report = lstmcs::run_solve(cfg);
            print_solver_means(report);
        } else if (cmd_sweep->parsed()) {
            report = lstmcs::run_sweep(cfg, lstmcs::parse_sweep_axis(axis_name));
            print_solver_means(report);
        } else if (cmd_timing->parsed()) {
            report = lstmcs::run_timing(cfg);
            std::map<std::string, std::pair<double, std::size_t>> acc;
            for (const auto& row : report.timing) {
                auto& slot = acc[row.solver];
                slot.first += row.mean_s_per_vector;
                slot.second += 1;
            }
            for (const auto& [solver, slot] : acc)
                std::printf("%-8s mean %.3e s/vector\n", solver.c_str(),
                            slot.first / static_cast<double>(slot.second));
        } else if (cmd_gen->parsed()) {
            report = lstmcs::run_gen_data(cfg);
        }
        print_written(report);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

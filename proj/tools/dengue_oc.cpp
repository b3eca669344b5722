// dengue-oc: optimal vaccination schedules for the host/vector dengue model.
//
//   dengue-oc solve <config> [--out DIR]
//   dengue-oc validate <config>
//   dengue-oc gradcheck <config>
//
// Exit codes: 0 success, 1 parse/validation failure, 2 solver failure.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dengue/errors.hpp"
#include "dengue/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitSolver = 2;

void print_warnings(const dengue::ScenarioConfig& cfg) {
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << '\n';
}

int cmd_validate(const std::string& path) {
    const auto cfg = dengue::load_config(path);
    print_warnings(cfg);
    const auto grid = cfg.grid();
    std::cout << "ok: " << path << " (n_h = " << cfg.params.n_h << ", sigma = " << cfg.params.sigma
              << ", t_f = " << cfg.t_f << ", steps = " << grid.n_steps << ")\n";
    return kExitOk;
}

int cmd_solve(const std::string& path, const std::string& out_override) {
    auto cfg = dengue::load_config(path);
    print_warnings(cfg);
    if (!out_override.empty()) cfg.output_dir = out_override;

    const auto report = dengue::run_scenarios(cfg);
    for (const auto& cell : report.cells) {
        const std::string name = dengue::method_label(cell.method) + "/" + cell.regime.label();
        if (!cell.solution) {
            std::cerr << "error: " << name << ": " << cell.error << '\n';
            continue;
        }
        const auto& sol = *cell.solution;
        std::printf("%-20s cost = %.6f", name.c_str(), sol.cost);
        if (cell.regime.kind == dengue::Regime::Kind::Optimal)
            std::printf("  iterations = %zu%s", sol.iterations, sol.converged ? "" : "  (not converged)");
        std::printf("\n");
        if (!sol.converged) std::cerr << "warning: " << name << " stopped at the iteration cap\n";
    }

    bool any_ok = false;
    for (const auto& cell : report.cells) any_ok = any_ok || cell.solution.has_value();
    if (any_ok) {
        dengue::emit_outputs(report, cfg.output_dir);
        std::cout << "wrote " << cfg.output_dir.string() << '\n';
    }
    return report.all_succeeded() ? kExitOk : kExitSolver;
}

int cmd_gradcheck(const std::string& path) {
    const auto cfg = dengue::load_config(path);
    print_warnings(cfg);
    constexpr std::size_t kIntervals = 10;
    constexpr std::size_t kSamples = 5;
    constexpr double kStep = 1e-5;
    constexpr double kLimit = 1e-3;
    const auto check = dengue::check_gradient(cfg.params, cfg.weights, cfg.initial_state(), cfg.grid(), kIntervals,
                                              kSamples, kStep, 2011);
    std::printf("max relative error = %.3e over %zu controls x %zu intervals (limit %.0e)\n",
                check.max_relative_error, check.samples, kIntervals, kLimit);
    return check.max_relative_error < kLimit ? kExitOk : kExitSolver;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal vaccination control for a host/vector dengue model"};
    app.require_subcommand(1);

    std::string config;
    std::string out_dir;

    auto* solve = app.add_subcommand("solve", "run every configured method x control regime and write CSVs");
    solve->add_option("config", config, "scenario YAML file")->required()->check(CLI::ExistingFile);
    solve->add_option("--out", out_dir, "output directory (overrides output_dir)");

    auto* validate = app.add_subcommand("validate", "parse and validate a scenario file");
    validate->add_option("config", config, "scenario YAML file")->required()->check(CLI::ExistingFile);

    auto* gradcheck = app.add_subcommand("gradcheck", "compare adjoint gradients with finite differences");
    gradcheck->add_option("config", config, "scenario YAML file")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (*solve) return cmd_solve(config, out_dir);
        if (*validate) return cmd_validate(config);
        if (*gradcheck) return cmd_gradcheck(config);
    } catch (const dengue::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const dengue::ValidationError& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolver;
    }
    return kExitInvalid;
}

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dengue/direct.hpp"
#include "dengue/sweep.hpp"

namespace dengue {

struct InitialConditions {
    double infected_humans_0 = 216.0; ///< persons
    double m = 3.0;                   ///< adult mosquitoes per host at t = 0
    double aquatic_fill = 1.0;        ///< a_m(0) as a fraction of k
};

enum class Method { Indirect, Direct };

/// A control regime: the optimized schedule or a constant rate.
struct Regime {
    enum class Kind { Optimal, Constant } kind = Kind::Optimal;
    double level = 0.0;

    static Regime optimal() { return {Kind::Optimal, 0.0}; }
    static Regime none() { return {Kind::Constant, 0.0}; }
    static Regime full() { return {Kind::Constant, 1.0}; }
    static Regime constant(double u) { return {Kind::Constant, u}; }

    /// "optimal", "none", "full", or "const_<u>".
    std::string label() const;
    friend bool operator==(const Regime&, const Regime&) = default;
};

std::string method_label(Method m);

struct ScenarioConfig {
    ModelParams params;
    CostWeights weights;
    double t_f = 365.0;
    double h = 0.1;
    InitialConditions initial;
    std::vector<Method> methods{Method::Indirect, Method::Direct};
    std::vector<Regime> controls{Regime::optimal(), Regime::none(), Regime::full()};
    SweepOptions sweep;
    DirectOptions direct;
    std::filesystem::path output_dir = "out";
    /// Non-fatal notes gathered while loading, e.g. defaulted weights.
    std::vector<std::string> warnings;

    TimeGrid grid() const { return make_grid(0.0, t_f, h); }
    EpiState initial_state() const;
    void validate() const;
};

/// Host/vector rates used for the reference experiment. The aquatic-phase
/// rates have no published values and must be supplied.
ModelParams reference_params(double eta_a, double mu_a);

/// Reference experiment with the example aquatic rates eta_a = 0.08, mu_a = 0.25.
ScenarioConfig reference_scenario();

/// Reads a YAML scenario file. Throws ParseError or ValidationError.
ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig parse_config(const std::string& text);

struct ReportCell {
    Method method = Method::Indirect;
    Regime regime;
    std::optional<Solution> solution;
    std::string error; ///< set when the solve threw
};

struct ComparisonReport {
    std::vector<Method> methods;
    std::vector<Regime> regimes;
    std::vector<ReportCell> cells; ///< method-major, regime-minor
    double n_h = 1.0;

    const ReportCell* find(Method m, const Regime& r) const;
    bool all_succeeded() const;
};

/// Solves every requested method x regime cell. Constant regimes use a single
/// forward solve. A failing cell records its error and the others still run.
ComparisonReport run_scenarios(const ScenarioConfig& cfg);

/// Writes summary.csv, trajectory_<method>_<regime>[_counts].csv and
/// control_<method>.csv into `dir`. Throws IoError.
void emit_outputs(const ComparisonReport& report, const std::filesystem::path& dir);

/// A trajectory file read back from disk.
struct TrajectoryFile {
    std::vector<double> t;
    std::vector<EpiState> states;
    std::vector<double> u;
    std::vector<std::optional<AdjointState>> adjoints;
};

TrajectoryFile read_trajectory_csv(const std::filesystem::path& path);

/// Re-costs a trajectory file on its own uniform grid.
double recost(const TrajectoryFile& file, const CostWeights& w, ControlHold hold);

} // namespace dengue

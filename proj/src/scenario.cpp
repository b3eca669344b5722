#include "dengue/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dengue/errors.hpp"

namespace dengue {

namespace {

std::string shortest(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string(), "cannot open for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError(path.string(), "write failed");
}

constexpr const char* kTrajectoryHeader =
    "t,s_h,i_h,r_h,a_m,s_m,i_m,u,lambda1,lambda2,lambda3,lambda4,lambda5,lambda6";

void write_trajectory(const Solution& sol, double scale, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << kTrajectoryHeader << '\n';
    const TimeGrid& grid = sol.states.grid;
    for (std::size_t i = 0; i < grid.n_nodes(); ++i) {
        out << shortest(grid.time(i));
        for (double v : sol.states.values[i].values) out << ',' << shortest(v * scale);
        out << ',' << shortest(sol.control.values[i]);
        for (std::size_t c = 0; c < 6; ++c) {
            out << ',';
            if (sol.has_adjoints()) out << shortest(sol.adjoints.values[i][c]);
        }
        out << '\n';
    }
    finish(out, path);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& s, const std::filesystem::path& path, std::size_t line) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ParseError(path.string() + ":" + std::to_string(line) + ": bad number '" + s + "'");
    return v;
}

} // namespace

std::string Regime::label() const {
    if (kind == Kind::Optimal) return "optimal";
    if (level == 0.0) return "none";
    if (level == 1.0) return "full";
    return "const_" + shortest(level);
}

std::string method_label(Method m) { return m == Method::Indirect ? "indirect" : "direct"; }

ModelParams reference_params(double eta_a, double mu_a) {
    ModelParams p;
    p.n_h = 480000.0;
    p.bite_rate = 0.5;
    p.beta_mh = 0.3;
    p.beta_hm = 0.3;
    p.mu_h = 1.0 / (71.0 * 365.0);
    p.eta_h = 1.0 / 3.0;
    p.mu_m = 1.0 / 10.0;
    p.k = 3.0;
    p.phi = 6.0;
    p.sigma = 0.15;
    p.eta_a = eta_a;
    p.mu_a = mu_a;
    return p;
}

ScenarioConfig reference_scenario() {
    ScenarioConfig cfg;
    cfg.params = reference_params(0.08, 0.25);
    return cfg;
}

EpiState ScenarioConfig::initial_state() const {
    const double i_h = initial.infected_humans_0 / params.n_h;
    return make_state(1.0 - i_h, i_h, 0.0, initial.aquatic_fill * params.k, initial.m, 0.0);
}

void ScenarioConfig::validate() const {
    params.validate();
    weights.validate();
    const TimeGrid g = grid();
    if (!(initial.infected_humans_0 >= 0.0 && initial.infected_humans_0 <= params.n_h))
        throw ValidationError("infected_humans_0", "initial.infected_humans_0: must lie in [0, n_h]");
    if (!(initial.m >= 0.0)) throw ValidationError("m", "initial.m: must be >= 0");
    if (!(initial.aquatic_fill >= 0.0)) throw ValidationError("aquatic_fill", "initial.aquatic_fill: must be >= 0");
    if (methods.empty()) throw ValidationError("method", "method: at least one method required");
    if (controls.empty()) throw ValidationError("controls", "controls: at least one regime required");
    sweep.validate();
    direct.validate(g);
}

const ReportCell* ComparisonReport::find(Method m, const Regime& r) const {
    for (const auto& c : cells)
        if (c.method == m && c.regime == r) return &c;
    return nullptr;
}

bool ComparisonReport::all_succeeded() const {
    for (const auto& c : cells)
        if (!c.solution) return false;
    return true;
}

ComparisonReport run_scenarios(const ScenarioConfig& cfg) {
    cfg.validate();
    const TimeGrid grid = cfg.grid();
    const EpiState x0 = cfg.initial_state();

    ComparisonReport report;
    report.methods = cfg.methods;
    report.regimes = cfg.controls;
    report.n_h = cfg.params.n_h;

    for (Method method : cfg.methods) {
        for (const Regime& regime : cfg.controls) {
            ReportCell cell{method, regime, std::nullopt, {}};
            try {
                if (regime.kind == Regime::Kind::Constant) {
                    cell.solution = evaluate_fixed_control(cfg.params, cfg.weights, x0,
                                                           ControlTrajectory::constant(grid, regime.level));
                } else if (method == Method::Indirect) {
                    cell.solution = solve_indirect(cfg.params, cfg.weights, x0, grid, cfg.sweep);
                } else {
                    cell.solution = solve_direct(cfg.params, cfg.weights, x0, grid, cfg.direct);
                }
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
            report.cells.push_back(std::move(cell));
        }
    }
    return report;
}

void emit_outputs(const ComparisonReport& report, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError(dir.string(), "cannot create output directory");

    const auto summary_path = dir / "summary.csv";
    auto summary = open_for_write(summary_path);
    summary << "method";
    for (const auto& r : report.regimes) summary << ',' << r.label();
    summary << '\n';
    for (Method m : report.methods) {
        summary << method_label(m);
        for (const auto& r : report.regimes) {
            const ReportCell* cell = report.find(m, r);
            summary << ',' << (cell && cell->solution ? fixed6(cell->solution->cost) : std::string("error"));
        }
        summary << '\n';
    }
    finish(summary, summary_path);

    for (const auto& cell : report.cells) {
        if (!cell.solution) continue;
        const std::string stem = "trajectory_" + method_label(cell.method) + "_" + cell.regime.label();
        write_trajectory(*cell.solution, 1.0, dir / (stem + ".csv"));
        write_trajectory(*cell.solution, report.n_h, dir / (stem + "_counts.csv"));

        if (cell.regime.kind == Regime::Kind::Optimal) {
            const auto path = dir / ("control_" + method_label(cell.method) + ".csv");
            auto out = open_for_write(path);
            out << "t,u\n";
            const ControlTrajectory& u = cell.solution->control;
            for (std::size_t i = 0; i < u.values.size(); ++i)
                out << shortest(u.grid.time(i)) << ',' << shortest(u.values[i]) << '\n';
            finish(out, path);
        }
    }
}

TrajectoryFile read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path.string(), "cannot open for reading");

    std::string line;
    if (!std::getline(in, line) || line != kTrajectoryHeader)
        throw ParseError(path.string() + ": unexpected header");

    TrajectoryFile file;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 14) throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected 14 fields");
        file.t.push_back(parse_double(f[0], path, line_no));
        EpiState x;
        for (std::size_t c = 0; c < 6; ++c) x[c] = parse_double(f[1 + c], path, line_no);
        file.states.push_back(x);
        file.u.push_back(parse_double(f[7], path, line_no));
        if (f[8].empty()) {
            file.adjoints.emplace_back();
        } else {
            AdjointState l;
            for (std::size_t c = 0; c < 6; ++c) l[c] = parse_double(f[8 + c], path, line_no);
            file.adjoints.emplace_back(l);
        }
    }
    if (file.t.size() < 2) throw ParseError(path.string() + ": need at least two rows");
    return file;
}

double recost(const TrajectoryFile& file, const CostWeights& w, ControlHold hold) {
    TimeGrid grid{file.t.front(), file.t.back(), file.t.size() - 1};
    const StateTrajectory xs{grid, file.states};
    const ControlTrajectory u{grid, file.u, hold};
    return evaluate_cost(w, xs, u);
}

} // namespace dengue

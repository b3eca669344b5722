// Acceptance suite: one line per criterion, exit status 1 if any fails.
// All runs use the shipped reference config.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dengue/scenario.hpp"

using namespace dengue;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double time_limit_s; // <= 0: no limit
    std::function<Outcome()> check;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const ScenarioConfig& config() {
    static const ScenarioConfig cfg = load_config(fs::path(DENGUE_SOURCE_DIR) / "configs" / "paper.yaml");
    return cfg;
}

const ComparisonReport& report() {
    static const ComparisonReport r = run_scenarios(config());
    return r;
}

const Solution& solution(Method m, const Regime& regime) {
    const ReportCell* cell = report().find(m, regime);
    if (!cell || !cell->solution) throw std::runtime_error(method_label(m) + "/" + regime.label() + " failed");
    return *cell->solution;
}

double peak_infected(const Solution& s) {
    double peak = 0.0;
    for (const auto& x : s.states.values) peak = std::max(peak, x[kIh]);
    return peak;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome full_control_cost() {
    const ScenarioConfig& cfg = config();
    const Solution s = evaluate_fixed_control(cfg.params, cfg.weights, cfg.initial_state(),
                                              ControlTrajectory::constant(cfg.grid(), 1.0));
    return {s.cost >= 364.9 && s.cost <= 365.5, fmt("J[u=1] = %.6f, band [364.9, 365.5]", s.cost)};
}

Outcome cost_ordering() {
    bool ok = true;
    std::string detail;
    for (Method m : {Method::Indirect, Method::Direct}) {
        const double opt = solution(m, Regime::optimal()).cost;
        const double none = solution(m, Regime::none()).cost;
        const double full = solution(m, Regime::full()).cost;
        const bool ordered = opt < none && none < full;
        const bool magnitude = opt >= 0.01 && opt <= 5.0 && none >= 0.01 && none <= 5.0;
        ok = ok && ordered && magnitude;
        detail += fmt("%s: opt %.6f < none %.6f < full %.6f %s, opt/none in [0.01, 5] %s; ", method_label(m).c_str(),
                      opt, none, full, ordered ? "yes" : "NO", magnitude ? "yes" : "NO");
    }
    return {ok, detail};
}

Outcome method_agreement() {
    const double direct = solution(Method::Direct, Regime::optimal()).cost;
    const double indirect = solution(Method::Indirect, Regime::optimal()).cost;
    const double rel = std::abs(direct - indirect) / indirect;
    return {rel <= 0.35, fmt("J_direct %.6f, J_indirect %.6f, relative gap %.3e (limit 0.35)", direct, indirect, rel)};
}

Outcome adjoint_oracle() {
    const ScenarioConfig& cfg = config();
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
    constexpr double step = 1e-6;
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const double a = unit(rng), b = unit(rng);
        const EpiState x = make_state(std::min(a, b), std::abs(a - b), 1.0 - std::max(a, b), uniform(0, cfg.params.k),
                                      uniform(0, 5), uniform(0, 1));
        AdjointState l;
        for (auto& v : l.values) v = uniform(-2, 2);
        const double u = unit(rng);
        const AdjointState dl = adjoint_rhs(cfg.params, cfg.weights, x, l, u);
        for (std::size_t c = 0; c < 6; ++c) {
            EpiState plus = x, minus = x;
            plus[c] += step;
            minus[c] -= step;
            const double fd = -(hamiltonian(cfg.params, cfg.weights, plus, l, u) -
                                hamiltonian(cfg.params, cfg.weights, minus, l, u)) /
                              (2.0 * step);
            worst = std::max(worst, std::abs(dl[c] - fd) / std::max(std::abs(fd), 1e-3));
        }
    }
    return {worst < 1e-5, fmt("max relative error %.3e over 1000 samples x 6 components (limit 1e-5)", worst)};
}

Outcome gradient_oracle() {
    const ScenarioConfig& cfg = config();
    const TimeGrid grid = cfg.grid();
    const EpiState x0 = cfg.initial_state();
    std::mt19937_64 rng(505);
    std::uniform_real_distribution<double> level(0.05, 0.95);
    constexpr double step = 1e-5;
    auto cost = [&](const PiecewiseControl& u) {
        const ControlTrajectory c = u.sample(grid);
        return evaluate_cost(cfg.weights, integrate_forward(cfg.params, c, x0, grid), c);
    };
    double worst = 0.0;
    for (int s = 0; s < 5; ++s) {
        PiecewiseControl u{std::vector<double>(10)};
        for (auto& v : u.levels) v = level(rng);
        const auto g = reduced_gradient(cfg.params, cfg.weights, x0, grid, u);
        for (std::size_t j = 0; j < 10; ++j) {
            PiecewiseControl plus = u, minus = u;
            plus.levels[j] += step;
            minus.levels[j] -= step;
            const double fd = (cost(plus) - cost(minus)) / (2.0 * step);
            worst = std::max(worst, std::abs(g[j] - fd) / std::abs(fd));
        }
    }
    return {worst < 1e-3, fmt("max relative error %.3e over 5 controls x 10 intervals (limit 1e-3)", worst)};
}

Outcome conservation() {
    const ScenarioConfig& cfg = config();
    const TimeGrid grid = make_grid(0.0, 365.0, 0.1);
    double worst = 0.0;
    for (double u : {0.0, 0.1, 0.25, 0.5, 0.75, 1.0}) {
        const StateTrajectory xs =
            integrate_forward(cfg.params, ControlTrajectory::constant(grid, u), cfg.initial_state(), grid);
        for (const auto& x : xs.values) worst = std::max(worst, std::abs(x[kSh] + x[kIh] + x[kRh] - 1.0));
    }
    return {worst < 1e-10, fmt("max |s_h + i_h + r_h - 1| = %.3e over u in {0..1} (limit 1e-10)", worst)};
}

Outcome pointwise_minimization() {
    const ScenarioConfig& cfg = config();
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int violations = 0;
    for (int n = 0; n < 1000; ++n) {
        const double a = unit(rng), b = unit(rng);
        const EpiState x = make_state(std::min(a, b), std::abs(a - b), 1.0 - std::max(a, b), 3.0 * unit(rng),
                                      5.0 * unit(rng), unit(rng));
        AdjointState l;
        for (auto& v : l.values) v = -3.0 + 6.0 * unit(rng);
        const double h_star = hamiltonian(cfg.params, cfg.weights, x, l, optimal_control(cfg.params, cfg.weights, x, l));
        for (int m = 0; m < 100; ++m)
            if (h_star > hamiltonian(cfg.params, cfg.weights, x, l, unit(rng))) ++violations;
    }
    return {violations == 0, fmt("%d violations in 1000 x 100 comparisons", violations)};
}

Outcome sweep_self_consistency() {
    const ScenarioConfig& cfg = config();
    const Solution& s = solution(Method::Indirect, Regime::optimal());
    const double residual = characterization_residual(cfg.params, cfg.weights, s);
    const double limit = 10.0 * cfg.sweep.tol;
    return {s.converged && residual < limit,
            fmt("converged %s after %zu iterations, residual %.3e (limit %.1e)", s.converged ? "yes" : "NO",
                s.iterations, residual, limit)};
}

Outcome qualitative_infection_curves() {
    bool ok = true;
    std::string detail;
    const Solution& none = solution(Method::Indirect, Regime::none());
    const Solution& full = solution(Method::Indirect, Regime::full());
    for (Method m : {Method::Indirect, Method::Direct}) {
        const double opt_peak = peak_infected(solution(m, Regime::optimal()));
        ok = ok && opt_peak < peak_infected(none);
        detail += fmt("%s optimal peak %.3e vs none %.3e; ", method_label(m).c_str(), opt_peak, peak_infected(none));
    }
    bool monotone = true;
    const TimeGrid& g = full.states.grid;
    for (std::size_t i = 0; i + 1 < g.n_nodes(); ++i)
        if (g.time(i) >= 1.0 && full.states.values[i + 1][kIh] > full.states.values[i][kIh]) monotone = false;
    ok = ok && monotone;
    detail += fmt("u=1 i_h non-increasing after day 1: %s", monotone ? "yes" : "NO");
    return {ok, detail};
}

Outcome determinism() {
    const fs::path a = fs::temp_directory_path() / "dengue_acceptance_a";
    const fs::path b = fs::temp_directory_path() / "dengue_acceptance_b";
    fs::remove_all(a);
    fs::remove_all(b);
    emit_outputs(run_scenarios(config()), a);
    emit_outputs(run_scenarios(config()), b);
    const std::string sa = slurp(a / "summary.csv"), sb = slurp(b / "summary.csv");
    fs::remove_all(a);
    fs::remove_all(b);
    return {!sa.empty() && sa == sb, fmt("summary.csv %zu bytes, identical: %s", sa.size(), sa == sb ? "yes" : "NO")};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "full-control cost", 5.0, full_control_cost},
        {2, "cost ordering and magnitude", 0.0, cost_ordering},
        {3, "direct/indirect agreement", 0.0, method_agreement},
        {4, "adjoint finite-difference oracle", 1.0, adjoint_oracle},
        {5, "reduced-gradient finite-difference oracle", 30.0, gradient_oracle},
        {6, "host conservation", 0.0, conservation},
        {7, "pointwise Hamiltonian minimization", 0.0, pointwise_minimization},
        {8, "sweep self-consistency", 0.0, sweep_self_consistency},
        {9, "infection curves by regime", 0.0, qualitative_infection_curves},
        {10, "determinism", 0.0, determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit_s > 0.0 && secs >= c.time_limit_s) {
            o.pass = false;
            o.detail += fmt(" [over time limit %.0f s]", c.time_limit_s);
        }
        if (!o.pass) ++failures;
        std::printf("[%s] %2d %-42s %7.3fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failures);
    return failures == 0 ? 0 : 1;
}

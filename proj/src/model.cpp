#include "dengue/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dengue/errors.hpp"

namespace dengue {

namespace {

void require(bool ok, const char* field, const std::string& what) {
    if (!ok) throw ValidationError(field, std::string(field) + ": " + what);
}

bool finite_range(const std::array<double, 6>& v) {
    return std::all_of(v.begin(), v.end(), [](double a) { return std::isfinite(a); });
}

} // namespace

void ModelParams::validate() const {
    require(std::isfinite(n_h) && n_h > 0.0, "n_h", "must be > 0");
    require(std::isfinite(k) && k > 0.0, "k", "must be > 0");
    const std::pair<const char*, double> rates[] = {
        {"bite_rate", bite_rate}, {"beta_mh", beta_mh}, {"beta_hm", beta_hm}, {"mu_h", mu_h},
        {"mu_m", mu_m},           {"mu_a", mu_a},       {"eta_h", eta_h},     {"eta_a", eta_a},
        {"phi", phi},
    };
    for (const auto& [name, value] : rates) require(std::isfinite(value) && value >= 0.0, name, "must be >= 0");
    require(std::isfinite(sigma) && sigma >= 0.0 && sigma <= 1.0, "sigma", "must lie in [0, 1]");
}

void CostWeights::validate() const {
    require(std::isfinite(gamma_i) && gamma_i >= 0.0, "gamma_i", "must be >= 0");
    require(std::isfinite(gamma_v) && gamma_v > 0.0, "gamma_v", "must be > 0");
}

double dot(const AdjointState& l, const EpiState& dx) {
    double acc = 0.0;
    for (std::size_t i = 0; i < 6; ++i) acc += l[i] * dx[i];
    return acc;
}

bool all_finite(const EpiState& x) { return finite_range(x.values); }
bool all_finite(const AdjointState& l) { return finite_range(l.values); }

EpiState state_rhs(const ModelParams& p, const EpiState& x, double u) {
    const auto [s_h, i_h, r_h, a_m, s_m, i_m] = x.values;
    const double force_on_hosts = p.bite_rate * p.beta_mh * i_m;
    const double force_on_vectors = p.bite_rate * p.beta_hm * i_h;
    const double infections = force_on_hosts * s_h;
    const double vaccinated = u * s_h;
    const double waned = p.sigma * u * r_h;

    EpiState dx;
    dx[kSh] = p.mu_h - p.mu_h * s_h - infections - vaccinated + waned;
    dx[kIh] = infections - (p.eta_h + p.mu_h) * i_h;
    dx[kRh] = p.eta_h * i_h + vaccinated - waned - p.mu_h * r_h;
    dx[kAm] = p.phi * (1.0 - a_m / p.k) * (s_m + i_m) - (p.eta_a + p.mu_a) * a_m;
    dx[kSm] = p.eta_a * a_m - (force_on_vectors + p.mu_m) * s_m;
    dx[kIm] = force_on_vectors * s_m - p.mu_m * i_m;
    return dx;
}

double cost_integrand(const CostWeights& w, const EpiState& x, double u) {
    return w.gamma_i * x[kIh] * x[kIh] + w.gamma_v * u * u;
}

double hamiltonian(const ModelParams& p, const CostWeights& w, const EpiState& x, const AdjointState& l,
                   double u) {
    return dot(l, state_rhs(p, x, u)) + cost_integrand(w, x, u);
}

AdjointState adjoint_rhs(const ModelParams& p, const CostWeights& w, const EpiState& x, const AdjointState& l,
                         double u) {
    const auto [s_h, i_h, r_h, a_m, s_m, i_m] = x.values;
    const auto [l1, l2, l3, l4, l5, l6] = l.values;
    const double b_mh = p.bite_rate * p.beta_mh;
    const double b_hm = p.bite_rate * p.beta_hm;
    const double logistic = 1.0 - a_m / p.k;

    AdjointState dl;
    dl[kSh] = (l1 - l2) * b_mh * i_m + l1 * p.mu_h + (l1 - l3) * u;
    dl[kIh] = -2.0 * w.gamma_i * i_h + l2 * (p.eta_h + p.mu_h) - l3 * p.eta_h + (l5 - l6) * b_hm * s_m;
    dl[kRh] = -l1 * p.sigma * u + l3 * (p.mu_h + p.sigma * u);
    dl[kAm] = l4 * p.phi * (s_m + i_m) / p.k + l4 * (p.eta_a + p.mu_a) - l5 * p.eta_a;
    dl[kSm] = -l4 * p.phi * logistic + (l5 - l6) * b_hm * i_h + l5 * p.mu_m;
    dl[kIm] = (l1 - l2) * b_mh * s_h - l4 * p.phi * logistic + l6 * p.mu_m;
    return dl;
}

double hamiltonian_du(const ModelParams& p, const CostWeights& w, const EpiState& x, const AdjointState& l,
                      double u) {
    return 2.0 * w.gamma_v * u + (l[kRh] - l[kSh]) * (x[kSh] - p.sigma * x[kRh]);
}

double optimal_control(const ModelParams& p, const CostWeights& w, const EpiState& x, const AdjointState& l) {
    const double stationary = (l[kSh] - l[kRh]) * (x[kSh] - p.sigma * x[kRh]) / (2.0 * w.gamma_v);
    return std::clamp(stationary, 0.0, 1.0);
}

} // namespace dengue

#pragma once

#include <array>
#include <cstddef>

namespace dengue {

/// Rate constants of the host/vector system. Rates are per day.
struct ModelParams {
    double n_h = 0.0;       ///< host population size (persons)
    double bite_rate = 0.0; ///< average bites per mosquito per day
    double beta_mh = 0.0;   ///< transmission probability mosquito -> human, per bite
    double beta_hm = 0.0;   ///< transmission probability human -> mosquito, per bite
    double mu_h = 0.0;      ///< human mortality
    double mu_m = 0.0;      ///< adult mosquito mortality
    double mu_a = 0.0;      ///< aquatic-phase mortality
    double eta_h = 0.0;     ///< human recovery
    double eta_a = 0.0;     ///< larva -> adult maturation
    double phi = 0.0;       ///< eggs per deposit per capita
    double k = 0.0;         ///< aquatic carrying capacity per host
    double sigma = 0.0;     ///< vaccine inefficacy, 0 = perfect vaccine

    /// Throws ValidationError naming the first field that breaks a bound.
    void validate() const;
};

struct CostWeights {
    double gamma_i = 1.0; ///< weight on squared infected proportion
    double gamma_v = 1.0; ///< weight on squared vaccination rate; must be > 0

    void validate() const;
};

/// Fixed-size vector with a tag so states and co-states don't mix.
template <typename Tag>
struct Vec6 {
    static constexpr std::size_t size = 6;
    std::array<double, 6> values{};

    constexpr double& operator[](std::size_t i) { return values[i]; }
    constexpr double operator[](std::size_t i) const { return values[i]; }

    constexpr Vec6& operator+=(const Vec6& o) {
        for (std::size_t i = 0; i < size; ++i) values[i] += o.values[i];
        return *this;
    }
    constexpr Vec6& operator*=(double a) {
        for (auto& v : values) v *= a;
        return *this;
    }
    friend constexpr Vec6 operator+(Vec6 a, const Vec6& b) { return a += b; }
    friend constexpr Vec6 operator-(Vec6 a, const Vec6& b) {
        for (std::size_t i = 0; i < size; ++i) a.values[i] -= b.values[i];
        return a;
    }
    friend constexpr Vec6 operator*(double s, Vec6 a) { return a *= s; }
    friend constexpr bool operator==(const Vec6&, const Vec6&) = default;
};

struct StateTag {};
struct AdjointTag {};

/// Compartments as proportions of the host population, ordered
/// (s_h, i_h, r_h, a_m, s_m, i_m).
using EpiState = Vec6<StateTag>;
/// Co-states, one per compartment in EpiState order.
using AdjointState = Vec6<AdjointTag>;

enum Compartment : std::size_t { kSh = 0, kIh, kRh, kAm, kSm, kIm };

inline EpiState make_state(double s_h, double i_h, double r_h, double a_m, double s_m, double i_m) {
    return EpiState{{s_h, i_h, r_h, a_m, s_m, i_m}};
}

double dot(const AdjointState& l, const EpiState& dx);
bool all_finite(const EpiState& x);
bool all_finite(const AdjointState& l);

/// Time derivative of the normalized state under vaccination rate `u`.
EpiState state_rhs(const ModelParams& p, const EpiState& x, double u);

/// Running cost gamma_i * i_h^2 + gamma_v * u^2.
double cost_integrand(const CostWeights& w, const EpiState& x, double u);

double hamiltonian(const ModelParams& p, const CostWeights& w, const EpiState& x, const AdjointState& l,
                   double u);

/// dl/dt = -dH/dx, written out term by term.
AdjointState adjoint_rhs(const ModelParams& p, const CostWeights& w, const EpiState& x, const AdjointState& l,
                         double u);

/// dH/du. Zero at the unclipped stationary control.
double hamiltonian_du(const ModelParams& p, const CostWeights& w, const EpiState& x, const AdjointState& l,
                      double u);

/// Pointwise minimizer of the Hamiltonian over u in [0, 1]:
/// clip((l1 - l3)(s_h - sigma r_h) / (2 gamma_v)).
double optimal_control(const ModelParams& p, const CostWeights& w, const EpiState& x, const AdjointState& l);

} // namespace dengue

// bath_decay.hpp - dephasing decay factor of a qubit in a squeezed Ohmic bath
//
// Γ(t) = (λ/π) [A_t cosh 2r − sinh 2r (B_t cos δθ + C_t sin δθ)]
//
// with A_t = a_η + Σ_n T a_t(n) and likewise for B_t, C_t. The thermal sums
// grow like Σ 1/n for generic δθ, so every value here is defined at an
// explicit truncation n_max (SeriesControl). Units: ħ = k_B = 1.

#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qthermo/summation.hpp"

namespace qthermo::bath {

struct BathParams {
    double lambda{0.4};       // dimensionless coupling strength
    double r{0.5};            // squeezing strength
    double delta_theta{0.9};  // squeezing phase relative to coupling phase [rad]
    double omega_c{1.0};      // Ohmic cutoff frequency
    double temp{10.0};        // bath temperature, same units as omega_c

    void validate() const {
        auto finite = [](double x) { return std::isfinite(x); };
        if (!finite(lambda) || !finite(r) || !finite(delta_theta) || !finite(omega_c) ||
            !finite(temp)) {
            throw std::invalid_argument("bath parameters must be finite");
        }
        if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
        if (r < 0.0) throw std::invalid_argument("squeezing r must be >= 0");
        if (omega_c <= 0.0) throw std::invalid_argument("omega_c must be > 0");
        if (temp <= 0.0) throw std::invalid_argument("temperature must be > 0");
    }
};

struct SeriesControl {
    int n_max{1000};
    // Stop early once a term's contribution to Γ drops below rel_tol·|Γ|.
    // Zero disables early stopping: exactly n_max terms are summed.
    double rel_tol{0.0};
    // Treat a non-converged series as an error at the CLI layer.
    bool report_tail{false};

    void validate() const {
        if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
        if (!std::isfinite(rel_tol) || rel_tol < 0.0) {
            throw std::invalid_argument("rel_tol must be a finite value >= 0");
        }
    }
};

struct Coefficients {
    double a{0.0};
    double b{0.0};
    double c{0.0};
};

struct DecayResult {
    double gamma{0.0};
    double dgamma_dtemp{0.0};  // exact ∂/∂T of the truncated series
    double dgamma_series{0.0};  // 𝒜/ℬ/𝒞 derivative series, same truncation
    int terms_used{0};
    double tail_estimate{0.0};  // |contribution of the last included term to Γ|
    bool converged{false};

    [[nodiscard]] bool negative() const { return gamma < 0.0; }
};

namespace detail {

inline void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

// ln(√(4x²+1)/(x²+1))
inline double log_ratio_b(double x) {
    return 0.5 * std::log1p(4.0 * x * x) - std::log1p(x * x);
}

// 2·atan(x) − atan(2x), rewritten as a single arctangent. The difference of
// the two arctangents stays in [0, π/2) for x ≥ 0, so the identity holds on
// the whole domain and avoids the cubic cancellation at small x.
inline double arctan_combo(double x) {
    return std::atan(2.0 * x * x * x / (1.0 + 3.0 * x * x));
}

// ln((4x²+1)/(x²+1))
inline double log_ratio_c(double x) {
    return std::log1p(3.0 * x * x / (1.0 + x * x));
}

// atan(2x) − atan(x) for x ≥ 0
inline double arctan_gap(double x) {
    return std::atan(x / (1.0 + 2.0 * x * x));
}

}  // namespace detail

/// Vacuum (temperature-independent) coefficients a_η, b_η, c_η.
inline Coefficients eta_coefficients(double eta) {
    detail::require_finite(eta, "eta");
    if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
    if (eta == 0.0) return {};
    return {std::log1p(eta * eta), detail::log_ratio_b(eta), detail::arctan_combo(eta)};
}

/// τ(n) = Ω_c t / (1 + n Ω_c / 2T); strictly decreasing in n.
inline double tau(int n, double t, const BathParams& p) {
    if (n < 1) throw std::invalid_argument("series index n must be >= 1");
    if (!(t >= 0.0)) throw std::invalid_argument("time must be >= 0");
    return p.omega_c * t / (1.0 + n * p.omega_c / (2.0 * p.temp));
}

/// Thermal series terms a_t(n), b_t(n), c_t(n). τ = 0 maps to the exact zero limit.
inline Coefficients thermal_term(int n, double t, const BathParams& p) {
    const double x = tau(n, t, p);
    if (x == 0.0) return {};
    const double s = 2.0 * t / x;
    return {
        4.0 * t * std::atan(x) - s * std::log1p(x * x),
        4.0 * t * detail::arctan_gap(x) - s * detail::log_ratio_b(x),
        2.0 * t * detail::log_ratio_c(x) - s * detail::arctan_combo(x),
    };
}

/// Γ(t) with both temperature derivatives, evaluated in one ascending pass.
inline DecayResult gamma(const BathParams& p, double t, const SeriesControl& ctrl = {}) {
    p.validate();
    ctrl.validate();
    detail::require_finite(t, "time");
    if (t < 0.0) throw std::invalid_argument("time must be >= 0");

    const double weight_a = std::cosh(2.0 * p.r);
    const double weight_b = std::sinh(2.0 * p.r) * std::cos(p.delta_theta);
    const double weight_c = std::sinh(2.0 * p.r) * std::sin(p.delta_theta);
    const double prefactor = p.lambda / std::numbers::pi;
    auto combine = [&](double a, double b, double c) {
        return a * weight_a - (b * weight_b + c * weight_c);
    };

    const Coefficients vac = eta_coefficients(p.omega_c * t);
    NeumaierSum<> sum_a(vac.a), sum_b(vac.b), sum_c(vac.c);
    NeumaierSum<> dsum_a, dsum_b, dsum_c;
    NeumaierSum<> psum_a, psum_b, psum_c;

    DecayResult out;
    double last = 0.0;
    int n = 1;
    for (; n <= ctrl.n_max; ++n) {
        const double x = tau(n, t, p);
        const Coefficients term = thermal_term(n, t, p);
        sum_a += p.temp * term.a;
        sum_b += p.temp * term.b;
        sum_c += p.temp * term.c;

        // d/dT [T x_t(n)] = x_t(n) + T (dx_t/dτ)(dτ/dT); with dx_t/dτ = 2t x_η(τ)/τ²
        // and dτ/dT = n τ² / (2 T² t) the second piece is (n/T) x_η(τ).
        const Coefficients at_tau = x == 0.0 ? Coefficients{} : eta_coefficients(x);
        const double k = n / p.temp;
        dsum_a += term.a + k * at_tau.a;
        dsum_b += term.b + k * at_tau.b;
        dsum_c += term.c + k * at_tau.c;

        // 𝒜/ℬ/𝒞 derivative series in ζ = 2tTΩ_c/(nΩ_c + 2T).
        const double z = 2.0 * t * p.temp * p.omega_c / (n * p.omega_c + 2.0 * p.temp);
        const double two_over_wc = 2.0 / p.omega_c;
        psum_a += 2.0 * (4.0 * t * std::atan(z) - two_over_wc * std::log1p(z * z));
        psum_b += 2.0 * (-two_over_wc * detail::log_ratio_b(z) + 4.0 * t * detail::arctan_gap(z));
        psum_c += 2.0 * two_over_wc *
                  (t * p.omega_c * detail::log_ratio_c(z) - detail::arctan_combo(z));

        last = prefactor * combine(p.temp * term.a, p.temp * term.b, p.temp * term.c);
        if (ctrl.rel_tol > 0.0) {
            const double partial =
                prefactor * combine(sum_a.value(), sum_b.value(), sum_c.value());
            if (std::abs(last) <= ctrl.rel_tol * std::abs(partial)) {
                ++n;
                break;
            }
        }
    }
    out.terms_used = n - 1;
    out.gamma = prefactor * combine(sum_a.value(), sum_b.value(), sum_c.value());
    out.dgamma_dtemp = prefactor * combine(dsum_a.value(), dsum_b.value(), dsum_c.value());
    out.dgamma_series = prefactor * combine(psum_a.value(), psum_b.value(), psum_c.value());
    out.tail_estimate = std::abs(last);
    out.converged = out.tail_estimate <= ctrl.rel_tol * std::abs(out.gamma);
    return out;
}

inline double dgamma_dT_termwise(const BathParams& p, double t, const SeriesControl& ctrl = {}) {
    return gamma(p, t, ctrl).dgamma_dtemp;
}

inline double dgamma_dT_series(const BathParams& p, double t, const SeriesControl& ctrl = {}) {
    return gamma(p, t, ctrl).dgamma_series;
}

/// Leading 1/n behaviour of the per-term contribution to Γ once τ ≪ 1 and
/// nΩ_c ≫ 2T: (λ/π) 4T²t² (cosh 2r − sinh 2r cos δθ) / n.
inline double tail_model(const BathParams& p, double t, int n) {
    return p.lambda / std::numbers::pi * 4.0 * p.temp * p.temp * t * t *
           (std::cosh(2.0 * p.r) - std::sinh(2.0 * p.r) * std::cos(p.delta_theta)) / n;
}

/// |Γ(n_max = 2k) − Γ(n_max = k)|, the growth of the truncated sum over one doubling.
inline double truncation_gap(const BathParams& p, double t, int k) {
    SeriesControl lo{.n_max = k};
    SeriesControl hi{.n_max = 2 * k};
    return std::abs(gamma(p, t, hi).gamma - gamma(p, t, lo).gamma);
}

struct DiscrepancyRow {
    double t{0.0};
    double gamma{0.0};
    double dgamma_termwise{0.0};
    double dgamma_series{0.0};
    double rel_diff{0.0};  // (series − termwise)/|termwise|, 0 when both vanish
    int terms_used{0};
    double tail_estimate{0.0};
};

inline std::vector<DiscrepancyRow> discrepancy_report(const BathParams& p,
                                                      std::span<const double> t_grid,
                                                      const SeriesControl& ctrl = {}) {
    if (t_grid.empty()) throw std::invalid_argument("time grid must not be empty");
    std::vector<DiscrepancyRow> rows;
    rows.reserve(t_grid.size());
    for (double t : t_grid) {
        const DecayResult d = gamma(p, t, ctrl);
        DiscrepancyRow row{t, d.gamma, d.dgamma_dtemp, d.dgamma_series, 0.0, d.terms_used,
                           d.tail_estimate};
        if (d.dgamma_dtemp != 0.0) {
            row.rel_diff = (d.dgamma_series - d.dgamma_dtemp) / std::abs(d.dgamma_dtemp);
        } else if (d.dgamma_series != 0.0) {
            row.rel_diff = std::copysign(std::numeric_limits<double>::infinity(), d.dgamma_series);
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace qthermo::bath

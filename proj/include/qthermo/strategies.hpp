// strategies.hpp - thermometry scenarios built from the bath, the probe and the QFI engine

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "qthermo/bath_decay.hpp"
#include "qthermo/errors.hpp"
#include "qthermo/lambert_w.hpp"
#include "qthermo/qfi_engine.hpp"
#include "qthermo/quantum_state.hpp"

namespace qthermo::strategies {

using bath::BathParams;
using bath::SeriesControl;
using qfi::QfiResult;
using state::ProbeLayout;
using state::PureState;

/// Closed form and spectral value must agree to this relative tolerance.
inline constexpr double kMismatchTol = 1e-9;

enum class StateFamily { single, bell, ghz, w, random };

inline std::string_view to_string(StateFamily f) {
    switch (f) {
        case StateFamily::single: return "single";
        case StateFamily::bell: return "bell";
        case StateFamily::ghz: return "ghz";
        case StateFamily::w: return "w";
        case StateFamily::random: return "random";
    }
    return "unknown";
}

struct StrategySpec {
    StateFamily family{StateFamily::single};
    double theta0{1.5707963267948966};  // single only
    double phi0{0.0};                   // single only
    std::uint64_t seed{0};              // random only
    ProbeLayout layout{ProbeLayout::parallel(1)};
    BathParams bath{};
    SeriesControl series{};
    // Test hook: scales the closed-form value before the cross-check.
    double closed_form_scale{1.0};

    void validate() const {
        bath.validate();
        series.validate();
        const int n = layout.n_total();
        switch (family) {
            case StateFamily::single:
                if (n != 1) throw std::invalid_argument("single-qubit probe needs N = 1");
                if (!std::isfinite(theta0) || !std::isfinite(phi0)) {
                    throw std::invalid_argument("probe angles must be finite");
                }
                break;
            case StateFamily::bell:
                if (n != 2) throw std::invalid_argument("Bell probe needs N = 2");
                break;
            case StateFamily::ghz:
            case StateFamily::w:
                if (n < 2) throw std::invalid_argument("GHZ and W probes need N >= 2");
                break;
            case StateFamily::random:
                break;
        }
    }
};

inline PureState initial_state(const StrategySpec& spec) {
    const int n = spec.layout.n_total();
    switch (spec.family) {
        case StateFamily::single: return state::make_single(spec.theta0, spec.phi0);
        case StateFamily::bell:
        case StateFamily::ghz: return state::make_ghz(n);
        case StateFamily::w: return state::make_w(n);
        case StateFamily::random: return state::random_pure(n, spec.seed, 0);
    }
    throw std::invalid_argument("unknown state family");
}

/// The catalog formula for a spec, if there is one. GHZ and W states are
/// permutation symmetric, so only the number of noisy qubits matters.
inline std::optional<qfi::CatalogEntry> catalog_entry(const StrategySpec& spec) {
    const int big_n = spec.layout.n_total();
    const int n = spec.layout.n_noisy();
    switch (spec.family) {
        case StateFamily::bell:
        case StateFamily::ghz:
            if (big_n == 2) return n == 1 ? qfi::bell_ancilla() : qfi::bell_parallel();
            return n == big_n ? qfi::ghz_parallel(big_n) : qfi::ghz(big_n, n);
        case StateFamily::w:
            if (big_n < 3) return std::nullopt;
            if (n == 1) return qfi::w_ancilla(big_n);
            if (n == big_n) return qfi::w_parallel(big_n);
            if (qfi::is_w_special(big_n, n)) return qfi::w_special(big_n, n);
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

inline std::optional<QfiResult> closed_form(const StrategySpec& spec, double gamma, double dgamma) {
    if (spec.family == StateFamily::single) {
        return qfi::qfi_closed_single_pure(spec.theta0, gamma, dgamma);
    }
    if (const auto entry = catalog_entry(spec)) return qfi::qfi_closed(*entry, gamma, dgamma);
    return std::nullopt;
}

/// Near Γ = 0 the smallest support eigenvalue is about Γ/2, so the spectral
/// sum loses roughly eps/Γ in relative terms. The allowance covers that.
inline double mismatch_tolerance(double gamma) {
    return kMismatchTol + 16.0 * std::numeric_limits<double>::epsilon() / std::min(gamma, 1.0);
}

/// Values this small are underflow debris on either path and compare as equal.
inline constexpr double kUnderflowFloor = 1e-290;

inline double relative_gap(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale < kUnderflowFloor ? 0.0 : std::abs(a - b) / scale;
}

struct Evaluation {
    bath::DecayResult decay;
    QfiResult spectral;                // normative value
    std::optional<QfiResult> closed;   // when the family has a closed formula

    [[nodiscard]] double qfi() const { return *spectral.value; }
};

namespace detail {

inline std::string describe(const StrategySpec& spec, double gamma) {
    std::ostringstream os;
    os.precision(17);
    os << to_string(spec.family) << " N=" << spec.layout.n_total()
       << " n=" << spec.layout.n_noisy() << " Gamma=" << gamma;
    return os.str();
}

inline bath::DecayResult decay_at(const StrategySpec& spec, double t) {
    if (!std::isfinite(t) || t <= 0.0) throw std::invalid_argument("time must be > 0");
    const bath::DecayResult d = bath::gamma(spec.bath, t, spec.series);
    if (spec.series.report_tail && !d.converged) {
        std::ostringstream os;
        os.precision(17);
        os << "series not converged at t=" << t << ": tail " << d.tail_estimate
           << " after " << d.terms_used << " terms";
        throw ConvergenceError(os.str());
    }
    if (!(d.gamma > 0.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "decay factor must be > 0 for the QFI, got " << d.gamma << " at t=" << t;
        throw std::domain_error(os.str());
    }
    return d;
}

}  // namespace detail

/// Spectral QFI at a given (Γ, ∂Γ/∂T), cross-checked against the closed form.
inline Evaluation evaluate_at(const StrategySpec& spec, double gamma, double dgamma) {
    spec.validate();
    Evaluation ev;
    ev.decay.gamma = gamma;
    ev.decay.dgamma_dtemp = dgamma;
    ev.spectral = qfi::qfi_evolved(initial_state(spec), spec.layout, gamma, dgamma);
    ev.closed = closed_form(spec, gamma, dgamma);
    if (ev.closed && ev.closed->value) *ev.closed->value *= spec.closed_form_scale;
    if (ev.closed && ev.closed->value && ev.spectral.value) {
        const double gap = relative_gap(*ev.closed->value, *ev.spectral.value);
        if (!(gap <= mismatch_tolerance(gamma))) {
            std::ostringstream os;
            os.precision(17);
            os << "closed form " << *ev.closed->value << " vs spectral " << *ev.spectral.value
               << " (" << detail::describe(spec, gamma) << ")";
            throw MismatchError(os.str());
        }
    }
    return ev;
}

inline Evaluation evaluate(const StrategySpec& spec, double t) {
    spec.validate();
    const bath::DecayResult d = detail::decay_at(spec, t);
    Evaluation ev = evaluate_at(spec, d.gamma, d.dgamma_dtemp);
    ev.decay = d;
    return ev;
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepRecord {
    double x{0.0};  // swept variable (t, N, ...)
    double gamma{0.0};
    double dgamma{0.0};
    double qfi{0.0};
    double qfi_normalized{0.0};
    double bound{0.0};
    std::optional<double> closed;
};

struct Sweep {
    std::vector<SweepRecord> records;
    std::size_t peak_index{0};

    [[nodiscard]] const SweepRecord& peak() const { return records.at(peak_index); }
};

/// Fills qfi_normalized and the peak; the first maximum wins ties.
inline void normalize(Sweep& s) {
    if (s.records.empty()) return;
    s.peak_index = 0;
    for (std::size_t i = 1; i < s.records.size(); ++i) {
        if (s.records[i].qfi > s.records[s.peak_index].qfi) s.peak_index = i;
    }
    const double top = s.records[s.peak_index].qfi;
    for (auto& r : s.records) r.qfi_normalized = top > 0.0 ? r.qfi / top : 0.0;
}

inline void check_time_grid(std::span<const double> t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("time grid must not be empty");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!std::isfinite(t_grid[i]) || t_grid[i] <= 0.0) {
            throw std::invalid_argument("time grid values must be > 0");
        }
        if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
            throw std::invalid_argument("time grid must be strictly ascending");
        }
    }
}

inline Sweep sweep_time(const StrategySpec& spec, std::span<const double> t_grid) {
    check_time_grid(t_grid);
    Sweep s;
    s.records.reserve(t_grid.size());
    for (double t : t_grid) {
        const Evaluation ev = evaluate(spec, t);
        SweepRecord r{t, ev.decay.gamma, ev.decay.dgamma_dtemp, ev.qfi(), 0.0,
                      ev.spectral.bound.value_or(0.0), std::nullopt};
        if (ev.closed) r.closed = ev.closed->value;
        s.records.push_back(r);
    }
    normalize(s);
    return s;
}

struct TimePeak {
    double t{0.0};
    double qfi{0.0};
    double gamma{0.0};
};

/// Maximizes the QFI over t ∈ [t_lo, t_hi] by Brent's method on log t.
inline TimePeak refine_time_peak(const StrategySpec& spec, double t_lo, double t_hi) {
    if (!(t_lo > 0.0) || !(t_hi > t_lo)) throw std::invalid_argument("need 0 < t_lo < t_hi");
    auto neg = [&](double log_t) { return -evaluate(spec, std::exp(log_t)).qfi(); };
    std::uintmax_t max_iter = 200;
    const auto [log_t, value] =
        boost::math::tools::brent_find_minima(neg, std::log(t_lo), std::log(t_hi), 40, max_iter);
    const double t = std::exp(log_t);
    return {t, -value, bath::gamma(spec.bath, t, spec.series).gamma};
}

/// Coarse sweep, then Brent refinement on the bracket around the best grid point.
inline TimePeak find_time_peak(const StrategySpec& spec, std::span<const double> t_grid) {
    const Sweep s = sweep_time(spec, t_grid);
    const std::size_t i = s.peak_index;
    const double lo = t_grid[i == 0 ? 0 : i - 1];
    const double hi = t_grid[std::min(i + 1, t_grid.size() - 1)];
    if (!(hi > lo)) return {s.peak().x, s.peak().qfi, s.peak().gamma};
    TimePeak p = refine_time_peak(spec, lo, hi);
    if (p.qfi < s.peak().qfi) p = {s.peak().x, s.peak().qfi, s.peak().gamma};
    return p;
}

// ---------------------------------------------------------------------------
// Optimal number of channel uses

/// N_opt = max(3, Round(c/Γ)) with c = (W₀(−2e⁻²) + 2)/2. Half-integers
/// round to even.
inline long long optimal_n_ghz(double gamma) {
    if (!std::isfinite(gamma) || gamma <= 0.0) throw std::invalid_argument("gamma must be > 0");
    const double x = ghz_optimum_constant() / gamma;
    if (x > 9.0e15) throw std::domain_error("gamma too small: N_opt exceeds 9e15");
    return std::max(3LL, static_cast<long long>(std::nearbyint(x)));
}

inline constexpr long long kBruteForceMaxN = 1000000;

/// Exact argmax of N²/(e^{2NΓ} − 1) over [n_lo, n_hi]; ties go to the smaller N.
inline long long brute_force_optimal_n(double gamma, long long n_lo, long long n_hi) {
    if (!std::isfinite(gamma) || gamma <= 0.0) throw std::invalid_argument("gamma must be > 0");
    if (n_lo > n_hi) throw std::invalid_argument("empty N range");
    if (n_lo < 3 || n_hi > kBruteForceMaxN) {
        throw std::invalid_argument("N range must lie within [3, 1000000]");
    }
    long long best = n_lo;
    double best_value = -1.0;
    for (long long n = n_lo; n <= n_hi; ++n) {
        const double v = static_cast<double>(n) * static_cast<double>(n) /
                         std::expm1(2.0 * static_cast<double>(n) * gamma);
        if (v > best_value) {
            best_value = v;
            best = n;
        }
    }
    return best;
}

enum class ParallelFamily { ghz_parallel, w_parallel };

inline std::string_view to_string(ParallelFamily f) {
    return f == ParallelFamily::ghz_parallel ? "ghz_parallel" : "w_parallel";
}

inline constexpr int kDefaultCrossCheckMaxN = 8;

/// QFI against N from the closed forms at fixed (Γ, ∂Γ/∂T). For N up to
/// cross_check_max_n the spectral evaluator runs as well and must agree.
inline Sweep sweep_channel_uses_at(ParallelFamily family, int n_lo, int n_hi, double gamma,
                                   double dgamma, int cross_check_max_n = kDefaultCrossCheckMaxN) {
    if (n_lo < 3 || n_hi < n_lo) throw std::invalid_argument("N range must be [lo, hi] with lo >= 3");
    if (cross_check_max_n > state::kMaxQubits) {
        throw std::invalid_argument("spectral cross-check is limited to N <= 12");
    }
    Sweep s;
    for (int big_n = n_lo; big_n <= n_hi; ++big_n) {
        const qfi::CatalogEntry e = family == ParallelFamily::ghz_parallel ? qfi::ghz_parallel(big_n)
                                                                          : qfi::w_parallel(big_n);
        const QfiResult c = qfi::qfi_closed(e, gamma, dgamma);
        if (!c.value) throw std::domain_error("closed form diverges at Gamma = 0");
        SweepRecord r{static_cast<double>(big_n), gamma, dgamma, *c.value, 0.0, c.bound.value_or(0.0),
                      c.value};
        if (big_n <= cross_check_max_n) {
            const QfiResult sp =
                qfi::qfi_evolved(qfi::catalog_state(e), qfi::catalog_layout(e), gamma, dgamma);
            if (!(relative_gap(*sp.value, *c.value) <= mismatch_tolerance(gamma))) {
                std::ostringstream os;
                os.precision(17);
                os << to_string(family) << " N=" << big_n << " Gamma=" << gamma << ": closed form "
                   << *c.value << " vs spectral " << *sp.value;
                throw MismatchError(os.str());
            }
        }
        s.records.push_back(r);
    }
    normalize(s);
    return s;
}

inline Sweep sweep_channel_uses(ParallelFamily family, int n_lo, int n_hi, const BathParams& bath,
                                double t, const SeriesControl& series = {},
                                int cross_check_max_n = kDefaultCrossCheckMaxN) {
    StrategySpec probe;
    probe.bath = bath;
    probe.series = series;
    probe.validate();
    const bath::DecayResult d = detail::decay_at(probe, t);
    return sweep_channel_uses_at(family, n_lo, n_hi, d.gamma, d.dgamma_dtemp, cross_check_max_n);
}

struct SqueezingPoint {
    double r{0.0};
    double gamma{0.0};
    long long peak_n{0};
};

/// Best GHZ-parallel N as the squeezing strength varies at fixed t. The
/// closed form's N-dependence sits entirely in N²/(e^{2NΓ} − 1), so the peak
/// is the brute-force argmax at Γ(r).
inline std::vector<SqueezingPoint> peak_n_vs_squeezing(BathParams bath, double t,
                                                       std::span<const double> r_values,
                                                       long long n_lo, long long n_hi,
                                                       const SeriesControl& series = {}) {
    std::vector<SqueezingPoint> out;
    for (double r : r_values) {
        bath.r = r;
        StrategySpec probe;
        probe.bath = bath;
        probe.series = series;
        probe.validate();
        const double g = detail::decay_at(probe, t).gamma;
        out.push_back({r, g, brute_force_optimal_n(g, n_lo, n_hi)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Random-state search

inline constexpr int kMaxSearchQubits = 6;

struct SearchResult {
    std::uint64_t best_index{0};
    std::optional<PureState> best_state;
    double best_qfi{0.0};
    double ghz_qfi{0.0};
    double w_qfi{0.0};
    bool exceeded{false};  // best_qfi > max(ghz_qfi, w_qfi) + 1e-9
    double gamma{0.0};
    double dgamma{0.0};

    [[nodiscard]] double reference() const { return std::max(ghz_qfi, w_qfi); }
};

/// Replaces the Haar sampler, e.g. to plant a known state at some index.
using Sampler = std::function<PureState(int n_qubits, std::uint64_t seed, std::uint64_t index)>;

inline SearchResult search_random_states_at(const ProbeLayout& layout, double gamma, double dgamma,
                                            std::uint64_t samples, std::uint64_t seed,
                                            const Sampler& sampler = {}) {
    const int big_n = layout.n_total();
    if (big_n < 2 || big_n > kMaxSearchQubits) {
        throw std::invalid_argument("random search needs 2 <= N <= 6");
    }
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    SearchResult out;
    out.gamma = gamma;
    out.dgamma = dgamma;
    out.best_qfi = -1.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const PureState psi = sampler ? sampler(big_n, seed, i) : state::random_pure(big_n, seed, i);
        const double q = *qfi::qfi_evolved(psi, layout, gamma, dgamma).value;
        if (q > out.best_qfi) {
            out.best_qfi = q;
            out.best_index = i;
            out.best_state = psi;
        }
    }
    out.ghz_qfi = *qfi::qfi_evolved(state::make_ghz(big_n), layout, gamma, dgamma).value;
    out.w_qfi = *qfi::qfi_evolved(state::make_w(big_n), layout, gamma, dgamma).value;
    out.exceeded = out.best_qfi > out.reference() + 1e-9;
    return out;
}

inline SearchResult search_random_states(const ProbeLayout& layout, const BathParams& bath, double t,
                                         std::uint64_t samples, std::uint64_t seed,
                                         const SeriesControl& series = {},
                                         const Sampler& sampler = {}) {
    StrategySpec probe;
    probe.bath = bath;
    probe.series = series;
    probe.validate();
    const bath::DecayResult d = detail::decay_at(probe, t);
    return search_random_states_at(layout, d.gamma, d.dgamma_dtemp, samples, seed, sampler);
}

}  // namespace qthermo::strategies

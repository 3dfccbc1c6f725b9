// config.hpp - run configuration, its command-line / file binding and the resolved echo

#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "qthermo/cli/format.hpp"
#include "qthermo/strategies.hpp"

namespace qthermo::cli {

struct RunConfig {
    bath::BathParams bath{};

    std::optional<double> t;  // single time point, overrides the grid
    double t_start{0.01};
    double t_end{1.0};
    int t_steps{100};
    bool t_log{false};     // geometric spacing
    bool t_scaled{false};  // times given in units of 1/omega_c

    bath::SeriesControl series{};

    std::string state{"single"};
    double theta0{1.5707963267948966};
    double phi0{0.0};
    int n_total{0};  // 0 picks the family default
    int n_noisy{1};
    std::string strategy{"parallel"};
    std::optional<std::string> ref_state;
    bool refine_peak{false};

    std::optional<double> gamma;  // bypasses the bath
    double dgamma{1.0};
    long long n_hi{0};  // brute-force range end for opt-n, 0 = automatic

    long long samples{1000};
    std::uint64_t seed{0};

    std::string format{"csv"};
    std::string out;
    bool normalize{false};

    double ghz_fault{1.0};  // hidden: scales GHZ closed forms
};

inline void bind_options(CLI::App& app, RunConfig& c) {
    app.set_config("--config", "", "key=value file; flags given on the command line win");
    app.allow_config_extras(CLI::config_extras_mode::error);

    const std::string bath = "Bath";
    app.add_option("--lambda", c.bath.lambda, "coupling strength")->group(bath);
    app.add_option("--r", c.bath.r, "squeezing strength")->group(bath);
    app.add_option("--dtheta", c.bath.delta_theta, "squeezing phase difference [rad]")->group(bath);
    app.add_option("--omega-c", c.bath.omega_c, "cutoff frequency")->group(bath);
    app.add_option("--temp", c.bath.temp, "bath temperature")->group(bath);

    const std::string time = "Time";
    app.add_option("--t", c.t, "single time point")->group(time);
    app.add_option("--t-start", c.t_start, "first grid time")->group(time);
    app.add_option("--t-end", c.t_end, "last grid time")->group(time);
    app.add_option("--t-steps", c.t_steps, "number of grid points")->group(time);
    app.add_flag("--t-log", c.t_log, "geometric grid spacing")->group(time);
    app.add_flag("--t-scaled", c.t_scaled, "times are in units of 1/omega_c")->group(time);

    const std::string series = "Series";
    app.add_option("--n-max", c.series.n_max, "terms summed")->group(series);
    app.add_option("--rel-tol", c.series.rel_tol, "early-stop tolerance, 0 sums n-max terms")
        ->group(series);
    app.add_flag("--strict", c.series.report_tail, "fail (exit 3) on a non-converged series")
        ->group(series);

    const std::string probe = "Probe";
    app.add_option("--state", c.state, "probe state")
        ->check(CLI::IsMember({"single", "bell", "ghz", "w", "random"}))
        ->group(probe);
    app.add_option("--theta0", c.theta0, "single-qubit polar angle")->group(probe);
    app.add_option("--phi0", c.phi0, "single-qubit phase")->group(probe);
    app.add_option("--N", c.n_total, "total qubits")->group(probe);
    app.add_option("--n", c.n_noisy, "noisy qubits (ancilla strategy)")->group(probe);
    app.add_option("--strategy", c.strategy, "which qubits meet the bath")
        ->check(CLI::IsMember({"parallel", "ancilla"}))
        ->group(probe);
    app.add_option("--ref-state", c.ref_state, "adds a ratio column qfi / qfi(ref-state)")
        ->check(CLI::IsMember({"single", "bell", "ghz", "w", "random"}))
        ->group(probe);
    app.add_flag("--refine-peak", c.refine_peak, "refine the sweep peak by Brent search")
        ->group(probe);

    const std::string direct = "Direct decay";
    app.add_option("--gamma", c.gamma, "use this decay factor instead of the bath")->group(direct);
    app.add_option("--dgamma", c.dgamma, "dGamma/dT used with --gamma")->group(direct);
    app.add_option("--n-hi", c.n_hi, "opt-n brute-force search bound")->group(direct);

    const std::string search = "Search";
    app.add_option("--samples", c.samples, "random states drawn")->group(search);
    app.add_option("--seed", c.seed, "master seed")->group(search);

    const std::string output = "Output";
    app.add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->group(output);
    app.add_option("--out", c.out, "output file, stdout when empty")->group(output);
    app.add_flag("--normalize", c.normalize, "add qfi / max-over-sweep column")->group(output);

    app.add_option("--inject-ghz-fault", c.ghz_fault, "scale GHZ closed forms (testing)")
        ->group("");
}

inline strategies::StateFamily parse_family(const std::string& s) {
    using strategies::StateFamily;
    if (s == "single") return StateFamily::single;
    if (s == "bell") return StateFamily::bell;
    if (s == "ghz") return StateFamily::ghz;
    if (s == "w") return StateFamily::w;
    if (s == "random") return StateFamily::random;
    throw std::invalid_argument("unknown state '" + s + "'");
}

inline int default_qubits(strategies::StateFamily f) {
    using strategies::StateFamily;
    switch (f) {
        case StateFamily::single: return 1;
        case StateFamily::bell: return 2;
        case StateFamily::random: return 2;
        default: return 3;
    }
}

/// Fills in family-dependent defaults so the echoed config is the one that ran.
inline void resolve(RunConfig& c) {
    const auto family = parse_family(c.state);
    if (c.n_total == 0) c.n_total = default_qubits(family);
    if (c.n_total < 1) throw std::invalid_argument("N must be >= 1");
    if (c.strategy == "parallel") c.n_noisy = c.n_total;
    if (c.n_noisy < 1 || c.n_noisy > c.n_total) throw std::invalid_argument("need 1 <= n <= N");
}

/// Rounds to 15 significant digits, so 0.1 + 2·0.1 becomes the double nearest 0.3.
inline double round_15(double x) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                   std::chars_format::general, 15);
    double y = x;
    std::from_chars(buf.data(), res.ptr, y);
    return y;
}

inline std::vector<double> time_grid(const RunConfig& c) {
    std::vector<double> grid;
    if (c.t) {
        grid.push_back(*c.t);
    } else {
        if (c.t_steps < 1) throw std::invalid_argument("t-steps must be >= 1");
        if (!std::isfinite(c.t_start) || !std::isfinite(c.t_end)) {
            throw std::invalid_argument("time range must be finite");
        }
        if (c.t_steps > 1 && !(c.t_end > c.t_start)) {
            throw std::invalid_argument("t-end must exceed t-start");
        }
        if (c.t_log && !(c.t_start > 0.0)) throw std::invalid_argument("--t-log needs t-start > 0");
        const int n = c.t_steps;
        for (int i = 0; i < n; ++i) {
            double x = c.t_start;
            if (n > 1) {
                const double f = static_cast<double>(i) / (n - 1);
                x = c.t_log ? c.t_start * std::pow(c.t_end / c.t_start, f)
                            : c.t_start + f * (c.t_end - c.t_start);
                x = round_15(x);
                if (i == n - 1) x = c.t_end;
            }
            grid.push_back(x);
        }
    }
    if (c.t_scaled) {
        for (double& x : grid) x /= c.bath.omega_c;
    }
    for (double x : grid) {
        if (!std::isfinite(x) || x <= 0.0) {
            throw std::invalid_argument("time points must be > 0 (got " + shortest(x) + ")");
        }
    }
    return grid;
}

inline strategies::StrategySpec strategy_spec(const RunConfig& c, const std::string& state) {
    strategies::StrategySpec s;
    s.family = parse_family(state);
    s.theta0 = c.theta0;
    s.phi0 = c.phi0;
    s.seed = c.seed;
    s.layout = c.strategy == "parallel" ? state::ProbeLayout::parallel(c.n_total)
                                        : state::ProbeLayout::ancilla(c.n_total, c.n_noisy);
    s.bath = c.bath;
    s.series = c.series;
    if (s.family == strategies::StateFamily::ghz || s.family == strategies::StateFamily::bell) {
        s.closed_form_scale = c.ghz_fault;
    }
    s.validate();
    return s;
}

inline std::vector<std::pair<std::string, std::string>> echo(const RunConfig& c) {
    auto flag = [](bool b) -> std::string { return b ? "true" : "false"; };
    auto opt = [](const std::optional<double>& x) { return x ? shortest(*x) : std::string(); };
    std::vector<std::pair<std::string, std::string>> kv{
        {"lambda", shortest(c.bath.lambda)},
        {"r", shortest(c.bath.r)},
        {"dtheta", shortest(c.bath.delta_theta)},
        {"omega-c", shortest(c.bath.omega_c)},
        {"temp", shortest(c.bath.temp)},
        {"t", opt(c.t)},
        {"t-start", shortest(c.t_start)},
        {"t-end", shortest(c.t_end)},
        {"t-steps", std::to_string(c.t_steps)},
        {"t-log", flag(c.t_log)},
        {"t-scaled", flag(c.t_scaled)},
        {"n-max", std::to_string(c.series.n_max)},
        {"rel-tol", shortest(c.series.rel_tol)},
        {"strict", flag(c.series.report_tail)},
        {"state", c.state},
        {"theta0", shortest(c.theta0)},
        {"phi0", shortest(c.phi0)},
        {"N", std::to_string(c.n_total)},
        {"n", std::to_string(c.n_noisy)},
        {"strategy", c.strategy},
        {"ref-state", c.ref_state.value_or("")},
        {"refine-peak", flag(c.refine_peak)},
        {"gamma", opt(c.gamma)},
        {"dgamma", shortest(c.dgamma)},
        {"n-hi", std::to_string(c.n_hi)},
        {"samples", std::to_string(c.samples)},
        {"seed", std::to_string(c.seed)},
        {"format", c.format},
        {"normalize", flag(c.normalize)},
    };
    if (c.ghz_fault != 1.0) kv.emplace_back("inject-ghz-fault", shortest(c.ghz_fault));
    return kv;
}

}  // namespace qthermo::cli

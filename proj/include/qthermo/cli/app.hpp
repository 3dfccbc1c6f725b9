// app.hpp - subcommands and the exit-code contract of the qthermo tool

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qthermo/cli/config.hpp"
#include "qthermo/cli/format.hpp"
#include "qthermo/cli/verify.hpp"
#include "qthermo/errors.hpp"
#include "qthermo/lambert_w.hpp"
#include "qthermo/qfi_engine.hpp"
#include "qthermo/strategies.hpp"

namespace qthermo::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitBadInput = 2,
    kExitConvergence = 3,
    kExitMismatch = 4,
};

namespace app_detail {

using strategies::StrategySpec;

// One evaluation point: a time with its bath-derived decay, or a bare (Γ, Γ').
struct Point {
    std::optional<double> t;
    double gamma{0.0};
    double dgamma{0.0};
};

inline std::vector<Point> points(const RunConfig& c, const StrategySpec& probe) {
    if (c.gamma) {
        if (!std::isfinite(*c.gamma) || *c.gamma <= 0.0) {
            throw std::invalid_argument("--gamma must be > 0");
        }
        if (!std::isfinite(c.dgamma)) throw std::invalid_argument("--dgamma must be finite");
        return {{std::nullopt, *c.gamma, c.dgamma}};
    }
    std::vector<Point> out;
    for (double t : time_grid(c)) {
        const auto d = strategies::detail::decay_at(probe, t);
        out.push_back({t, d.gamma, d.dgamma_dtemp});
    }
    return out;
}

inline Point single_point(const RunConfig& c, const StrategySpec& probe, const char* what) {
    const auto pts = points(c, probe);
    if (pts.size() != 1) {
        throw std::invalid_argument(std::string(what) + " needs one point: pass --t or --gamma");
    }
    return pts.front();
}

inline Document cmd_gamma(const RunConfig& c, std::ostream& err) {
    Document doc;
    doc.table.columns = {"t", "gamma", "dgamma_termwise", "dgamma_series", "terms_used", "tail_estimate"};
    long long negative = 0;
    for (double t : time_grid(c)) {
        const auto d = bath::gamma(c.bath, t, c.series);
        if (c.series.report_tail && !d.converged) {
            throw ConvergenceError("series not converged at t=" + shortest(t) + ": tail " +
                                   shortest(d.tail_estimate) + " after " +
                                   std::to_string(d.terms_used) + " terms");
        }
        if (d.negative()) {
            ++negative;
            err << "warning: negative decay factor " << shortest(d.gamma) << " at t=" << shortest(t)
                << '\n';
        }
        doc.table.rows.push_back({t, d.gamma, d.dgamma_dtemp, d.dgamma_series,
                                  static_cast<long long>(d.terms_used), d.tail_estimate});
    }
    doc.summary = {{"points", static_cast<long long>(doc.table.rows.size())},
                   {"negative_gamma_points", negative}};
    return doc;
}

inline std::string closed_form_name(const StrategySpec& spec) {
    if (spec.family == strategies::StateFamily::single) return "single_pure";
    if (const auto e = strategies::catalog_entry(spec)) return std::string(qfi::to_string(e->family));
    return "none";
}

inline Document cmd_qfi(const RunConfig& c) {
    const StrategySpec spec = strategy_spec(c, c.state);
    std::optional<StrategySpec> ref;
    if (c.ref_state) ref = strategy_spec(c, *c.ref_state);

    Document doc;
    auto& cols = doc.table.columns;
    cols = {"t", "gamma", "dgamma", "qfi"};
    if (c.normalize) cols.push_back("qfi_normalized");
    cols.insert(cols.end(), {"bound", "closed_form"});
    if (ref) cols.push_back("ratio");
    cols.push_back("peak");

    const auto pts = points(c, spec);
    std::vector<double> q;
    std::vector<std::vector<Cell>> rows;
    for (const Point& p : pts) {
        const auto ev = strategies::evaluate_at(spec, p.gamma, p.dgamma);
        q.push_back(ev.qfi());
        std::vector<Cell> row{cell(p.t), p.gamma, p.dgamma, ev.qfi()};
        if (c.normalize) row.emplace_back(std::monostate{});
        row.push_back(cell(ev.spectral.bound));
        row.push_back(ev.closed ? cell(ev.closed->value) : Cell{});
        if (ref) row.push_back(ev.qfi() / strategies::evaluate_at(*ref, p.gamma, p.dgamma).qfi());
        row.emplace_back(std::monostate{});  // peak flag, set below
        rows.push_back(std::move(row));
    }
    const auto peak = static_cast<std::size_t>(std::max_element(q.begin(), q.end()) - q.begin());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (c.normalize) rows[i][4] = q[peak] > 0.0 ? q[i] / q[peak] : 0.0;
        rows[i].back() = static_cast<long long>(i == peak);
    }
    doc.table.rows = std::move(rows);

    doc.summary = {{"family", std::string(strategies::to_string(spec.family))},
                   {"N", static_cast<long long>(spec.layout.n_total())},
                   {"n", static_cast<long long>(spec.layout.n_noisy())},
                   {"closed_form", closed_form_name(spec)},
                   {"peak_index", static_cast<long long>(peak)},
                   {"peak_t", cell(pts[peak].t)},
                   {"peak_gamma", pts[peak].gamma},
                   {"peak_qfi", q[peak]}};
    if (c.refine_peak) {
        if (c.gamma || pts.size() < 3) throw std::invalid_argument("--refine-peak needs a time grid of >= 3 points");
        std::vector<double> grid;
        for (const Point& p : pts) grid.push_back(*p.t);
        const auto tp = strategies::find_time_peak(spec, grid);
        doc.summary.emplace_back("refined_peak_t", tp.t);
        doc.summary.emplace_back("refined_peak_gamma", tp.gamma);
        doc.summary.emplace_back("refined_peak_qfi", tp.qfi);
    }
    return doc;
}

inline Document cmd_bound(const RunConfig& c) {
    const StrategySpec spec = strategy_spec(c, c.state);
    const auto rho0 = state::DensityMatrix::from_pure(strategies::initial_state(spec));
    Document doc;
    doc.table.columns = {"t", "gamma", "dgamma", "qfi", "bound_closed", "bound_kraus",
                         "i1_identity_deviation", "i2_max_abs", "qfi_over_bound"};
    for (const Point& p : points(c, spec)) {
        const auto f = qfi::qfi_evolved(rho0, spec.layout, p.gamma, p.dgamma);
        const auto b = qfi::upper_bound_kraus(rho0, spec.layout, p.gamma, p.dgamma);
        Cell ratio;
        if (f.bound && *f.bound > 0.0) ratio = *f.value / *f.bound;
        doc.table.rows.push_back({cell(p.t), p.gamma, p.dgamma, *f.value, cell(f.bound), cell(b.value),
                                  b.i1_identity_deviation, b.i2_max_abs, ratio});
    }
    doc.summary = {{"N", static_cast<long long>(spec.layout.n_total())},
                   {"n", static_cast<long long>(spec.layout.n_noisy())}};
    return doc;
}

inline Document cmd_sld(const RunConfig& c) {
    const StrategySpec spec = strategy_spec(c, c.state);
    const auto psi = strategies::initial_state(spec);
    const auto rho0 = state::DensityMatrix::from_pure(psi);
    const bool single = spec.layout.n_total() == 1;

    Document doc;
    auto& cols = doc.table.columns;
    cols = {"t", "gamma", "dgamma", "qfi", "tr_rho_l", "tr_rho_l2", "tr_drho_l", "defect"};
    if (single) {
        cols.insert(cols.end(), {"l00", "l01_re", "l01_im", "l11", "compact_defect",
                                 "compact_consistent", "cfi_sigma_x", "cfi_sigma_y", "cfi_computational"});
    }
    for (const Point& p : points(c, spec)) {
        const auto out = state::apply_dephasing(rho0, spec.layout, p.gamma);
        const state::Matrix drho = state::drho_dT(rho0, spec.layout, p.gamma, p.dgamma);
        const state::Matrix l = qfi::sld(out, drho);
        const auto tr = qfi::sld_traces(out, drho, l);
        std::vector<Cell> row{cell(p.t), p.gamma, p.dgamma, *qfi::qfi_spectral(out, drho).value,
                              tr.rho_l, tr.rho_l2, tr.drho_l,
                              qfi::anticommutator_defect(out.matrix(), drho, l)};
        if (single) {
            const auto compact = qfi::sld_closed_single(rho0(0, 0).real(), rho0(0, 1), p.gamma, p.dgamma);
            row.insert(row.end(),
                       {l(0, 0).real(), l(0, 1).real(), l(0, 1).imag(), l(1, 1).real(), compact.defect,
                        static_cast<long long>(compact.consistent),
                        qfi::classical_fi(qfi::sigma_x_povm(), out, drho),
                        qfi::classical_fi(qfi::sigma_y_povm(), out, drho),
                        qfi::classical_fi(qfi::computational_povm(1), out, drho)});
        }
        doc.table.rows.push_back(std::move(row));
    }
    doc.summary = {{"N", static_cast<long long>(spec.layout.n_total())},
                   {"n", static_cast<long long>(spec.layout.n_noisy())}};
    return doc;
}

inline Document cmd_opt_n(const RunConfig& c) {
    StrategySpec probe;
    probe.bath = c.bath;
    probe.series = c.series;
    probe.validate();
    const double constant = ghz_optimum_constant();
    Document doc;
    doc.table.columns = {"t", "gamma", "x", "n_opt", "brute_force_n", "n_hi"};
    for (const Point& p : points(c, probe)) {
        const double x = constant / p.gamma;
        const long long n_opt = strategies::optimal_n_ghz(p.gamma);
        long long hi = c.n_hi;
        if (hi == 0) {
            hi = std::min<long long>(strategies::kBruteForceMaxN,
                                     std::max<long long>(200, static_cast<long long>(std::ceil(4.0 * x))));
        }
        doc.table.rows.push_back({cell(p.t), p.gamma, x, n_opt,
                                  strategies::brute_force_optimal_n(p.gamma, 3, hi), hi});
    }
    doc.summary = {{"constant", constant}, {"lambert_w", lambert_w0(-2.0 * std::exp(-2.0))}};
    return doc;
}

inline Document cmd_search(const RunConfig& c) {
    if (c.samples < 1) throw std::invalid_argument("--samples must be >= 1");
    if (c.n_total > strategies::kMaxSearchQubits || c.n_total < 2) {
        throw std::invalid_argument("search needs 2 <= N <= 6");
    }
    StrategySpec probe;
    probe.bath = c.bath;
    probe.series = c.series;
    probe.validate();
    const Point p = single_point(c, probe, "search");
    const auto layout = c.strategy == "parallel" ? state::ProbeLayout::parallel(c.n_total)
                                                 : state::ProbeLayout::ancilla(c.n_total, c.n_noisy);
    const auto r = strategies::search_random_states_at(
        layout, p.gamma, p.dgamma, static_cast<std::uint64_t>(c.samples), c.seed);

    Document doc;
    doc.table.columns = {"basis", "bits", "re", "im", "probability"};
    const auto& amps = r.best_state->amplitudes();
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        std::string bits;
        for (int q = c.n_total - 1; q >= 0; --q) bits += ((i >> q) & 1) ? '1' : '0';
        doc.table.rows.push_back({static_cast<long long>(i), bits, amps(i).real(), amps(i).imag(),
                                  std::norm(amps(i))});
    }
    doc.summary = {{"N", static_cast<long long>(c.n_total)},
                   {"n", static_cast<long long>(c.n_noisy)},
                   {"t", cell(p.t)},
                   {"gamma", p.gamma},
                   {"dgamma", p.dgamma},
                   {"samples", c.samples},
                   {"best_index", static_cast<long long>(r.best_index)},
                   {"best_qfi", r.best_qfi},
                   {"ghz_qfi", r.ghz_qfi},
                   {"w_qfi", r.w_qfi},
                   {"verdict", std::string(r.exceeded ? "exceeded" : "not exceeded")}};
    return doc;
}

inline void render(const Document& doc, const std::string& format, std::ostream& os) {
    if (format == "json") {
        write_json(os, doc);
    } else {
        write_csv(os, doc);
    }
}

inline Document cmd_verify(const RunConfig& c, std::ostream& err, bool& all_passed) {
    auto suites = run_suites({c.seed, c.ghz_fault});

    // Whole-command determinism: the same config rendered twice, both formats.
    SuiteResult det{"determinism"};
    RunConfig probe;
    probe.state = "ghz";
    probe.n_total = 3;
    probe.t_start = 0.01;
    probe.t_end = 0.3;
    probe.t_steps = 12;
    probe.normalize = true;
    resolve(probe);
    for (const std::string fmt : {"csv", "json"}) {
        std::ostringstream a, b;
        render(cmd_qfi(probe), fmt, a);
        render(cmd_qfi(probe), fmt, b);
        det.check(a.str() == b.str(), [&] { return "qfi output differs between runs (" + fmt + ")"; });
    }
    det.check(state::random_pure(4, c.seed, 17).amplitudes() == state::random_pure(4, c.seed, 17).amplitudes(),
              [] { return std::string("random_pure not reproducible"); });
    suites.push_back(det);

    Document doc;
    doc.table.columns = {"suite", "cases", "failed", "status", "first_failure"};
    long long failed_suites = 0;
    for (const auto& s : suites) {
        doc.table.rows.push_back({s.name, s.cases, s.failed, std::string(s.passed() ? "pass" : "fail"),
                                  s.first_failure});
        if (!s.passed()) {
            ++failed_suites;
            err << "verify: suite " << s.name << " failed (" << s.failed << " of " << s.cases
                << "); first failure: " << s.first_failure << '\n';
        }
    }
    all_passed = failed_suites == 0;
    doc.summary = {{"suites", static_cast<long long>(suites.size())},
                   {"failed_suites", failed_suites},
                   {"verdict", std::string(all_passed ? "pass" : "fail")}};
    return doc;
}

}  // namespace app_detail

/// Runs one invocation. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Thermometry with dephasing qubit probes in a squeezed thermal bath", kToolName};
    app.set_version_flag("--version", std::string(kToolName) + ' ' + kToolVersion);
    app.require_subcommand(1);
    RunConfig cfg;
    bind_options(app, cfg);

    const std::vector<std::pair<const char*, const char*>> commands{
        {"gamma", "decay factor and its temperature derivatives on a time grid"},
        {"qfi", "quantum Fisher information of a probe strategy"},
        {"bound", "QFI against the Kraus-derivative upper bound"},
        {"sld", "symmetric logarithmic derivative and measurement Fisher information"},
        {"opt-n", "optimal number of GHZ channel uses"},
        {"search", "best of many Haar-random probe states"},
        {"verify", "run the invariant and oracle suites"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        resolve(cfg);
        Document doc;
        bool verify_ok = true;
        if (command == "gamma") doc = app_detail::cmd_gamma(cfg, err);
        else if (command == "qfi") doc = app_detail::cmd_qfi(cfg);
        else if (command == "bound") doc = app_detail::cmd_bound(cfg);
        else if (command == "sld") doc = app_detail::cmd_sld(cfg);
        else if (command == "opt-n") doc = app_detail::cmd_opt_n(cfg);
        else if (command == "search") doc = app_detail::cmd_search(cfg);
        else doc = app_detail::cmd_verify(cfg, err, verify_ok);
        doc.command = command;
        doc.seed = cfg.seed;
        doc.config = echo(cfg);

        if (cfg.out.empty()) {
            app_detail::render(doc, cfg.format, out);
        } else {
            std::ofstream file(cfg.out, std::ios::binary);
            if (!file) throw std::invalid_argument("cannot open output file '" + cfg.out + "'");
            app_detail::render(doc, cfg.format, file);
            if (!file.flush()) throw std::invalid_argument("failed writing '" + cfg.out + "'");
        }
        return verify_ok ? kExitOk : kExitVerifyFailed;
    } catch (const MismatchError& e) {
        err << "error: closed-form/spectral mismatch: " << e.what() << '\n';
        return kExitMismatch;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
}

}  // namespace qthermo::cli

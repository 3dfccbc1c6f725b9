// qfi_engine.hpp - quantum and classical Fisher information for the dephasing probe
//
// Everything here is a function of (ρ, ∂ρ/∂T) or of (Γ, ∂Γ/∂T); the bath
// model never enters directly. Closed forms return an empty value at Γ = 0,
// where coth Γ diverges.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qthermo/quantum_state.hpp"
#include "qthermo/summation.hpp"

namespace qthermo::qfi {

using state::cplx;
using state::DensityMatrix;
using state::Matrix;
using state::Matrix2;
using state::ProbeLayout;
using state::PureState;

/// Eigenvalue pairs with ϱ_i + ϱ_j at or below this are left out of spectral sums.
inline constexpr double kSupportCutoff = 1e-12;

enum class Method { closed_form, spectral, finite_difference };

inline std::string_view to_string(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::spectral: return "spectral";
        case Method::finite_difference: return "finite_difference";
    }
    return "unknown";
}

struct QfiResult {
    std::optional<double> value;  // empty: divergent (Γ = 0)
    std::optional<double> bound;  // C^n_T for the layout, when known
    double gamma{std::numeric_limits<double>::quiet_NaN()};
    double dgamma{std::numeric_limits<double>::quiet_NaN()};
    Method method{Method::spectral};

    [[nodiscard]] bool divergent() const { return !value.has_value(); }
};

namespace detail {

inline void check_dgamma(double dgamma) {
    if (!std::isfinite(dgamma)) throw std::invalid_argument("dgamma must be finite");
}

inline void check_derivative(const Matrix& drho, Eigen::Index dim) {
    if (drho.rows() != dim || drho.cols() != dim) {
        throw std::invalid_argument("derivative matrix has wrong dimension");
    }
    if (!drho.allFinite()) throw std::invalid_argument("derivative matrix is not finite");
    const double scale = std::max(1.0, drho.cwiseAbs().maxCoeff());
    if (state::hermiticity_defect(drho) > state::kHermitianTol * scale) {
        throw std::invalid_argument("derivative matrix is not Hermitian");
    }
}

// 1/(e^{2Γ} − 1) = ½(coth Γ − 1)
inline double half_coth_minus_one(double gamma) { return 1.0 / std::expm1(2.0 * gamma); }

// (a0 + a1 u) / (b0 + b1 u + b2 u²) with u = e^{2Γ} and b0 + b1 + b2 = 0, so
// the denominator vanishes at Γ = 0. Small Γ goes through expm1; large Γ
// divides through by u² to stay finite.
inline double rational_in_e2g(double gamma, double a0, double a1, double b1, double b2) {
    const double b0 = -(b1 + b2);
    if (gamma <= 1.0) {
        const double den = b2 * std::expm1(4.0 * gamma) + b1 * std::expm1(2.0 * gamma);
        return (a0 + a1 * std::exp(2.0 * gamma)) / den;
    }
    const double x = std::exp(-2.0 * gamma);
    return (a0 * x * x + a1 * x) / (b2 + b1 * x + b0 * x * x);
}

inline QfiResult closed(double gamma, double dgamma, double per_dgamma2,
                        std::optional<double> bound) {
    return {per_dgamma2 * dgamma * dgamma, bound, gamma, dgamma, Method::closed_form};
}

inline QfiResult divergent(double gamma, double dgamma) {
    return {std::nullopt, std::nullopt, gamma, dgamma, Method::closed_form};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Spectral evaluator

inline double spectral_sum(const state::Eigensystem& es, const Matrix& drho) {
    const Matrix d = es.vectors.adjoint() * drho * es.vectors;
    const Eigen::Index n = es.values.size();
    NeumaierSum<> f;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double s = es.values(i) + es.values(j);
            if (s <= kSupportCutoff) continue;
            const double w = (i == j ? 2.0 : 4.0) * std::norm(d(i, j)) / s;
            f += w;
        }
    }
    return f.value();
}

/// F_T = 2 Σ_ij |⟨ψ_i|∂ρ|ψ_j⟩|² / (ϱ_i + ϱ_j) over the support of ρ.
inline QfiResult qfi_spectral(const DensityMatrix& rho, const Matrix& drho,
                              Method tag = Method::spectral) {
    detail::check_derivative(drho, rho.matrix().rows());
    return {spectral_sum(state::eigendecompose(rho), drho), std::nullopt,
            std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(), tag};
}

/// ∂ρ/∂T by central differences in Γ, step eps.
inline Matrix drho_finite_difference(const DensityMatrix& rho0, const ProbeLayout& layout,
                                     double gamma, double dgamma, double eps = 1e-6) {
    if (!(eps > 0.0) || !(gamma > eps)) {
        throw std::invalid_argument("finite difference needs gamma > eps > 0");
    }
    const Matrix hi = state::apply_dephasing(rho0, layout, gamma + eps).matrix();
    const Matrix lo = state::apply_dephasing(rho0, layout, gamma - eps).matrix();
    return (hi - lo) * (dgamma / (2.0 * eps));
}

/// C^n_T = (n/2)(coth Γ − 1)(∂Γ/∂T)²; empty at Γ = 0.
inline std::optional<double> bound_closed(int n_noisy, double gamma, double dgamma) {
    if (n_noisy < 1) throw std::invalid_argument("bound needs n >= 1");
    state::check_gamma(gamma);
    detail::check_dgamma(dgamma);
    if (gamma == 0.0) return std::nullopt;
    return n_noisy * detail::half_coth_minus_one(gamma) * dgamma * dgamma;
}

/// Spectral QFI of the channel output for input rho0, with the closed-form bound attached.
inline QfiResult qfi_evolved(const DensityMatrix& rho0, const ProbeLayout& layout, double gamma,
                             double dgamma, Method method = Method::spectral) {
    detail::check_dgamma(dgamma);
    const DensityMatrix out = state::apply_dephasing(rho0, layout, gamma);
    Matrix drho;
    if (method == Method::finite_difference) {
        drho = drho_finite_difference(rho0, layout, gamma, dgamma);
    } else if (method == Method::spectral) {
        drho = state::drho_dT(rho0, layout, gamma, dgamma);
    } else {
        throw std::invalid_argument("qfi_evolved: method must be spectral or finite_difference");
    }
    QfiResult r = qfi_spectral(out, drho, method);
    r.bound = bound_closed(layout.n_noisy(), gamma, dgamma);
    r.gamma = gamma;
    r.dgamma = dgamma;
    return r;
}

inline QfiResult qfi_evolved(const PureState& psi, const ProbeLayout& layout, double gamma,
                             double dgamma, Method method = Method::spectral) {
    return qfi_evolved(DensityMatrix::from_pure(psi), layout, gamma, dgamma, method);
}

// ---------------------------------------------------------------------------
// Symmetric logarithmic derivative

/// Solves ∂ρ = ½{ρ, L} in the eigenbasis of ρ, restricted to its support.
inline Matrix sld(const DensityMatrix& rho, const Matrix& drho) {
    detail::check_derivative(drho, rho.matrix().rows());
    const state::Eigensystem es = state::eigendecompose(rho);
    Matrix l = es.vectors.adjoint() * drho * es.vectors;
    for (Eigen::Index j = 0; j < l.cols(); ++j) {
        for (Eigen::Index i = 0; i < l.rows(); ++i) {
            const double s = es.values(i) + es.values(j);
            l(i, j) = s > kSupportCutoff ? 2.0 * l(i, j) / s : cplx(0.0);
        }
    }
    return es.vectors * l * es.vectors.adjoint();
}

struct SldTraces {
    double rho_l{0.0};    // Tr[ρL], zero for a proper SLD
    double rho_l2{0.0};   // Tr[ρL²]
    double drho_l{0.0};   // Tr[(∂ρ)L]
};

inline SldTraces sld_traces(const DensityMatrix& rho, const Matrix& drho, const Matrix& l) {
    const Matrix& r = rho.matrix();
    return {(r * l).trace().real(), (r * l * l).trace().real(), (drho * l).trace().real()};
}

/// max |∂ρ − ½(ρL + Lρ)|
inline double anticommutator_defect(const Matrix& rho, const Matrix& drho, const Matrix& l) {
    return (drho - 0.5 * (rho * l + l * rho)).cwiseAbs().maxCoeff();
}

struct SldClosed {
    Matrix2 matrix;
    double defect{0.0};       // max |∂ρ − ½{ρ, L}|
    bool consistent{false};   // defect ≤ 1e-9 · max |∂ρ|
};

namespace detail {

inline void check_bloch(double p, cplx q) {
    if (!std::isfinite(p) || !std::isfinite(q.real()) || !std::isfinite(q.imag())) {
        throw std::invalid_argument("single-qubit data must be finite");
    }
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("population p must be in [0, 1]");
    if (std::norm(q) > p * (1.0 - p) + state::kNormTol) {
        throw std::invalid_argument("coherence too large: |q|^2 must be <= p(1-p)");
    }
}

// Output state [[p, q e^{-Γ}], [q̄ e^{-Γ}, 1−p]] and its T-derivative.
inline Matrix2 single_rho(double p, cplx q, double gamma) {
    const double s = std::exp(-gamma);
    return (Matrix2() << p, q * s, std::conj(q) * s, 1.0 - p).finished();
}

inline Matrix2 single_drho(cplx q, double gamma, double dgamma) {
    const double s = -dgamma * std::exp(-gamma);
    return (Matrix2() << 0.0, q * s, std::conj(q) * s, 0.0).finished();
}

inline SldClosed finish_sld(const Matrix2& l, double p, cplx q, double gamma, double dgamma) {
    const Matrix2 rho = single_rho(p, q, gamma);
    const Matrix2 drho = single_drho(q, gamma, dgamma);
    const double defect = (drho - 0.5 * (rho * l + l * rho)).cwiseAbs().maxCoeff();
    const double scale = drho.cwiseAbs().maxCoeff();
    return {l, defect, scale > 0.0 ? defect <= 1e-9 * scale : defect == 0.0};
}

}  // namespace detail

/// The compact single-qubit SLD matrix, (∂Γ/∂T)² prefactor included, with
/// the defect of the defining equation it leaves behind.
inline SldClosed sld_closed_single(double p, cplx q, double gamma, double dgamma) {
    detail::check_bloch(p, q);
    state::check_gamma(gamma);
    detail::check_dgamma(dgamma);
    Matrix2 l = Matrix2::Zero();
    if (q != cplx(0.0)) {
        // Entries divided through by e^{2Γ}; den = |q|²e^{−2Γ} + (p−1)p written
        // as a sum of two non-positive terms.
        const double a = p * (1.0 - p);
        const double m = std::norm(q);
        const double s = std::exp(-gamma);
        const double den = (m - a) * s * s + a * std::expm1(-2.0 * gamma);
        if (den == 0.0) throw std::domain_error("SLD undefined: pure probe at Gamma = 0");
        const double pre = dgamma * dgamma;
        const cplx off = -2.0 * s * (p - 1.0) * p * q / den;
        l << pre * 2.0 * (p - 1.0) * m * s * s / den, pre * off,
            pre * std::conj(off), pre * -2.0 * p * m * s * s / den;
    }
    return detail::finish_sld(l, p, q, gamma, dgamma);
}

/// The compact SLD for an equal-weight probe, coherence q = e^{iφ}/2.
inline SldClosed sld_closed_single_pure(double gamma, double dgamma, double phi) {
    state::check_gamma(gamma);
    detail::check_dgamma(dgamma);
    if (gamma == 0.0) throw std::domain_error("SLD undefined at Gamma = 0");
    const double pre = dgamma * dgamma;
    const double em1 = std::expm1(2.0 * gamma);
    const cplx up = (1.0 + std::exp(cplx(gamma, phi))) / -em1;
    const cplx down = (1.0 + std::exp(cplx(gamma, -phi))) / -em1;
    const Matrix2 l = (Matrix2() << pre / em1, pre * up, pre * down, pre / em1).finished();
    return detail::finish_sld(l, 0.5, 0.5 * std::polar(1.0, phi), gamma, dgamma);
}

// ---------------------------------------------------------------------------
// Measurements

class Povm {
public:
    /// Elements must be Hermitian, PSD and sum to the identity (all within 1e-12).
    static Povm make(std::vector<Matrix> elements) {
        if (elements.empty()) throw std::invalid_argument("POVM needs at least one element");
        const Eigen::Index d = elements.front().rows();
        Matrix total = Matrix::Zero(d, d);
        for (const Matrix& e : elements) {
            if (e.rows() != d || e.cols() != d) {
                throw std::invalid_argument("POVM elements differ in dimension");
            }
            if (state::hermiticity_defect(e) > state::kNormTol) {
                throw std::invalid_argument("POVM element is not Hermitian");
            }
            Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (e + e.adjoint()),
                                                         Eigen::EigenvaluesOnly);
            if (solver.eigenvalues().minCoeff() < -state::kNormTol) {
                throw std::invalid_argument("POVM element is not positive semidefinite");
            }
            total += e;
        }
        if ((total - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > state::kNormTol) {
            throw std::invalid_argument("POVM is incomplete: elements do not sum to identity");
        }
        return Povm(std::move(elements));
    }

    /// Rank-one projectors onto the columns of an orthonormal basis.
    static Povm projective(const Matrix& basis) {
        std::vector<Matrix> elements;
        for (Eigen::Index k = 0; k < basis.cols(); ++k) {
            elements.push_back(basis.col(k) * basis.col(k).adjoint());
        }
        return make(std::move(elements));
    }

    [[nodiscard]] const std::vector<Matrix>& elements() const { return elements_; }
    [[nodiscard]] Eigen::Index dim() const { return elements_.front().rows(); }

private:
    explicit Povm(std::vector<Matrix> e) : elements_(std::move(e)) {}
    std::vector<Matrix> elements_;
};

inline Povm sigma_x_povm() {
    const double h = 1.0 / std::sqrt(2.0);
    Matrix basis(2, 2);
    basis << h, h, h, -h;
    return Povm::projective(basis);
}

inline Povm sigma_y_povm() {
    const double h = 1.0 / std::sqrt(2.0);
    Matrix basis(2, 2);
    basis << h, h, cplx(0.0, h), cplx(0.0, -h);
    return Povm::projective(basis);
}

inline Povm computational_povm(int n_qubits) {
    state::check_qubit_count(n_qubits);
    const auto d = static_cast<Eigen::Index>(state::dim_of(n_qubits));
    return Povm::projective(Matrix::Identity(d, d));
}

/// Σ_i (∂P_i)²/P_i with P_i = Tr[E_i ρ]. Outcomes where both P_i and |∂P_i|
/// fall below the support cutoff are skipped.
inline double classical_fi(const Povm& povm, const DensityMatrix& rho, const Matrix& drho) {
    if (povm.dim() != rho.matrix().rows()) {
        throw std::invalid_argument("POVM and state dimensions differ");
    }
    detail::check_derivative(drho, rho.matrix().rows());
    NeumaierSum<> f;
    for (const Matrix& e : povm.elements()) {
        const double prob = (e * rho.matrix()).trace().real();
        const double dprob = (e * drho).trace().real();
        if (prob <= kSupportCutoff) {
            if (std::abs(dprob) < kSupportCutoff) continue;
            throw std::domain_error("classical FI diverges: outcome with zero probability moves");
        }
        f += dprob * dprob / prob;
    }
    return f.value();
}

// ---------------------------------------------------------------------------
// Kraus-derivative upper bound

struct BoundResult {
    std::optional<double> value;     // 4[⟨I₁⟩ − ⟨I₂⟩²]; empty at Γ = 0
    double i1_identity_deviation{0.0};  // max |I₁ − cI| / |c|, c = Tr I₁ / d
    double i2_max_abs{0.0};             // max |I₂ entry|

    [[nodiscard]] bool divergent() const { return !value.has_value(); }
};

struct KrausBoundOperators {
    Matrix i1;  // Σ_l ∂K_l† ∂K_l
    Matrix i2;  // i Σ_l ∂K_l† K_l
};

inline constexpr int kMaxBoundQubits = 10;

/// I₁ and I₂ for the tensor-product Kraus family of a layout. Empty at Γ = 0,
/// where ∂k₂ is unbounded.
///
/// With K_l = ⊗_q k_{l_q}, ∂K_l is a sum over which noisy qubit is
/// differentiated, and the sum over l factorizes qubit by qubit:
///     Σ_l (∂_j K_l)† (∂_j' K_l) = ⊗_q Σ_a X_{q,a}† Y_{q,a}
/// with X = ∂k on qubit j, Y = ∂k on qubit j', and k elsewhere.
inline std::optional<KrausBoundOperators> kraus_bound_operators(const ProbeLayout& layout,
                                                                double gamma, double dgamma) {
    if (layout.n_total() > kMaxBoundQubits) {
        throw std::invalid_argument("Kraus bound is limited to N <= " +
                                    std::to_string(kMaxBoundQubits));
    }
    state::check_gamma(gamma);
    detail::check_dgamma(dgamma);
    if (gamma == 0.0 || std::isinf(gamma)) return std::nullopt;

    const state::KrausPair k = state::kraus_pair(gamma);
    const double e = std::exp(-gamma);
    const double w1 = std::sqrt((1.0 + e) / 2.0);
    const double w2 = std::sqrt((1.0 - e) / 2.0);
    // d/dT √((1 ± e^{−Γ})/2) = ∓ Γ' e^{−Γ} / (4 √(·))
    const state::KrausPair dk{k.k1 * (-dgamma * e / (4.0 * w1 * w1)),
                              k.k2 * (dgamma * e / (4.0 * w2 * w2))};
    auto local = [](const state::KrausPair& x, const state::KrausPair& y) -> Matrix2 {
        return x.k1.adjoint() * y.k1 + x.k2.adjoint() * y.k2;
    };
    const Matrix2 s_kk = local(k, k);
    const Matrix2 s_dk = local(dk, k);
    const Matrix2 s_kd = local(k, dk);
    const Matrix2 s_dd = local(dk, dk);

    const int n_total = layout.n_total();
    const auto d = static_cast<Eigen::Index>(state::dim_of(n_total));
    std::vector<Matrix2> base(static_cast<std::size_t>(n_total), Matrix2::Identity());
    for (int q : layout.noisy()) base[static_cast<std::size_t>(q)] = s_kk;

    KrausBoundOperators ops{Matrix::Zero(d, d), Matrix::Zero(d, d)};
    for (int j : layout.noisy()) {
        for (int jp : layout.noisy()) {
            std::vector<Matrix2> factors = base;
            if (j == jp) {
                factors[static_cast<std::size_t>(j)] = s_dd;
            } else {
                factors[static_cast<std::size_t>(j)] = s_dk;
                factors[static_cast<std::size_t>(jp)] = s_kd;
            }
            ops.i1 += state::tensor_product(factors);
        }
        std::vector<Matrix2> factors = base;
        factors[static_cast<std::size_t>(j)] = s_dk;
        ops.i2 += cplx(0.0, 1.0) * state::tensor_product(factors);
    }
    return ops;
}

/// C_T = 4[⟨I₁⟩ − ⟨I₂⟩²] in the input state rho0, from the generic contraction.
inline BoundResult upper_bound_kraus(const DensityMatrix& rho0, const ProbeLayout& layout,
                                     double gamma, double dgamma) {
    state::check_layout(rho0.dim(), layout);
    const auto ops = kraus_bound_operators(layout, gamma, dgamma);
    if (!ops) return {};
    const Eigen::Index d = ops->i1.rows();
    const cplx c = ops->i1.trace() / static_cast<double>(d);
    const double dev = (ops->i1 - c * Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    BoundResult out;
    out.i1_identity_deviation = std::abs(c) > 0.0 ? dev / std::abs(c) : dev;
    out.i2_max_abs = ops->i2.cwiseAbs().maxCoeff();
    const double e1 = (rho0.matrix() * ops->i1).trace().real();
    const double e2 = (rho0.matrix() * ops->i2).trace().real();
    out.value = 4.0 * (e1 - e2 * e2);
    return out;
}

// ---------------------------------------------------------------------------
// Closed forms

inline QfiResult qfi_closed_single_pure(double theta0, double gamma, double dgamma) {
    if (!std::isfinite(theta0)) throw std::invalid_argument("theta0 must be finite");
    state::check_gamma(gamma);
    detail::check_dgamma(dgamma);
    if (gamma == 0.0) return detail::divergent(gamma, dgamma);
    const double s = std::sin(theta0);
    return detail::closed(gamma, dgamma, detail::half_coth_minus_one(gamma) * s * s,
                          bound_closed(1, gamma, dgamma));
}

/// 4(p−1)p|q|² / (|q|² + e^{2Γ}(p−1)p) · (∂Γ/∂T)², for output coherence q e^{−Γ}.
inline QfiResult qfi_closed_single_mixed(double p, cplx q, double gamma, double dgamma) {
    detail::check_bloch(p, q);
    state::check_gamma(gamma);
    detail::check_dgamma(dgamma);
    const double a = p * (1.0 - p);
    const double m = std::norm(q);
    if (m == 0.0) return detail::closed(gamma, dgamma, 0.0, bound_closed(1, gamma, dgamma));
    // e^{2Γ}p(1−p) − |q|² = p(1−p)(e^{2Γ} − 1) + (p(1−p) − |q|²), both terms ≥ 0.
    const double den = a * std::expm1(2.0 * gamma) + std::max(0.0, a - m);
    if (den == 0.0) return detail::divergent(gamma, dgamma);
    return detail::closed(gamma, dgamma, 4.0 * a * m / den, bound_closed(1, gamma, dgamma));
}

enum class Family { bell_ancilla, bell_parallel, ghz, ghz_parallel, w_ancilla, w_parallel, w_special };

inline std::string_view to_string(Family f) {
    switch (f) {
        case Family::bell_ancilla: return "bell_ancilla";
        case Family::bell_parallel: return "bell_parallel";
        case Family::ghz: return "ghz";
        case Family::ghz_parallel: return "ghz_parallel";
        case Family::w_ancilla: return "w_ancilla";
        case Family::w_parallel: return "w_parallel";
        case Family::w_special: return "w_special";
    }
    return "unknown";
}

struct CatalogEntry {
    Family family{Family::ghz};
    int n_total{2};
    int n_noisy{1};
};

inline constexpr std::array<std::array<int, 2>, 5> kWSpecialCases{{{3, 2}, {4, 2}, {4, 3}, {6, 2}, {6, 5}}};

inline bool is_w_special(int n_total, int n_noisy) {
    return std::any_of(kWSpecialCases.begin(), kWSpecialCases.end(),
                       [&](const auto& c) { return c[0] == n_total && c[1] == n_noisy; });
}

namespace detail {

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace detail

inline CatalogEntry bell_ancilla() { return {Family::bell_ancilla, 2, 1}; }
inline CatalogEntry bell_parallel() { return {Family::bell_parallel, 2, 2}; }
inline CatalogEntry ghz(int n_total, int n_noisy) { return {Family::ghz, n_total, n_noisy}; }
inline CatalogEntry ghz_parallel(int n_total) { return {Family::ghz_parallel, n_total, n_total}; }
inline CatalogEntry w_ancilla(int n_total) { return {Family::w_ancilla, n_total, 1}; }
inline CatalogEntry w_parallel(int n_total) { return {Family::w_parallel, n_total, n_total}; }
inline CatalogEntry w_special(int n_total, int n_noisy) { return {Family::w_special, n_total, n_noisy}; }

/// Throws unless the entry lies in the range its formula is stated for.
inline void validate(const CatalogEntry& e) {
    using detail::require;
    const int big_n = e.n_total;
    const int n = e.n_noisy;
    switch (e.family) {
        case Family::bell_ancilla:
            require(big_n == 2 && n == 1, "bell_ancilla is the (N, n) = (2, 1) case");
            break;
        case Family::bell_parallel:
            require(big_n == 2 && n == 2, "bell_parallel is the (N, n) = (2, 2) case");
            break;
        case Family::ghz:
            require(big_n >= 2 && n >= 1 && n <= big_n, "ghz needs N >= 2 and 1 <= n <= N");
            break;
        case Family::ghz_parallel:
            require(big_n >= 3 && n == big_n, "ghz_parallel needs N >= 3 and n = N");
            break;
        case Family::w_ancilla:
            require(big_n >= 3 && n == 1, "w_ancilla needs N >= 3 and n = 1");
            break;
        case Family::w_parallel:
            require(big_n >= 3 && n == big_n, "w_parallel needs N >= 3 and n = N");
            break;
        case Family::w_special:
            require(is_w_special(big_n, n),
                    "no closed form for W state with (N, n) = (" + std::to_string(big_n) + ", " +
                        std::to_string(n) +
                        "); known cases are (3,2) (4,2) (4,3) (6,2) (6,5); use the spectral "
                        "evaluator instead");
            break;
    }
}

/// Closed-form QFI divided by (∂Γ/∂T)²; requires Γ > 0.
inline double catalog_rate(const CatalogEntry& e, double gamma) {
    using detail::rational_in_e2g;
    const double big_n = e.n_total;
    const double n = e.n_noisy;
    switch (e.family) {
        case Family::bell_ancilla:
            return detail::half_coth_minus_one(gamma);
        case Family::bell_parallel:
            return rational_in_e2g(gamma, 4.0, 0.0, 0.0, 1.0);
        case Family::ghz:
            if (e.n_noisy == 1) return detail::half_coth_minus_one(gamma);
            return n * n / std::expm1(2.0 * n * gamma);
        case Family::ghz_parallel:
            return big_n * big_n / std::expm1(2.0 * big_n * gamma);
        case Family::w_ancilla:
            return 4.0 * (big_n - 1.0) / (big_n * big_n) * detail::half_coth_minus_one(gamma);
        case Family::w_parallel:
            return rational_in_e2g(gamma, 4.0 * (big_n - 1.0), 0.0, big_n - 2.0, 1.0);
        case Family::w_special:
            switch (e.n_total * 10 + e.n_noisy) {
                case 32: return rational_in_e2g(gamma, 8.0, 8.0, -3.0, 6.0);
                case 42: return rational_in_e2g(gamma, 2.0, 4.0, -2.0, 3.0);
                case 43: return rational_in_e2g(gamma, 6.0, 3.0, 0.0, 2.0);
                case 62: return rational_in_e2g(gamma, 4.0, 16.0, -12.0, 15.0);
                case 65: return rational_in_e2g(gamma, 20.0, 5.0, 3.0, 3.0);
                default: break;
            }
            break;
    }
    throw std::invalid_argument("unsupported catalog entry");
}

inline QfiResult qfi_closed(const CatalogEntry& e, double gamma, double dgamma) {
    validate(e);
    state::check_gamma(gamma);
    detail::check_dgamma(dgamma);
    if (gamma == 0.0) return detail::divergent(gamma, dgamma);
    return detail::closed(gamma, dgamma, catalog_rate(e, gamma),
                          bound_closed(e.n_noisy, gamma, dgamma));
}

/// The input state a catalog formula describes.
inline PureState catalog_state(const CatalogEntry& e) {
    validate(e);
    switch (e.family) {
        case Family::bell_ancilla:
        case Family::bell_parallel:
        case Family::ghz:
        case Family::ghz_parallel:
            return state::make_ghz(e.n_total);
        default:
            return state::make_w(e.n_total);
    }
}

/// Its layout: the last n qubits noisy.
inline ProbeLayout catalog_layout(const CatalogEntry& e) {
    validate(e);
    return ProbeLayout::ancilla(e.n_total, e.n_noisy);
}

/// Every catalog entry with N ≤ n_max_total.
inline std::vector<CatalogEntry> catalog_entries(int n_max_total) {
    std::vector<CatalogEntry> out{bell_ancilla(), bell_parallel()};
    for (int big_n = 2; big_n <= n_max_total; ++big_n) {
        for (int n = 1; n <= big_n; ++n) out.push_back(ghz(big_n, n));
    }
    for (int big_n = 3; big_n <= n_max_total; ++big_n) out.push_back(ghz_parallel(big_n));
    for (int big_n = 3; big_n <= n_max_total; ++big_n) out.push_back(w_ancilla(big_n));
    for (int big_n = 3; big_n <= n_max_total; ++big_n) out.push_back(w_parallel(big_n));
    for (const auto& c : kWSpecialCases) {
        if (c[0] <= n_max_total) out.push_back(w_special(c[0], c[1]));
    }
    return out;
}

/// Cramér–Rao variance floor 1/(M F_T); empty when F_T = 0.
inline std::optional<double> qcr_variance(double qfi, long long repetitions) {
    if (!std::isfinite(qfi) || qfi < 0.0) throw std::invalid_argument("qfi must be finite and >= 0");
    if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    if (qfi == 0.0) return std::nullopt;
    return 1.0 / (static_cast<double>(repetitions) * qfi);
}

}  // namespace qthermo::qfi

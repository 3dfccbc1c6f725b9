// quantum_state.hpp - N-qubit probe states and the independent dephasing channel
//
// Basis convention: qubit 0 is the most significant bit of a basis index, so
// for N = 3 the index 0b100 is |100⟩ (qubit 0 excited). Dense storage only;
// N is capped at kMaxQubits.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "qthermo/random.hpp"

namespace qthermo::state {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;

inline constexpr int kMaxQubits = 12;
inline constexpr double kNormTol = 1e-12;

inline std::size_t dim_of(int n_qubits) { return std::size_t{1} << n_qubits; }

inline void check_qubit_count(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                                    "], got " + std::to_string(n));
    }
}

/// Largest |A − A†| entry.
inline double hermiticity_defect(const Matrix& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

class PureState {
public:
    /// Takes ownership of `amps`; throws unless the norm is 1 within 1e-12.
    static PureState from_amplitudes(int n_qubits, Vector amps) {
        check_qubit_count(n_qubits);
        if (static_cast<std::size_t>(amps.size()) != dim_of(n_qubits)) {
            throw std::invalid_argument("amplitude vector has wrong dimension");
        }
        if (std::abs(amps.squaredNorm() - 1.0) > kNormTol) {
            throw std::invalid_argument("pure state is not normalized");
        }
        return PureState(n_qubits, std::move(amps));
    }

    static PureState normalized(int n_qubits, Vector amps) {
        const double norm = amps.norm();
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw std::invalid_argument("cannot normalize a zero or non-finite vector");
        }
        amps /= norm;
        return from_amplitudes(n_qubits, std::move(amps));
    }

    [[nodiscard]] int n_qubits() const { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const { return dim_of(n_qubits_); }
    [[nodiscard]] const Vector& amplitudes() const { return amps_; }
    [[nodiscard]] cplx operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

    [[nodiscard]] Matrix projector() const { return amps_ * amps_.adjoint(); }

private:
    PureState(int n, Vector a) : n_qubits_(n), amps_(std::move(a)) {}

    int n_qubits_;
    Vector amps_;
};

class DensityMatrix {
public:
    /// Validates Hermiticity and unit trace (both within 1e-12).
    static DensityMatrix from_matrix(int n_qubits, Matrix m) {
        check_qubit_count(n_qubits);
        const auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
        if (m.rows() != d || m.cols() != d) {
            throw std::invalid_argument("density matrix has wrong dimension");
        }
        if (hermiticity_defect(m) > kNormTol) {
            throw std::invalid_argument("density matrix is not Hermitian");
        }
        if (std::abs(m.trace() - cplx(1.0)) > kNormTol) {
            throw std::invalid_argument("density matrix trace differs from 1");
        }
        return DensityMatrix(n_qubits, std::move(m));
    }

    static DensityMatrix from_pure(const PureState& psi) {
        return DensityMatrix(psi.n_qubits(), psi.projector());
    }

    [[nodiscard]] int n_qubits() const { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const { return dim_of(n_qubits_); }
    [[nodiscard]] const Matrix& matrix() const { return m_; }
    [[nodiscard]] cplx operator()(std::size_t i, std::size_t j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

private:
    DensityMatrix(int n, Matrix m) : n_qubits_(n), m_(std::move(m)) {}

    int n_qubits_;
    Matrix m_;
};

/// Which qubits of an N-qubit register sit in the bath.
class ProbeLayout {
public:
    static ProbeLayout make(int n_total, std::vector<int> noisy) {
        check_qubit_count(n_total);
        if (noisy.empty() || static_cast<int>(noisy.size()) > n_total) {
            throw std::invalid_argument("layout needs between 1 and N noisy qubits");
        }
        std::vector<int> sorted = noisy;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::invalid_argument("noisy qubit indices must be distinct");
        }
        if (sorted.front() < 0 || sorted.back() >= n_total) {
            throw std::invalid_argument("noisy qubit index out of range");
        }
        return ProbeLayout(n_total, std::move(noisy));
    }

    /// Every qubit passes through the channel.
    static ProbeLayout parallel(int n_total) {
        std::vector<int> all(static_cast<std::size_t>(n_total));
        std::iota(all.begin(), all.end(), 0);
        return make(n_total, std::move(all));
    }

    /// The last n qubits are noisy; the first N − n are noiseless ancillas.
    static ProbeLayout ancilla(int n_total, int n_noisy) {
        if (n_noisy < 1 || n_noisy > n_total) {
            throw std::invalid_argument("ancilla layout needs 1 <= n <= N");
        }
        std::vector<int> noisy(static_cast<std::size_t>(n_noisy));
        std::iota(noisy.begin(), noisy.end(), n_total - n_noisy);
        return make(n_total, std::move(noisy));
    }

    [[nodiscard]] int n_total() const { return n_total_; }
    [[nodiscard]] int n_noisy() const { return static_cast<int>(noisy_.size()); }
    [[nodiscard]] const std::vector<int>& noisy() const { return noisy_; }

    /// Bit mask over basis indices selecting the noisy qubits.
    [[nodiscard]] std::uint64_t mask() const {
        std::uint64_t m = 0;
        for (int q : noisy_) m |= std::uint64_t{1} << (n_total_ - 1 - q);
        return m;
    }

private:
    ProbeLayout(int n, std::vector<int> noisy) : n_total_(n), noisy_(std::move(noisy)) {}

    int n_total_;
    std::vector<int> noisy_;
};

// ---------------------------------------------------------------------------
// State families

inline PureState make_single(double theta0, double phi0) {
    Vector v(2);
    v << std::cos(theta0 / 2.0), std::sin(theta0 / 2.0) * std::polar(1.0, phi0);
    return PureState::normalized(1, std::move(v));
}

inline PureState make_ghz(int n) {
    if (n < 2) throw std::invalid_argument("GHZ state needs N >= 2");
    check_qubit_count(n);
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim_of(n)));
    v(0) = v(v.size() - 1) = 1.0 / std::sqrt(2.0);
    return PureState::normalized(n, std::move(v));
}

inline PureState make_w(int n) {
    if (n < 2) throw std::invalid_argument("W state needs N >= 2");
    check_qubit_count(n);
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim_of(n)));
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < n; ++k) v(Eigen::Index{1} << k) = amp;
    return PureState::normalized(n, std::move(v));
}

/// Haar-random pure state: i.i.d. complex Gaussian coordinates, normalized.
inline PureState random_pure(int n, std::uint64_t seed, std::uint64_t index = 0) {
    check_qubit_count(n);
    auto rng = SplitMix64::for_index(seed, index);
    Vector v(static_cast<Eigen::Index>(dim_of(n)));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const auto [re, im] = rng.normal_pair();
        v(i) = cplx(re, im);
    }
    return PureState::normalized(n, std::move(v));
}

// ---------------------------------------------------------------------------
// Channel

struct KrausPair {
    Matrix2 k1;
    Matrix2 k2;
};

inline void check_gamma(double gamma) {
    if (std::isnan(gamma) || gamma < 0.0) {
        throw std::invalid_argument("decay factor must be >= 0, got " + std::to_string(gamma));
    }
}

/// Single-qubit dephasing Kraus operators, k1 ∝ I and k2 ∝ σ_z.
inline KrausPair kraus_pair(double gamma) {
    check_gamma(gamma);
    const double decay = std::exp(-gamma);
    const Matrix2 z = (Matrix2() << 1.0, 0.0, 0.0, -1.0).finished();
    return {std::sqrt((1.0 + decay) / 2.0) * Matrix2::Identity(),
            std::sqrt((1.0 - decay) / 2.0) * z};
}

/// Number of noisy-qubit positions where basis strings i and j differ.
inline int noisy_hamming(std::uint64_t i, std::uint64_t j, std::uint64_t mask) {
    return std::popcount((i ^ j) & mask);
}

inline void check_layout(std::size_t dim, const ProbeLayout& layout) {
    if (dim != dim_of(layout.n_total())) {
        throw std::invalid_argument("layout qubit count does not match the state dimension");
    }
}

namespace detail {

// e^{-kΓ} for k = 0..n with the k = 0 entry pinned to 1 (Γ may be +inf).
inline std::vector<double> damping_table(int n, double gamma) {
    std::vector<double> table(static_cast<std::size_t>(n) + 1, 1.0);
    for (int k = 1; k <= n; ++k) table[static_cast<std::size_t>(k)] = std::exp(-k * gamma);
    return table;
}

}  // namespace detail

/// Independent dephasing in closed form: ρ(i,j) ↦ ρ(i,j)·e^{−h(i,j)Γ}.
inline DensityMatrix apply_dephasing(const DensityMatrix& rho, const ProbeLayout& layout,
                                     double gamma) {
    check_gamma(gamma);
    check_layout(rho.dim(), layout);
    const auto table = detail::damping_table(layout.n_noisy(), gamma);
    const std::uint64_t mask = layout.mask();
    Matrix out = rho.matrix();
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            const int h = noisy_hamming(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j), mask);
            out(i, j) *= table[static_cast<std::size_t>(h)];
        }
    }
    return DensityMatrix::from_matrix(rho.n_qubits(), std::move(out));
}

inline DensityMatrix apply_dephasing(const PureState& psi, const ProbeLayout& layout,
                                     double gamma) {
    return apply_dephasing(DensityMatrix::from_pure(psi), layout, gamma);
}

/// ∂ρ_out/∂T through Γ(T): −(∂Γ/∂T)·h(i,j)·ρ₀(i,j)·e^{−h(i,j)Γ}. Traceless, Hermitian.
inline Matrix drho_dT(const DensityMatrix& rho0, const ProbeLayout& layout, double gamma,
                      double dgamma) {
    check_gamma(gamma);
    check_layout(rho0.dim(), layout);
    const auto table = detail::damping_table(layout.n_noisy(), gamma);
    const std::uint64_t mask = layout.mask();
    Matrix out = rho0.matrix();
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            const int h = noisy_hamming(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j), mask);
            out(i, j) *= -dgamma * h * table[static_cast<std::size_t>(h)];
        }
    }
    return out;
}

inline Matrix drho_dT(const PureState& psi, const ProbeLayout& layout, double gamma,
                      double dgamma) {
    return drho_dT(DensityMatrix::from_pure(psi), layout, gamma, dgamma);
}

/// Full-register operator ⊗_q ops[q] (qubit 0 leftmost).
inline Matrix tensor_product(const std::vector<Matrix2>& ops) {
    Matrix out = Matrix::Identity(1, 1);
    for (const Matrix2& op : ops) {
        Matrix next = Eigen::kroneckerProduct(out, op).eval();
        out = std::move(next);
    }
    return out;
}

/// All 2^n tensor-product Kraus operators of the register: noisy qubits
/// carry k1 or k2, ancillas carry the identity.
inline std::vector<Matrix> tensor_kraus(const ProbeLayout& layout, double gamma) {
    const KrausPair local = kraus_pair(gamma);
    const int n = layout.n_noisy();
    std::vector<Matrix> ops;
    ops.reserve(std::size_t{1} << n);
    for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << n); ++choice) {
        std::vector<Matrix2> factors(static_cast<std::size_t>(layout.n_total()), Matrix2::Identity());
        for (int k = 0; k < n; ++k) {
            const bool second = (choice >> k) & 1U;
            factors[static_cast<std::size_t>(layout.noisy()[static_cast<std::size_t>(k)])] =
                second ? local.k2 : local.k1;
        }
        ops.push_back(tensor_product(factors));
    }
    return ops;
}

/// Σ_l K_l ρ K_l†, the operator-sum form of a channel.
inline DensityMatrix apply_kraus(const DensityMatrix& rho, const std::vector<Matrix>& ops) {
    Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (const Matrix& k : ops) {
        if (k.rows() != out.rows() || k.cols() != out.cols()) {
            throw std::invalid_argument("Kraus operator dimension mismatch");
        }
        out.noalias() += k * rho.matrix() * k.adjoint();
    }
    return DensityMatrix::from_matrix(rho.n_qubits(), std::move(out));
}

/// Trace out a single qubit.
inline DensityMatrix partial_trace(const DensityMatrix& rho, int qubit) {
    const int n = rho.n_qubits();
    if (n < 2) throw std::invalid_argument("cannot trace out the only qubit");
    if (qubit < 0 || qubit >= n) throw std::invalid_argument("qubit index out of range");
    const int bit = n - 1 - qubit;
    const std::uint64_t low_mask = (std::uint64_t{1} << bit) - 1;
    auto expand = [&](std::uint64_t reduced, std::uint64_t value) {
        return ((reduced & ~low_mask) << 1) | (value << bit) | (reduced & low_mask);
    };
    const auto d = static_cast<Eigen::Index>(dim_of(n - 1));
    Matrix out = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            for (std::uint64_t v = 0; v < 2; ++v) {
                out(i, j) += rho.matrix()(static_cast<Eigen::Index>(expand(static_cast<std::uint64_t>(i), v)),
                                          static_cast<Eigen::Index>(expand(static_cast<std::uint64_t>(j), v)));
            }
        }
    }
    return DensityMatrix::from_matrix(n - 1, std::move(out));
}

/// Layout of the register left after tracing out a noiseless qubit.
inline ProbeLayout drop_qubit(const ProbeLayout& layout, int qubit) {
    std::vector<int> noisy;
    for (int q : layout.noisy()) {
        if (q == qubit) throw std::invalid_argument("only noiseless qubits may be dropped");
        noisy.push_back(q > qubit ? q - 1 : q);
    }
    return ProbeLayout::make(layout.n_total() - 1, std::move(noisy));
}

// ---------------------------------------------------------------------------
// Spectral decomposition

struct Eigensystem {
    Eigen::VectorXd values;  // descending
    Matrix vectors;          // orthonormal columns, vectors.col(k) ↔ values(k)
};

inline constexpr double kHermitianTol = 1e-10;

/// Spectral decomposition of a Hermitian matrix, eigenvalues in descending order.
inline Eigensystem eigendecompose_hermitian(const Matrix& a) {
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if (hermiticity_defect(a) > kHermitianTol * scale) {
        throw std::invalid_argument("eigendecompose: matrix is not Hermitian");
    }
    const Matrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecompose: solver failed to converge");
    }
    const Eigen::Index n = sym.rows();
    Eigensystem out{Eigen::VectorXd(n), Matrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = solver.eigenvalues()(n - 1 - k);
        out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return out;
}

/// As above, with eigenvalues in (−1e-12, 0) clamped to exactly 0.
inline Eigensystem eigendecompose(const DensityMatrix& rho) {
    Eigensystem es = eigendecompose_hermitian(rho.matrix());
    for (Eigen::Index k = 0; k < es.values.size(); ++k) {
        if (es.values(k) < 0.0 && es.values(k) > -1e-12) es.values(k) = 0.0;
    }
    return es;
}

inline Matrix reconstruct(const Eigensystem& es) {
    return es.vectors * es.values.cast<cplx>().asDiagonal() * es.vectors.adjoint();
}

}  // namespace qthermo::state

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qthermo/quantum_state.hpp"

namespace {

using namespace qthermo::state;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<std::vector<int>> all_subsets(int n) {
    std::vector<std::vector<int>> out;
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> s;
        for (int q = 0; q < n; ++q) {
            if (mask & (1 << q)) s.push_back(q);
        }
        out.push_back(s);
    }
    return out;
}

DensityMatrix random_mixed(int n, std::uint64_t seed) {
    // Mixture of three random pure states with unequal weights.
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim_of(n)), static_cast<Eigen::Index>(dim_of(n)));
    const double w[3] = {0.5, 0.3, 0.2};
    for (int k = 0; k < 3; ++k) m += w[k] * random_pure(n, seed, static_cast<std::uint64_t>(k)).projector();
    return DensityMatrix::from_matrix(n, m);
}

TEST(PureState, SingleQubitExamples) {
    const PureState zero = make_single(0.0, 1.234);
    EXPECT_NEAR(std::abs(zero[0]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(zero[1]), 0.0, 1e-15);
    const PureState one = make_single(std::numbers::pi, 0.0);
    EXPECT_NEAR(std::abs(one[0]), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(one[1]), 1.0, 1e-15);
    const PureState plus = make_single(std::numbers::pi / 2.0, 0.0);
    EXPECT_NEAR(plus[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(plus[1].real(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(PureState, Ghz) {
    const PureState bell = make_ghz(2);
    EXPECT_NEAR(bell[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(bell[3].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(bell[1], cplx(0.0));
    EXPECT_EQ(bell[2], cplx(0.0));
    const PureState g3 = make_ghz(3);
    EXPECT_NEAR(g3[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(g3[7].real(), 1.0 / std::sqrt(2.0), 1e-15);
    const PureState g5 = make_ghz(5);
    int nonzero = 0;
    for (std::size_t i = 0; i < g5.dim(); ++i) nonzero += g5[i] != cplx(0.0);
    EXPECT_EQ(nonzero, 2);
    EXPECT_NEAR(g5[31].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_THROW(make_ghz(1), std::invalid_argument);
}

TEST(PureState, W) {
    const PureState w3 = make_w(3);
    for (std::size_t i : {1u, 2u, 4u}) EXPECT_NEAR(w3[i].real(), 1.0 / std::sqrt(3.0), 1e-15);
    for (std::size_t i : {0u, 3u, 5u, 6u, 7u}) EXPECT_EQ(w3[i], cplx(0.0));
    const PureState w2 = make_w(2);
    EXPECT_NEAR(w2[1].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(w2[2].real(), 1.0 / std::sqrt(2.0), 1e-15);
    const PureState w4 = make_w(4);
    for (std::size_t i : {1u, 2u, 4u, 8u}) EXPECT_NEAR(w4[i].real(), 0.5, 1e-15);
    EXPECT_THROW(make_w(1), std::invalid_argument);
}

TEST(PureState, Validation) {
    Vector v(2);
    v << 1.0, 1.0;
    EXPECT_THROW(PureState::from_amplitudes(1, v), std::invalid_argument);
    EXPECT_THROW(PureState::from_amplitudes(2, Vector::Ones(2) / std::sqrt(2.0)), std::invalid_argument);
    EXPECT_THROW(PureState::normalized(1, Vector::Zero(2)), std::invalid_argument);
    EXPECT_THROW(make_ghz(kMaxQubits + 1), std::invalid_argument);
}

TEST(RandomPure, UnitNormAndDeterministic) {
    for (std::uint64_t i = 0; i < 50; ++i) {
        const PureState a = random_pure(4, 42, i);
        EXPECT_NEAR(a.amplitudes().squaredNorm(), 1.0, 1e-12);
        const PureState b = random_pure(4, 42, i);
        EXPECT_EQ(a.amplitudes(), b.amplitudes());
    }
    EXPECT_NE(random_pure(3, 42, 0).amplitudes(), random_pure(3, 43, 0).amplitudes());
    EXPECT_NE(random_pure(3, 42, 0).amplitudes(), random_pure(3, 42, 1).amplitudes());
}

TEST(RandomPure, PinnedFirstAmplitude) {
    // Guards the documented stream layout against accidental changes.
    const PureState a = random_pure(1, 7, 0);
    const PureState b = random_pure(1, 7, 0);
    EXPECT_EQ(a[0], b[0]);
    qthermo::SplitMix64 rng = qthermo::SplitMix64::for_index(7, 0);
    const auto [re0, im0] = rng.normal_pair();
    const auto [re1, im1] = rng.normal_pair();
    const double norm = std::sqrt(re0 * re0 + im0 * im0 + re1 * re1 + im1 * im1);
    EXPECT_NEAR(a[0].real(), re0 / norm, 1e-15);
    EXPECT_NEAR(a[1].imag(), im1 / norm, 1e-15);
}

TEST(RandomPure, HaarBlochMean) {
    double x = 0.0, y = 0.0, z = 0.0;
    const int samples = 10000;
    for (int i = 0; i < samples; ++i) {
        const PureState s = random_pure(1, 2024, static_cast<std::uint64_t>(i));
        const cplx a = s[0], b = s[1];
        x += 2.0 * (std::conj(a) * b).real();
        y += 2.0 * (std::conj(a) * b).imag();
        z += std::norm(a) - std::norm(b);
    }
    const double mean = std::sqrt(x * x + y * y + z * z) / samples;
    EXPECT_LT(mean, 0.03);
}

TEST(SplitMix64, ReferenceOutputs) {
    // First outputs of SplitMix64 seeded with 0, as published with the algorithm.
    qthermo::SplitMix64 rng(0);
    EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
    EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(Kraus, Examples) {
    const KrausPair k0 = kraus_pair(0.0);
    EXPECT_LT(max_abs(k0.k1 - Matrix2::Identity()), 1e-15);
    EXPECT_LT(max_abs(k0.k2), 1e-15);
    const KrausPair big = kraus_pair(60.0);
    EXPECT_NEAR(big.k1(0, 0).real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(big.k2(0, 0).real(), 1.0 / std::sqrt(2.0), 1e-15);
    const KrausPair ln2 = kraus_pair(std::log(2.0));
    EXPECT_NEAR(ln2.k1(0, 0).real(), std::sqrt(0.75), 1e-15);
    EXPECT_NEAR(ln2.k2(0, 0).real(), std::sqrt(0.25), 1e-15);
    EXPECT_NEAR(ln2.k2(1, 1).real(), -std::sqrt(0.25), 1e-15);
    EXPECT_THROW(kraus_pair(-0.1), std::invalid_argument);
    EXPECT_THROW(kraus_pair(std::nan("")), std::invalid_argument);
}

TEST(Kraus, TracePreserving) {
    for (double g : {0.0, 1e-8, 0.1, 1.0, 5.0, 50.0}) {
        const KrausPair k = kraus_pair(g);
        const Matrix2 sum = k.k1.adjoint() * k.k1 + k.k2.adjoint() * k.k2;
        EXPECT_LT(max_abs(sum - Matrix2::Identity()), 1e-12) << g;
    }
}

TEST(Layout, Validation) {
    EXPECT_THROW(ProbeLayout::make(3, {}), std::invalid_argument);
    EXPECT_THROW(ProbeLayout::make(3, {0, 0}), std::invalid_argument);
    EXPECT_THROW(ProbeLayout::make(3, {3}), std::invalid_argument);
    EXPECT_THROW(ProbeLayout::make(3, {-1}), std::invalid_argument);
    EXPECT_THROW(ProbeLayout::ancilla(3, 4), std::invalid_argument);
    const ProbeLayout a = ProbeLayout::ancilla(4, 2);
    EXPECT_EQ(a.noisy(), (std::vector<int>{2, 3}));
    EXPECT_EQ(a.mask(), 0b0011u);
    EXPECT_EQ(ProbeLayout::make(4, {0}).mask(), 0b1000u);
}

TEST(Channel, TensorOrderingPutsQubitZeroFirst) {
    const Matrix2 x = (Matrix2() << 0.0, 1.0, 1.0, 0.0).finished();
    const Matrix op = tensor_product({x, Matrix2::Identity()});
    Vector e00 = Vector::Zero(4);
    e00(0) = 1.0;
    const Vector out = op * e00;
    EXPECT_EQ(out(2), cplx(1.0));  // |10⟩
}

TEST(Channel, BellOneNoisyQubit) {
    const ProbeLayout layout = ProbeLayout::make(2, {1});
    for (double g : {0.0, 0.3, 2.0}) {
        const Matrix out = apply_dephasing(make_ghz(2), layout, g).matrix();
        Matrix expect = Matrix::Zero(4, 4);
        expect(0, 0) = expect(3, 3) = 0.5;
        expect(0, 3) = expect(3, 0) = std::exp(-g) / 2.0;
        EXPECT_LT(max_abs(out - expect), 1e-15);
    }
}

TEST(Channel, IdentityAtZero) {
    const DensityMatrix rho = random_mixed(3, 5);
    const Matrix out = apply_dephasing(rho, ProbeLayout::parallel(3), 0.0).matrix();
    EXPECT_EQ(out, rho.matrix());
}

TEST(Channel, InfiniteDecayKillsCrossCoherences) {
    const DensityMatrix out = apply_dephasing(make_ghz(3), ProbeLayout::make(3, {1}), INFINITY);
    EXPECT_EQ(out(0, 7), cplx(0.0));
    EXPECT_NEAR(out(0, 0).real(), 0.5, 1e-15);
}

TEST(Channel, GhzThreeAgainstExplicitKraus) {
    const ProbeLayout layout = ProbeLayout::parallel(3);
    const DensityMatrix closed = apply_dephasing(make_ghz(3), layout, 0.5);
    EXPECT_NEAR(closed(0, 7).real(), std::exp(-1.5) / 2.0, 1e-15);
    const auto ops = tensor_kraus(layout, 0.5);
    EXPECT_EQ(ops.size(), 8u);
    const DensityMatrix kraus = apply_kraus(DensityMatrix::from_pure(make_ghz(3)), ops);
    EXPECT_LT(max_abs(closed.matrix() - kraus.matrix()), 1e-12);
}

TEST(Channel, ClosedFormEqualsKrausAllLayoutsSmallN) {
    for (int n = 1; n <= 4; ++n) {
        const DensityMatrix rho = random_mixed(n, 100 + static_cast<std::uint64_t>(n));
        for (const auto& noisy : all_subsets(n)) {
            const ProbeLayout layout = ProbeLayout::make(n, noisy);
            for (double g : {0.0, 0.1, 1.0, 5.0}) {
                const Matrix a = apply_dephasing(rho, layout, g).matrix();
                const Matrix b = apply_kraus(rho, tensor_kraus(layout, g)).matrix();
                EXPECT_LT(max_abs(a - b), 1e-12) << "N=" << n << " Gamma=" << g;
            }
        }
    }
}

TEST(Channel, PreservesTraceHermiticityPositivity) {
    for (int n = 1; n <= 5; ++n) {
        const DensityMatrix rho = random_mixed(n, 7);
        for (double g : {0.01, 0.5, 3.0}) {
            const DensityMatrix out = apply_dephasing(rho, ProbeLayout::ancilla(n, (n + 1) / 2), g);
            EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
            EXPECT_LT(hermiticity_defect(out.matrix()), 1e-12);
            EXPECT_GE(eigendecompose(out).values.minCoeff(), -1e-10);
        }
    }
}

TEST(Channel, SemigroupInGamma) {
    const DensityMatrix rho = random_mixed(4, 11);
    const ProbeLayout layout = ProbeLayout::make(4, {0, 2, 3});
    const double g1 = 0.37, g2 = 1.21;
    const Matrix twice = apply_dephasing(apply_dephasing(rho, layout, g1), layout, g2).matrix();
    const Matrix once = apply_dephasing(rho, layout, g1 + g2).matrix();
    EXPECT_LT(max_abs(twice - once), 1e-15);
}

TEST(Channel, AncillaTraceCommutes) {
    const DensityMatrix rho = random_mixed(4, 13);
    const ProbeLayout layout = ProbeLayout::make(4, {1, 3});
    for (int q : {0, 2}) {
        const Matrix a = partial_trace(apply_dephasing(rho, layout, 0.8), q).matrix();
        const Matrix b = apply_dephasing(partial_trace(rho, q), drop_qubit(layout, q), 0.8).matrix();
        EXPECT_LT(max_abs(a - b), 1e-15) << "qubit " << q;
    }
    EXPECT_THROW(drop_qubit(layout, 1), std::invalid_argument);
}

TEST(Channel, PartialTraceOfProduct) {
    // ρ_A ⊗ ρ_B → ρ_A when the second qubit is traced out.
    const Matrix a = make_single(0.7, 0.2).projector();
    const Matrix b = make_single(2.1, -0.4).projector();
    const Matrix ab = Eigen::kroneckerProduct(a, b).eval();
    const DensityMatrix reduced = partial_trace(DensityMatrix::from_matrix(2, ab), 1);
    EXPECT_LT(max_abs(reduced.matrix() - a), 1e-15);
}

TEST(Channel, DimensionMismatchRejected) {
    EXPECT_THROW(apply_dephasing(make_ghz(3), ProbeLayout::parallel(2), 0.1), std::invalid_argument);
    EXPECT_THROW(apply_dephasing(make_ghz(3), ProbeLayout::parallel(3), -0.1), std::invalid_argument);
}

TEST(Derivative, BellCorners) {
    const ProbeLayout layout = ProbeLayout::make(2, {1});
    const double g = 0.4, dg = 1.7;
    const Matrix d = drho_dT(make_ghz(2), layout, g, dg);
    EXPECT_NEAR(d(0, 3).real(), -dg * std::exp(-g) / 2.0, 1e-15);
    EXPECT_NEAR(d(3, 0).real(), -dg * std::exp(-g) / 2.0, 1e-15);
    EXPECT_EQ(max_abs(drho_dT(make_ghz(2), layout, g, 0.0)), 0.0);
}

TEST(Derivative, TracelessHermitianAndMatchesFiniteDifference) {
    for (int n = 1; n <= 4; ++n) {
        const DensityMatrix rho = random_mixed(n, 21);
        for (const auto& noisy : all_subsets(n)) {
            const ProbeLayout layout = ProbeLayout::make(n, noisy);
            const double g = 0.6, dg = 0.9, eps = 1e-6;
            const Matrix d = drho_dT(rho, layout, g, dg);
            EXPECT_LT(std::abs(d.trace()), 1e-12);
            EXPECT_LT(hermiticity_defect(d), 1e-15);
            for (Eigen::Index i = 0; i < d.rows(); ++i) EXPECT_EQ(d(i, i), cplx(0.0));
            const Matrix fd = (apply_dephasing(rho, layout, g + eps).matrix() -
                               apply_dephasing(rho, layout, g - eps).matrix()) *
                              (dg / (2.0 * eps));
            for (Eigen::Index j = 0; j < d.cols(); ++j) {
                for (Eigen::Index i = 0; i < d.rows(); ++i) {
                    const double scale = std::abs(d(i, j));
                    if (scale < 1e-6) {
                        EXPECT_LT(std::abs(fd(i, j) - d(i, j)), 1e-12);
                    } else {
                        EXPECT_LT(std::abs(fd(i, j) - d(i, j)) / scale, 1e-8);
                    }
                }
            }
        }
    }
}

TEST(Eigen, MaximallyMixed) {
    const DensityMatrix rho = DensityMatrix::from_matrix(1, Matrix::Identity(2, 2) / 2.0);
    const Eigensystem es = eigendecompose(rho);
    EXPECT_NEAR(es.values(0), 0.5, 1e-15);
    EXPECT_NEAR(es.values(1), 0.5, 1e-15);
}

TEST(Eigen, BellOutput) {
    const double g = 0.7;
    const Eigensystem es = eigendecompose(apply_dephasing(make_ghz(2), ProbeLayout::make(2, {1}), g));
    EXPECT_NEAR(es.values(0), (1.0 + std::exp(-g)) / 2.0, 1e-15);
    EXPECT_NEAR(es.values(1), (1.0 - std::exp(-g)) / 2.0, 1e-15);
    EXPECT_EQ(es.values(2), 0.0);
    EXPECT_EQ(es.values(3), 0.0);
}

TEST(Eigen, RandomReconstructionAndOrder) {
    const DensityMatrix rho = random_mixed(4, 31);
    const Eigensystem es = eigendecompose(rho);
    EXPECT_LT(max_abs(reconstruct(es) - rho.matrix()), 1e-10);
    for (Eigen::Index k = 1; k < es.values.size(); ++k) EXPECT_GE(es.values(k - 1), es.values(k));
    const Matrix gram = es.vectors.adjoint() * es.vectors;
    EXPECT_LT(max_abs(gram - Matrix::Identity(16, 16)), 1e-12);
}

TEST(Eigen, RejectsNonHermitian) {
    Matrix m = Matrix::Identity(2, 2) / 2.0;
    m(0, 1) = 0.1;
    EXPECT_THROW(eigendecompose_hermitian(m), std::invalid_argument);
    EXPECT_THROW(DensityMatrix::from_matrix(1, m), std::invalid_argument);
}

TEST(DensityMatrix, Validation) {
    EXPECT_THROW(DensityMatrix::from_matrix(1, Matrix::Identity(2, 2)), std::invalid_argument);
    EXPECT_THROW(DensityMatrix::from_matrix(2, Matrix::Identity(2, 2) / 2.0), std::invalid_argument);
}

}  // namespace

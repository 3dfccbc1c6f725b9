#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qthermo/bath_decay.hpp"

namespace {

using namespace qthermo::bath;

// Values frozen from tests/oracles/bath_oracle.py (50-digit mpmath).
constexpr double kEta10[3] = {4.615120516841259450884198, -1.618139803187974857958859,
                              1.421417417534515325884436};
constexpr double kTermN1[3] = {1.688402769394104761561472, 1.052236729785537045324157,
                               0.8603870209080934706503952};
constexpr double kPointGamma = 36.09208901148935119969569;
constexpr double kPointTermwise = 6.22977825462990538573739;
constexpr double kPointSeries = 12.45955650925981077147478;

BathParams golden_bath() { return {0.4, 0.5, 0.9, 1.0, 10.0}; }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

TEST(EtaCoefficients, ZeroIsExactlyZero) {
    const Coefficients c = eta_coefficients(0.0);
    EXPECT_EQ(c.a, 0.0);
    EXPECT_EQ(c.b, 0.0);
    EXPECT_EQ(c.c, 0.0);
}

TEST(EtaCoefficients, EtaOne) {
    const Coefficients c = eta_coefficients(1.0);
    EXPECT_NEAR(c.a, std::log(2.0), 1e-15);
    EXPECT_NEAR(c.b, std::log(std::sqrt(5.0) / 2.0), 1e-15);
    EXPECT_NEAR(c.c, std::numbers::pi / 2.0 - std::atan(2.0), 1e-15);
}

TEST(EtaCoefficients, EtaTenMatchesOracle) {
    const Coefficients c = eta_coefficients(10.0);
    EXPECT_LT(rel(c.a, kEta10[0]), 1e-14);
    EXPECT_LT(rel(c.b, kEta10[1]), 1e-14);
    EXPECT_LT(rel(c.c, kEta10[2]), 1e-14);
}

TEST(EtaCoefficients, RejectsBadInput) {
    EXPECT_THROW(eta_coefficients(std::nan("")), std::invalid_argument);
    EXPECT_THROW(eta_coefficients(INFINITY), std::invalid_argument);
    EXPECT_THROW(eta_coefficients(-1.0), std::invalid_argument);
}

TEST(Tau, Examples) {
    BathParams p{0.4, 0.5, 0.9, 1.0, 1.0};
    EXPECT_EQ(tau(2, 3.0, p), 1.5);
    for (int n = 1; n < 50; ++n) EXPECT_EQ(tau(n, 0.0, p), 0.0);
    for (int n = 1; n < 50; ++n) EXPECT_GT(tau(n, 1.0, p), tau(n + 1, 1.0, p));
    p.temp = 1e12;
    EXPECT_NEAR(tau(3, 0.7, p), 0.7, 1e-11);
    EXPECT_THROW(tau(0, 1.0, p), std::invalid_argument);
    EXPECT_THROW(tau(1, -1.0, p), std::invalid_argument);
}

TEST(ThermalTerm, TimeZero) {
    const Coefficients c = thermal_term(7, 0.0, golden_bath());
    EXPECT_EQ(c.a, 0.0);
    EXPECT_EQ(c.b, 0.0);
    EXPECT_EQ(c.c, 0.0);
}

TEST(ThermalTerm, FirstTermMatchesOracle) {
    const Coefficients c = thermal_term(1, 1.0, {0.4, 0.5, 0.9, 1.0, 10.0});
    EXPECT_LT(rel(c.a, kTermN1[0]), 1e-14);
    EXPECT_LT(rel(c.b, kTermN1[1]), 1e-14);
    EXPECT_LT(rel(c.c, kTermN1[2]), 1e-14);
}

TEST(ThermalTerm, SmallTauLimit) {
    const BathParams p{0.4, 0.5, 0.9, 1.0, 10.0};
    const double t = 0.5;
    const int n = 100000;
    const double x = tau(n, t, p);
    EXPECT_LT(rel(x, 9.998000399920015611714835e-5), 1e-14);
    const double ratio = thermal_term(n, t, p).a / (2.0 * t * x);
    EXPECT_LT(rel(ratio, 0.9999999983339998067146561), 1e-9);
    // a_t/(2tτ) → 1 within 1% once τ < 0.1
    for (int m : {200, 1000, 5000}) {
        const double y = tau(m, t, p);
        ASSERT_LT(y, 0.1);
        EXPECT_NEAR(thermal_term(m, t, p).a / (2.0 * t * y), 1.0, 0.01);
    }
}

TEST(Gamma, ZeroTimeIsExactlyZero) {
    for (double r : {0.0, 0.5, 2.0}) {
        BathParams p = golden_bath();
        p.r = r;
        const DecayResult d = gamma(p, 0.0);
        EXPECT_EQ(d.gamma, 0.0);
        EXPECT_EQ(d.dgamma_dtemp, 0.0);
        EXPECT_EQ(d.dgamma_series, 0.0);
    }
}

TEST(Gamma, GoldenPointMatchesOracle) {
    const DecayResult d = gamma(golden_bath(), 0.5, {.n_max = 1000});
    EXPECT_LT(rel(d.gamma, kPointGamma), 1e-12);
    EXPECT_LT(rel(d.dgamma_dtemp, kPointTermwise), 1e-12);
    EXPECT_LT(rel(d.dgamma_series, kPointSeries), 1e-12);
    EXPECT_EQ(d.terms_used, 1000);
}

TEST(Gamma, NoSqueezingRemovesPhase) {
    BathParams a = golden_bath();
    a.r = 0.0;
    a.delta_theta = 0.3;
    BathParams b = a;
    b.delta_theta = 2.9;
    const DecayResult da = gamma(a, 0.7);
    const DecayResult db = gamma(b, 0.7);
    EXPECT_TRUE(same_bits(da.gamma, db.gamma));
    EXPECT_TRUE(same_bits(da.dgamma_dtemp, db.dgamma_dtemp));
    EXPECT_TRUE(same_bits(da.dgamma_series, db.dgamma_series));
}

// cos(δθ + 2π) and cos(δθ) differ in the last bits because δθ + 2π is rounded,
// so periodicity is checked to a few ulps of Γ rather than bit-for-bit.
TEST(Gamma, PhasePeriodicity) {
    BathParams a = golden_bath();
    BathParams b = a;
    b.delta_theta += 2.0 * std::numbers::pi;
    for (double t : {0.05, 0.5, 2.0}) {
        const DecayResult da = gamma(a, t);
        const DecayResult db = gamma(b, t);
        EXPECT_LT(rel(db.gamma, da.gamma), 1e-14);
        EXPECT_LT(rel(db.dgamma_dtemp, da.dgamma_dtemp), 1e-14);
    }
}

TEST(Gamma, LinearInCoupling) {
    for (double t : {0.01, 0.3, 1.5}) {
        BathParams a = golden_bath();
        BathParams b = a;
        b.lambda = 2.0 * a.lambda;
        EXPECT_EQ(gamma(b, t).gamma / gamma(a, t).gamma, 2.0);
    }
}

TEST(Gamma, BitReproducible) {
    const SeriesControl ctrl{.n_max = 777, .rel_tol = 0.0};
    const DecayResult a = gamma(golden_bath(), 0.37, ctrl);
    const DecayResult b = gamma(golden_bath(), 0.37, ctrl);
    EXPECT_TRUE(same_bits(a.gamma, b.gamma));
    EXPECT_TRUE(same_bits(a.dgamma_dtemp, b.dgamma_dtemp));
    EXPECT_TRUE(same_bits(a.tail_estimate, b.tail_estimate));
}

TEST(Gamma, EarlyStopAndConvergenceFlag) {
    const DecayResult full = gamma(golden_bath(), 0.5, {.n_max = 1000});
    EXPECT_EQ(full.terms_used, 1000);
    EXPECT_FALSE(full.converged);
    EXPECT_GT(full.tail_estimate, 0.0);

    const DecayResult early = gamma(golden_bath(), 0.5, {.n_max = 1000, .rel_tol = 1e-3});
    EXPECT_LT(early.terms_used, 1000);
    EXPECT_TRUE(early.converged);
    EXPECT_LE(early.tail_estimate, 1e-3 * std::abs(early.gamma));

    const DecayResult capped = gamma(golden_bath(), 0.5, {.n_max = 5, .rel_tol = 1e-12});
    EXPECT_EQ(capped.terms_used, 5);
    EXPECT_FALSE(capped.converged);
}

TEST(Gamma, RejectsInvalidInput) {
    BathParams p = golden_bath();
    EXPECT_THROW(gamma(p, -0.1), std::invalid_argument);
    EXPECT_THROW(gamma(p, std::nan("")), std::invalid_argument);
    EXPECT_THROW(gamma(p, 1.0, {.n_max = 0}), std::invalid_argument);
    EXPECT_THROW(gamma(p, 1.0, {.n_max = 10, .rel_tol = -1.0}), std::invalid_argument);
    p.temp = 0.0;
    EXPECT_THROW(gamma(p, 1.0), std::invalid_argument);
    p = golden_bath();
    p.omega_c = -1.0;
    EXPECT_THROW(gamma(p, 1.0), std::invalid_argument);
    p = golden_bath();
    p.lambda = -0.1;
    EXPECT_THROW(gamma(p, 1.0), std::invalid_argument);
    p = golden_bath();
    p.r = -0.1;
    EXPECT_THROW(gamma(p, 1.0), std::invalid_argument);
}

double central_difference(BathParams p, double t, const SeriesControl& ctrl) {
    const double temp = p.temp;
    const double eps = 1e-5 * temp;
    p.temp = temp + eps;
    const double hi = gamma(p, t, ctrl).gamma;
    p.temp = temp - eps;
    const double lo = gamma(p, t, ctrl).gamma;
    return (hi - lo) / (2.0 * eps);
}

TEST(Derivative, TermwiseMatchesFiniteDifference) {
    const SeriesControl ctrl{.n_max = 1000};
    for (double t : {0.05, 0.1, 0.5, 1.0, 2.0}) {
        for (double temp : {1.0, 10.0, 100.0, 1000.0}) {
            BathParams p = golden_bath();
            p.temp = temp;
            const double fd = central_difference(p, t, ctrl);
            EXPECT_LT(rel(dgamma_dT_termwise(p, t, ctrl), fd), 1e-6) << "t=" << t << " T=" << temp;
        }
    }
}

TEST(Derivative, GoldenPointFiniteDifference) {
    const double fd = central_difference(golden_bath(), 0.5, {.n_max = 1000});
    EXPECT_LT(rel(dgamma_dT_termwise(golden_bath(), 0.5), fd), 1e-6);
}

TEST(Derivative, TrivialZeros) {
    EXPECT_EQ(dgamma_dT_termwise(golden_bath(), 0.0), 0.0);
    EXPECT_EQ(dgamma_dT_series(golden_bath(), 0.0), 0.0);
    BathParams p = golden_bath();
    p.lambda = 0.0;
    EXPECT_EQ(dgamma_dT_termwise(p, 0.8), 0.0);
    EXPECT_EQ(dgamma_dT_series(p, 0.8), 0.0);
}

TEST(Derivative, AbcSeriesIsTwiceTermwise) {
    for (double t : {0.1, 0.5, 1.0}) {
        for (double temp : {1.0, 10.0, 100.0}) {
            BathParams p = golden_bath();
            p.temp = temp;
            const DecayResult d = gamma(p, t);
            EXPECT_NEAR(d.dgamma_series / d.dgamma_dtemp, 2.0, 1e-12);
        }
    }
}

TEST(Tail, PerTermMatchesModel) {
    // τ ≪ 1 and nΩ_c ≫ 2T for n ≥ 1000
    const BathParams p{0.4, 0.5, 0.9, 1.0, 1.0};
    const double t = 0.5;
    for (int n : {1000, 2000, 4000, 8000}) {
        const DecayResult d = gamma(p, t, {.n_max = n});
        EXPECT_LT(rel(d.tail_estimate, tail_model(p, t, n)), 0.05) << "n=" << n;
    }
    double model = 0.0;
    for (int n = 1001; n <= 2000; ++n) model += tail_model(p, t, n);
    EXPECT_LT(rel(truncation_gap(p, t, 1000), model), 0.05);
}

TEST(Tail, LogarithmicGrowth) {
    // Successive doublings add roughly the same amount, c·ln 2.
    const BathParams p{0.4, 0.5, 0.9, 1.0, 1.0};
    const double g1 = truncation_gap(p, 0.5, 1000);
    const double g2 = truncation_gap(p, 0.5, 2000);
    EXPECT_LT(rel(g2, g1), 0.01);
}

TEST(Discrepancy, ZeroTimeRow) {
    const std::vector<double> grid{0.0};
    const auto rows = discrepancy_report(golden_bath(), grid);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].gamma, 0.0);
    EXPECT_EQ(rows[0].dgamma_termwise, 0.0);
    EXPECT_EQ(rows[0].dgamma_series, 0.0);
    EXPECT_EQ(rows[0].rel_diff, 0.0);
}

TEST(Discrepancy, NoCouplingZeroDerivatives) {
    BathParams p = golden_bath();
    p.lambda = 0.0;
    const std::vector<double> grid{0.4};
    const auto rows = discrepancy_report(p, grid);
    EXPECT_EQ(rows[0].dgamma_termwise, 0.0);
    EXPECT_EQ(rows[0].dgamma_series, 0.0);
}

TEST(Discrepancy, EmptyGridRejected) {
    EXPECT_THROW(discrepancy_report(golden_bath(), std::vector<double>{}), std::invalid_argument);
}

TEST(Discrepancy, DemoGridMatchesOracle) {
    std::ifstream in(std::string(QTHERMO_GOLDEN_DIR) + "/bath_oracle.txt");
    ASSERT_TRUE(in) << "missing golden file";
    std::vector<double> grid;
    std::vector<std::vector<double>> expect;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream is(line);
        std::string tag;
        is >> tag;
        if (tag != "demo") continue;
        std::vector<double> v(4);
        is >> v[0] >> v[1] >> v[2] >> v[3];
        grid.push_back(v[0]);
        expect.push_back(v);
    }
    ASSERT_EQ(grid.size(), 10u);
    const auto rows = discrepancy_report(golden_bath(), grid);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_LT(rel(rows[i].gamma, expect[i][1]), 1e-12);
        EXPECT_LT(rel(rows[i].dgamma_termwise, expect[i][2]), 1e-12);
        EXPECT_LT(rel(rows[i].dgamma_series, expect[i][3]), 1e-12);
        EXPECT_NEAR(rows[i].rel_diff, 1.0, 1e-12);
        EXPECT_EQ(rows[i].terms_used, 1000);
    }
}

}  // namespace

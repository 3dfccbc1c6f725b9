// lambert_w.hpp - principal branch of the Lambert W function

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qthermo {

namespace detail {

inline double lambert_residual(double w, double z) { return w * std::exp(w) - z; }

// w e^w is increasing on [-1, inf), so plain bisection always works there.
inline double lambert_w0_bisect(double z) {
    double lo = -1.0;
    double hi = z <= std::numbers::e ? 1.0 : std::log(z);
    for (int i = 0; i < 2000 && lo < hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (lambert_residual(mid, z) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::abs(lambert_residual(lo, z)) <= std::abs(lambert_residual(hi, z)) ? lo : hi;
}

}  // namespace detail

/// W₀(z) for z ≥ −1/e, i.e. the solution w ≥ −1 of w e^w = z.
///
/// Halley iteration; if it stalls or leaves the branch (possible right next
/// to z = −1/e, where W has a square-root singularity) the answer comes from
/// bisection instead.
inline double lambert_w0(double z) {
    constexpr double branch = -1.0 / std::numbers::e;
    if (std::isnan(z) || z < branch) {
        throw std::invalid_argument("lambert_w0: argument must be >= -1/e");
    }
    if (z == 0.0) return 0.0;
    if (z == branch) return -1.0;
    if (std::isinf(z)) return z;

    double w;
    if (z < -0.25) {
        const double p = std::sqrt(2.0 * (std::numbers::e * z + 1.0));
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    } else if (z < 3.0) {
        w = 0.6 * std::log1p(z);
    } else {
        const double l1 = std::log(z);
        const double l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }

    for (int i = 0; i < 64; ++i) {
        const double ew = std::exp(w);
        const double f = w * ew - z;
        const double wp1 = w + 1.0;
        if (wp1 == 0.0) break;
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        if (!std::isfinite(step)) break;
        w -= step;
        if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) {
            break;
        }
    }

    const double tol = 1e-12 * std::max(1.0, std::abs(z));
    if (!(w >= -1.0) || !(std::abs(detail::lambert_residual(w, z)) <= tol)) {
        return detail::lambert_w0_bisect(z);
    }
    return w;
}

/// (W₀(−2e⁻²) + 2)/2 ≈ 0.7968: the positive root of x = 1 − e^{−2x}, which
/// is where x²/(e^{2x} − 1) peaks.
inline double ghz_optimum_constant() {
    return (lambert_w0(-2.0 * std::exp(-2.0)) + 2.0) / 2.0;
}

}  // namespace qthermo

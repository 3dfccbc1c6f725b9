// summation.hpp - compensated accumulation for long, slowly converging series

#pragma once

#include <cmath>

namespace qthermo {

/// Kahan–Babuška (Neumaier) accumulator.
///
/// Unlike plain Kahan summation the compensation stays correct when an
/// incoming term is larger in magnitude than the running sum, which happens
/// for the first few terms of the thermal series where the vacuum part is
/// small.
template <typename Value = double>
class NeumaierSum {
public:
    constexpr NeumaierSum() = default;
    constexpr explicit NeumaierSum(Value init) : sum_(init) {}

    constexpr NeumaierSum& operator+=(Value x) {
        const Value t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
        return *this;
    }

    [[nodiscard]] constexpr Value value() const { return sum_ + comp_; }

private:
    Value sum_{0};
    Value comp_{0};
};

}  // namespace qthermo

#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace flexstor {

/// Neumaier-compensated accumulator. Yearly 15-min series have ~35k samples;
/// plain summation drifts enough to fail the 1e-9 zero-mean checks, so all
/// means and signed cumulative sums go through this.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
    CompensatedSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

inline double compensated_mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return compensated_sum(xs) / static_cast<double>(xs.size());
}

} // namespace flexstor

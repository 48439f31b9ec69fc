#pragma once

#include <cmath>

namespace plk {

/// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double value) {
        const double t = sum_ + value;
        if (std::fabs(sum_) >= std::fabs(value)) {
            comp_ += (sum_ - t) + value;
        } else {
            comp_ += (value - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_{0.0};
    double comp_{0.0};
};

}  // namespace plk

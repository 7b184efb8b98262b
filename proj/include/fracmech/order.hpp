#pragma once

#include <cmath>
#include <stdexcept>

namespace fracmech {

/// Fractional differentiation order.
///
/// Carries the positive real order together with the whole-number count n
/// satisfying n - 1 <= order <= n: the number of classical differentiations
/// a direct evaluation of the operator needs on top of a fractional
/// integral. For integer orders n equals the order itself.
class Order {
public:
    explicit Order(double alpha) : alpha_(alpha) {
        if (!std::isfinite(alpha) || alpha <= 0.0) {
            throw std::invalid_argument("Order: order must be a finite positive real");
        }
    }

    double alpha() const noexcept { return alpha_; }

    bool is_integer() const noexcept { return std::floor(alpha_) == alpha_; }

    /// Smallest integer n with n - 1 <= alpha <= n.
    int whole_count() const noexcept {
        const double fl = std::floor(alpha_);
        return is_integer() ? static_cast<int>(fl) : static_cast<int>(fl) + 1;
    }

private:
    double alpha_;
};

}  // namespace fracmech

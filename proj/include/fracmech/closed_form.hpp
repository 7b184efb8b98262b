#pragma once

#include "fracmech/gamma.hpp"
#include "fracmech/grid.hpp"
#include "fracmech/order.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fracmech {

/// Which end of the interval an operator or power term is attached to.
enum class Side { Left, Right };

/// One anchored power-law term on [a, b]:
///   Left  anchor: coef * (t - a)^exponent
///   Right anchor: coef * (b - t)^exponent
/// Exponents must exceed -1 so the Riemann-Liouville kernel stays integrable.
struct PowerTerm {
    double coef = 0.0;
    double exponent = 0.0;
    Side anchor = Side::Left;
};

/// Finite sum of anchored power-law terms.
///
/// The family is closed under fractional differentiation and integration of
/// matching side (see power_rule below), which makes it both the analytic
/// oracle for the grid schemes and the carrier for reconstructed
/// trajectories. Evaluation is defined on [a, b]; terms with a negative
/// exponent are infinite at their anchor endpoint.
class ClosedFormFn {
public:
    ClosedFormFn() = default;  // the zero function

    explicit ClosedFormFn(std::vector<PowerTerm> terms) : terms_(std::move(terms)) {
        for (const auto& t : terms_) {
            if (!std::isfinite(t.coef) || !std::isfinite(t.exponent)) {
                throw std::invalid_argument("ClosedFormFn: non-finite term");
            }
            if (t.exponent <= -1.0) {
                throw std::invalid_argument("ClosedFormFn: exponent must exceed -1");
            }
        }
    }

    static ClosedFormFn constant(double c) {
        return ClosedFormFn({PowerTerm{c, 0.0, Side::Left}});
    }

    static ClosedFormFn power(double coef, double exponent, Side anchor = Side::Left) {
        return ClosedFormFn({PowerTerm{coef, exponent, anchor}});
    }

    const std::vector<PowerTerm>& terms() const noexcept { return terms_; }

    bool is_constant() const noexcept {
        for (const auto& t : terms_) {
            if (t.exponent != 0.0 && t.coef != 0.0) return false;
        }
        return true;
    }

    /// Sum of the constant terms; meaningful when is_constant().
    double constant_value() const noexcept {
        double c = 0.0;
        for (const auto& t : terms_) {
            if (t.exponent == 0.0) c += t.coef;
        }
        return c;
    }

    double value(double t, double a, double b) const {
        double acc = 0.0;
        for (const auto& term : terms_) {
            const double u = term.anchor == Side::Left ? t - a : b - t;
            acc += term.coef * std::pow(std::max(u, 0.0), term.exponent);
        }
        return acc;
    }

    /// Classical d/dt; infinite at an anchor endpoint when 0 < exponent < 1.
    double derivative(double t, double a, double b) const {
        double acc = 0.0;
        for (const auto& term : terms_) {
            if (term.exponent == 0.0 || term.coef == 0.0) continue;
            const double sign = term.anchor == Side::Left ? 1.0 : -1.0;
            const double u = term.anchor == Side::Left ? t - a : b - t;
            acc += sign * term.coef * term.exponent * std::pow(std::max(u, 0.0), term.exponent - 1.0);
        }
        return acc;
    }

    GridFn sample(const Grid& grid) const {
        return GridFn::sample(grid, [&](double t) { return value(t, grid.a(), grid.b()); });
    }

    ClosedFormFn& operator+=(const ClosedFormFn& other) {
        terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
        return *this;
    }

    friend ClosedFormFn operator+(ClosedFormFn lhs, const ClosedFormFn& rhs) {
        lhs += rhs;
        return lhs;
    }

    friend ClosedFormFn scaled(ClosedFormFn f, double c) {
        for (auto& t : f.terms_) t.coef *= c;
        return f;
    }

private:
    std::vector<PowerTerm> terms_;
};

namespace detail {

// Power rule for a single anchored term under the order-(signed_order)
// operator of the given side (positive = derivative, negative = integral,
// zero = identity):
//   D^s (t-a)^mu = Gamma(mu+1) / Gamma(mu-s+1) * (t-a)^(mu-s)
// When Gamma(mu-s+1) sits on a pole the term is annihilated (coefficient 0,
// e.g. D^alpha (t-a)^(alpha-1) = 0). A surviving result with exponent <= -1
// is not representable and raises a domain error.
inline void append_power_rule_term(std::vector<PowerTerm>& out, const PowerTerm& term,
                                   double signed_order, Side side) {
    if (term.coef == 0.0) return;
    if (term.anchor != side && term.exponent != 0.0) {
        throw std::domain_error(
            "power_rule: term anchored at the opposite endpoint has no closed power form");
    }
    if (signed_order == 0.0) {
        out.push_back(PowerTerm{term.coef, term.exponent, side});
        return;
    }
    const double e = term.exponent - signed_order;
    const double recip = reciprocal_gamma(e + 1.0);
    if (recip == 0.0) return;  // annihilated by the Gamma pole
    if (e <= -1.0) {
        throw std::domain_error("power_rule: result exponent <= -1 is not integrable");
    }
    out.push_back(PowerTerm{term.coef * gamma(term.exponent + 1.0) * recip, e, side});
}

inline ClosedFormFn power_rule_signed(const ClosedFormFn& f, double signed_order, Side side) {
    std::vector<PowerTerm> out;
    out.reserve(f.terms().size());
    for (const auto& term : f.terms()) {
        append_power_rule_term(out, term, signed_order, side);
    }
    return ClosedFormFn(std::move(out));
}

}  // namespace detail

/// Exact Riemann-Liouville fractional derivative of a single power term.
inline ClosedFormFn power_rule(double coef, double mu, const Order& order, Side side) {
    if (!(mu > -1.0)) throw std::invalid_argument("power_rule: exponent must exceed -1");
    return detail::power_rule_signed(ClosedFormFn::power(coef, mu, side), order.alpha(), side);
}

/// Linear extension over all terms of f.
inline ClosedFormFn power_rule(const ClosedFormFn& f, const Order& order, Side side) {
    return detail::power_rule_signed(f, order.alpha(), side);
}

/// Exact fractional integral (the negative-order branch of the same rule).
inline ClosedFormFn power_rule_integral(double coef, double mu, const Order& order, Side side) {
    if (!(mu > -1.0)) throw std::invalid_argument("power_rule_integral: exponent must exceed -1");
    return detail::power_rule_signed(ClosedFormFn::power(coef, mu, side), -order.alpha(), side);
}

inline ClosedFormFn power_rule_integral(const ClosedFormFn& f, const Order& order, Side side) {
    return detail::power_rule_signed(f, -order.alpha(), side);
}

}  // namespace fracmech

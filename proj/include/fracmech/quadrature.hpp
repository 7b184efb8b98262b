#pragma once

#include "fracmech/closed_form.hpp"
#include "fracmech/gamma.hpp"
#include "fracmech/grid.hpp"
#include "fracmech/grunwald.hpp"
#include "fracmech/order.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fracmech {

// Independent quadrature evaluation of the Riemann-Liouville derivative for
// 0 < alpha < 1, structurally unrelated to the GL convolution so the two
// schemes can cross-check each other.
//
// The operator is evaluated in Caputo form plus boundary correction:
//
//   left:  D^a f(t) = [ int_a^t (t-s)^(-a) f'(s) ds + f(a) (t-a)^(-a) ] / Gamma(1-a)
//   right: D^a f(t) = [ f(b) (b-t)^(-a) - int_t^b (s-t)^(-a) f'(s) ds ] / Gamma(1-a)
//
// Each grid cell contributes the kernel integrated exactly (product
// integration) against a linear model of f':
//   - cells nearer the evaluation point than the anchor use the linear
//     interpolant of f' through the cell endpoints (product-trapezoid);
//   - cells nearer the anchor use the cell-averaged slope
//     (f(v)-f(u))/h instead, which integrates the increment of f exactly
//     and stays accurate when f' is steep or singular toward the anchor.
//     Cells with a non-finite endpoint slope always take this path.
//
// Second order on smooth inputs; relative error stays below 1e-3 against
// the analytic power rule for t^mu inputs (mu >= 1/2) at N = 1024 away
// from the singular endpoint.

namespace detail {

inline GridFn quad_rl_core(const Grid& grid, const std::vector<double>& f,
                           const std::vector<double>& fp, double alpha, Side side) {
    const int n = grid.num_intervals();
    const double h = grid.step();
    const double om = 1.0 - alpha;
    const double inv_g = 1.0 / gamma(om);
    std::vector<double> out(grid.num_nodes());

    if (side == Side::Left) {
        out[0] = f[0] == 0.0 ? 0.0 : std::copysign(INFINITY, f[0]);
        for (int k = 1; k <= n; ++k) {
            double acc = 0.0;
            for (int j = 0; j < k; ++j) {
                const double d0 = (k - j) * h;      // t_k - t_j
                const double d1 = (k - j - 1) * h;  // t_k - t_{j+1}
                const double m0 = (std::pow(d0, om) - std::pow(d1, om)) / om;
                const bool near_anchor = j < k - 1 - j;
                if (near_anchor || !std::isfinite(fp[j]) || !std::isfinite(fp[j + 1])) {
                    acc += ((f[j + 1] - f[j]) / h) * m0;
                } else {
                    const double m1 =
                        d0 * m0 - (std::pow(d0, 2.0 - alpha) - std::pow(d1, 2.0 - alpha)) / (2.0 - alpha);
                    acc += fp[j] * m0 + ((fp[j + 1] - fp[j]) / h) * m1;
                }
            }
            out[k] = inv_g * (acc + f[0] * std::pow(k * h, -alpha));
        }
    } else {
        out[n] = f[n] == 0.0 ? 0.0 : std::copysign(INFINITY, f[n]);
        for (int k = n - 1; k >= 0; --k) {
            double acc = 0.0;
            for (int j = k; j < n; ++j) {
                const double d_lo = (j - k) * h;      // t_j - t_k
                const double d_hi = (j + 1 - k) * h;  // t_{j+1} - t_k
                const double m0 = (std::pow(d_hi, om) - std::pow(d_lo, om)) / om;
                const bool near_anchor = n - 1 - j < j - k;
                if (near_anchor || !std::isfinite(fp[j]) || !std::isfinite(fp[j + 1])) {
                    acc += ((f[j + 1] - f[j]) / h) * m0;
                } else {
                    const double m1 =
                        (std::pow(d_hi, 2.0 - alpha) - std::pow(d_lo, 2.0 - alpha)) / (2.0 - alpha) -
                        d_lo * m0;
                    acc += fp[j] * m0 + ((fp[j + 1] - fp[j]) / h) * m1;
                }
            }
            out[k] = inv_g * (f[n] * std::pow((n - k) * h, -alpha) - acc);
        }
    }

    GridFn g(grid, std::move(out));
    if (side == Side::Left) g.mark_left_end_unreliable();
    else g.mark_right_end_unreliable();
    return g;
}

inline void check_quad_order(const Order& order) {
    if (!(order.alpha() < 1.0)) {
        throw std::domain_error("quadrature_rl_deriv: oracle requires 0 < alpha < 1");
    }
}

}  // namespace detail

/// Oracle on an exact closed-form input: f and f' are evaluated
/// analytically at the nodes (f' may be infinite at an anchor endpoint;
/// those cells take the averaged-slope path).
inline GridFn quadrature_rl_deriv(const ClosedFormFn& f, const Grid& grid, const Order& order,
                                  Side side) {
    detail::check_quad_order(order);
    const double a = grid.a(), b = grid.b();
    std::vector<double> fv(grid.num_nodes()), fpv(grid.num_nodes());
    for (std::size_t k = 0; k < fv.size(); ++k) {
        const double t = grid.node(static_cast<int>(k));
        fv[k] = f.value(t, a, b);
        fpv[k] = f.derivative(t, a, b);
        if (!std::isfinite(fv[k])) {
            throw std::invalid_argument("quadrature_rl_deriv: f must be finite at all nodes");
        }
    }
    return detail::quad_rl_core(grid, fv, fpv, order.alpha(), side);
}

/// Oracle on sampled data: f' comes from second-order finite differences.
inline GridFn quadrature_rl_deriv(const GridFn& f, const Order& order, Side side) {
    detail::check_quad_order(order);
    detail::require_all_finite(f, "quadrature_rl_deriv");
    const auto& v = f.values();
    const std::size_t n = v.size();
    const double h = f.grid().step();
    std::vector<double> fp(n);
    fp[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for (std::size_t k = 1; k + 1 < n; ++k) fp[k] = (v[k + 1] - v[k - 1]) / (2.0 * h);
    fp[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    return detail::quad_rl_core(f.grid(), v, fp, order.alpha(), side);
}

}  // namespace fracmech

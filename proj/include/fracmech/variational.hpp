#pragma once

#include "fracmech/closed_form.hpp"
#include "fracmech/grid.hpp"
#include "fracmech/grunwald.hpp"
#include "fracmech/order.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace fracmech {

/// Symmetric 2x2 matrix over the fractional velocity pair.
struct Sym2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    double trace() const noexcept { return xx + yy; }
    double det() const noexcept { return xx * yy - xy * xy; }

    std::array<double, 2> apply(double vx, double vy) const noexcept {
        return {xx * vx + xy * vy, xy * vx + yy * vy};
    }
};

struct EigenSym2 {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    std::array<double, 2> v_min{};
    std::array<double, 2> v_max{};
};

namespace detail {

inline std::array<double, 2> normalize_oriented(std::array<double, 2> v) {
    const double norm = std::hypot(v[0], v[1]);
    v = {v[0] / norm, v[1] / norm};
    if (v[0] < 0.0 || (v[0] == 0.0 && v[1] < 0.0)) v = {-v[0], -v[1]};
    return v;
}

}  // namespace detail

/// Closed-form eigendecomposition; diagonal matrices come out exact.
inline EigenSym2 eigen_sym2(const Sym2& m) {
    EigenSym2 e;
    if (m.xy == 0.0) {
        if (m.xx <= m.yy) {
            e = {m.xx, m.yy, {1.0, 0.0}, {0.0, 1.0}};
        } else {
            e = {m.yy, m.xx, {0.0, 1.0}, {1.0, 0.0}};
        }
        return e;
    }
    const double half_tr = 0.5 * m.trace();
    const double disc = 0.5 * std::hypot(m.xx - m.yy, 2.0 * m.xy);
    e.lambda_max = half_tr + disc;
    e.lambda_min = half_tr - disc;
    // pick the better-conditioned eigenvector formula
    const std::array<double, 2> cand1{m.xy, e.lambda_max - m.xx};
    const std::array<double, 2> cand2{e.lambda_max - m.yy, m.xy};
    const auto& v = std::hypot(cand1[0], cand1[1]) >= std::hypot(cand2[0], cand2[1]) ? cand1 : cand2;
    e.v_max = detail::normalize_oriented(v);
    e.v_min = detail::normalize_oriented({-e.v_max[1], e.v_max[0]});
    return e;
}

/// Quadratic potential-like term of the Lagrangian: c0 + c1 q + c2 q^2 / 2.
struct Potential {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;

    double value(double q) const noexcept { return c0 + c1 * q + 0.5 * c2 * q * q; }
    double derivative(double q) const noexcept { return c1 + c2 * q; }
    bool is_zero() const noexcept { return c0 == 0.0 && c1 == 0.0 && c2 == 0.0; }
};

/// Lagrangian quadratic in the fractional velocity pair
/// v = (left derivative of order alpha of q, right derivative of order beta of q):
///
///   L(q, v) = v' M v / 2 + l . v + c0 + c1 q + c2 q^2 / 2
///
/// with M symmetric and 0 < alpha, beta <= 1. Covers the free left-kinetic
/// model (M = diag(1, 0)), the symmetric coupled model (M all ones, which
/// has a rank-one velocity Hessian), and classical integer-order systems at
/// alpha = beta = 1.
class QuadraticLagrangian {
public:
    QuadraticLagrangian(Order alpha, Order beta, double a, double b, Sym2 mass,
                        std::array<double, 2> linear = {0.0, 0.0}, Potential potential = {})
        : alpha_(alpha), beta_(beta), a_(a), b_(b), mass_(mass), linear_(linear), pot_(potential) {
        if (alpha_.alpha() > 1.0 || beta_.alpha() > 1.0) {
            throw std::invalid_argument("QuadraticLagrangian: orders must lie in (0, 1]");
        }
        if (!(b > a)) throw std::invalid_argument("QuadraticLagrangian: need b > a");
    }

    /// L = (left-derivative of q)^2 / 2.
    static QuadraticLagrangian left_kinetic(Order alpha, Order beta, double a, double b) {
        return QuadraticLagrangian(alpha, beta, a, b, Sym2{1.0, 0.0, 0.0});
    }

    /// L = (v_alpha + v_beta)^2 / 2, i.e. M with all entries 1 (rank one).
    static QuadraticLagrangian symmetric_coupled(Order alpha, Order beta, double a, double b) {
        return QuadraticLagrangian(alpha, beta, a, b, Sym2{1.0, 1.0, 1.0});
    }

    const Order& alpha() const noexcept { return alpha_; }
    const Order& beta() const noexcept { return beta_; }
    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    const Sym2& mass() const noexcept { return mass_; }
    const std::array<double, 2>& linear() const noexcept { return linear_; }
    const Potential& potential() const noexcept { return pot_; }

    double value(double q, double v_alpha, double v_beta) const noexcept {
        const auto mv = mass_.apply(v_alpha, v_beta);
        return 0.5 * (mv[0] * v_alpha + mv[1] * v_beta) + linear_[0] * v_alpha +
               linear_[1] * v_beta + pot_.value(q);
    }

    /// dL/dv, i.e. the momentum pair at given velocities.
    std::array<double, 2> momenta_at(double v_alpha, double v_beta) const noexcept {
        const auto mv = mass_.apply(v_alpha, v_beta);
        return {mv[0] + linear_[0], mv[1] + linear_[1]};
    }

    double d_q(double q) const noexcept { return pot_.derivative(q); }

private:
    Order alpha_;
    Order beta_;
    double a_;
    double b_;
    Sym2 mass_;
    std::array<double, 2> linear_;
    Potential pot_;
};

/// Momentum pair carrier: either sampled on a grid or in closed form
/// (constant momenta from a Hamilton-Jacobi solution are exact).
class MomentaPair {
public:
    using Carrier = std::variant<GridFn, ClosedFormFn>;

    MomentaPair(Carrier p_alpha, Carrier p_beta)
        : p_alpha_(std::move(p_alpha)), p_beta_(std::move(p_beta)) {}

    const Carrier& p_alpha() const noexcept { return p_alpha_; }
    const Carrier& p_beta() const noexcept { return p_beta_; }

    GridFn alpha_on(const Grid& grid) const { return on_grid(p_alpha_, grid); }
    GridFn beta_on(const Grid& grid) const { return on_grid(p_beta_, grid); }

    /// Exact constant value when the component is a closed-form constant.
    static double constant_value(const Carrier& c) {
        const auto* fn = std::get_if<ClosedFormFn>(&c);
        if (fn == nullptr || !fn->is_constant()) {
            throw std::invalid_argument("MomentaPair: component is not a closed-form constant");
        }
        return fn->constant_value();
    }

private:
    static GridFn on_grid(const Carrier& c, const Grid& grid) {
        if (const auto* g = std::get_if<GridFn>(&c)) {
            if (!(g->grid() == grid)) {
                throw std::invalid_argument("MomentaPair: grid mismatch");
            }
            return *g;
        }
        return std::get<ClosedFormFn>(c).sample(grid);
    }

    Carrier p_alpha_;
    Carrier p_beta_;
};

/// p = M v + l, node-wise over the sampled velocity pair.
inline MomentaPair momenta(const QuadraticLagrangian& lag, const GridFn& v_alpha,
                           const GridFn& v_beta) {
    detail::require_same_grid(v_alpha, v_beta, "momenta");
    std::vector<double> pa(v_alpha.size()), pb(v_alpha.size());
    for (std::size_t k = 0; k < pa.size(); ++k) {
        const auto p = lag.momenta_at(v_alpha[k], v_beta[k]);
        pa[k] = p[0];
        pb[k] = p[1];
    }
    GridFn ga(v_alpha.grid(), std::move(pa));
    GridFn gb(v_alpha.grid(), std::move(pb));
    ga.copy_flags(v_alpha);
    ga.copy_flags(v_beta);
    gb.copy_flags(v_alpha);
    gb.copy_flags(v_beta);
    return MomentaPair(std::move(ga), std::move(gb));
}

/// Residual of the fractional Euler-Lagrange equation
///
///   dL/dq + D_right^alpha [dL/d(v_alpha)] + D_left^beta [dL/d(v_beta)]
///
/// evaluated node-wise with the GL operators. Zero (to scheme accuracy) iff
/// q is stationary. Returned rather than asserted: for some closed-form
/// solutions the strict Riemann-Liouville reading leaves a provably nonzero
/// term (the right derivative of a constant momentum), and the caller is
/// expected to inspect the magnitude. Both end nodes are unreliable.
inline GridFn el_residual(const QuadraticLagrangian& lag, const GridFn& q) {
    const GridFn v_alpha = gl_left_deriv(q, lag.alpha());
    const GridFn v_beta = gl_right_deriv(q, lag.beta());
    const MomentaPair p = momenta(lag, v_alpha, v_beta);
    const GridFn outer_alpha = gl_right_deriv(p.alpha_on(q.grid()), lag.alpha());
    const GridFn outer_beta = gl_left_deriv(p.beta_on(q.grid()), lag.beta());
    std::vector<double> r(q.size());
    for (std::size_t k = 0; k < r.size(); ++k) {
        r[k] = lag.d_q(q[k]) + outer_alpha[k] + outer_beta[k];
    }
    GridFn out(q.grid(), std::move(r));
    out.mark_left_end_unreliable();
    out.mark_right_end_unreliable();
    return out;
}

/// Legendre image of a QuadraticLagrangian. The velocity Hessian M may be
/// rank-deficient, so the Hamiltonian comes in three kinds:
///
///   FullRank:  H = (p - l)' Minv (p - l) / 2 - V(q)
///   RankOne:   H = ((p - l) . w)^2 / (2 sigma) - V(q), defined on the
///              constraint surface (p - l) parallel to w
///   RankZero:  H = -V(q)                (momenta frozen at l)
class QuadraticHamiltonian {
public:
    enum class Kind { FullRank, RankOne, RankZero };

    static QuadraticHamiltonian full_rank(Sym2 inverse_mass, std::array<double, 2> shift,
                                          Potential pot, Order alpha, Order beta, double a,
                                          double b) {
        QuadraticHamiltonian h(Kind::FullRank, alpha, beta, a, b);
        h.minv_ = inverse_mass;
        h.shift_ = shift;
        h.pot_ = pot;
        return h;
    }

    static QuadraticHamiltonian rank_one(double sigma, std::array<double, 2> direction,
                                         std::array<double, 2> shift, Potential pot, Order alpha,
                                         Order beta, double a, double b) {
        if (!(sigma > 0.0)) throw std::invalid_argument("QuadraticHamiltonian: sigma must be positive");
        QuadraticHamiltonian h(Kind::RankOne, alpha, beta, a, b);
        h.sigma_ = sigma;
        h.dir_ = detail::normalize_oriented(direction);
        h.shift_ = shift;
        h.pot_ = pot;
        return h;
    }

    static QuadraticHamiltonian rank_zero(Potential pot, Order alpha, Order beta, double a,
                                          double b) {
        QuadraticHamiltonian h(Kind::RankZero, alpha, beta, a, b);
        h.pot_ = pot;
        return h;
    }

    Kind kind() const noexcept { return kind_; }
    double sigma() const noexcept { return sigma_; }
    const std::array<double, 2>& direction() const noexcept { return dir_; }
    const Sym2& inverse_mass() const noexcept { return minv_; }
    const std::array<double, 2>& shift() const noexcept { return shift_; }
    const Potential& potential() const noexcept { return pot_; }
    const Order& alpha() const noexcept { return alpha_; }
    const Order& beta() const noexcept { return beta_; }
    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }

    double value(double q, double p_alpha, double p_beta) const noexcept {
        const double da = p_alpha - shift_[0];
        const double db = p_beta - shift_[1];
        switch (kind_) {
            case Kind::FullRank: {
                const auto mv = minv_.apply(da, db);
                return 0.5 * (mv[0] * da + mv[1] * db) - pot_.value(q);
            }
            case Kind::RankOne: {
                const double proj = da * dir_[0] + db * dir_[1];
                return proj * proj / (2.0 * sigma_) - pot_.value(q);
            }
            case Kind::RankZero:
                return -pot_.value(q);
        }
        return 0.0;
    }

    double d_p_alpha(double p_alpha, double p_beta) const noexcept {
        return d_p(p_alpha, p_beta)[0];
    }
    double d_p_beta(double p_alpha, double p_beta) const noexcept {
        return d_p(p_alpha, p_beta)[1];
    }
    double d_q(double q) const noexcept { return -pot_.derivative(q); }

private:
    QuadraticHamiltonian(Kind kind, Order alpha, Order beta, double a, double b)
        : kind_(kind), alpha_(alpha), beta_(beta), a_(a), b_(b) {}

    std::array<double, 2> d_p(double p_alpha, double p_beta) const noexcept {
        const double da = p_alpha - shift_[0];
        const double db = p_beta - shift_[1];
        switch (kind_) {
            case Kind::FullRank:
                return minv_.apply(da, db);
            case Kind::RankOne: {
                const double proj = (da * dir_[0] + db * dir_[1]) / sigma_;
                return {proj * dir_[0], proj * dir_[1]};
            }
            case Kind::RankZero:
                return {0.0, 0.0};
        }
        return {0.0, 0.0};
    }

    Kind kind_;
    Sym2 minv_{};
    double sigma_ = 0.0;
    std::array<double, 2> dir_{};
    std::array<double, 2> shift_{};
    Potential pot_{};
    Order alpha_;
    Order beta_;
    double a_;
    double b_;
};

/// Legendre transform over both fractional velocities. An eigenvalue below
/// 1e-10 * max(1, tr M) counts as zero, which classifies the image as
/// FullRank, RankOne (explicit constraint direction) or RankZero. A
/// negative eigenvalue beyond the tolerance is rejected.
inline QuadraticHamiltonian legendre_transform(const QuadraticLagrangian& lag) {
    const Sym2& m = lag.mass();
    const double tol = 1e-10 * std::max(1.0, std::abs(m.trace()));
    const EigenSym2 e = eigen_sym2(m);
    if (e.lambda_min < -tol) {
        throw std::domain_error("legendre_transform: mass matrix is indefinite");
    }
    const bool max_zero = e.lambda_max <= tol;
    const bool min_zero = e.lambda_min <= tol;
    if (max_zero) {
        return QuadraticHamiltonian::rank_zero(lag.potential(), lag.alpha(), lag.beta(), lag.a(),
                                               lag.b());
    }
    if (min_zero) {
        return QuadraticHamiltonian::rank_one(e.lambda_max, e.v_max, lag.linear(), lag.potential(),
                                              lag.alpha(), lag.beta(), lag.a(), lag.b());
    }
    const double det = m.det();
    const Sym2 minv{m.yy / det, -m.xy / det, m.xx / det};
    return QuadraticHamiltonian::full_rank(minv, lag.linear(), lag.potential(), lag.alpha(),
                                           lag.beta(), lag.a(), lag.b());
}

/// The three Hamilton-equation residuals, for diagnostic reporting:
///   dH/dp_alpha - D_left^alpha q
///   dH/dp_beta  - D_right^beta q
///   dH/dq - D_right^alpha p_alpha - D_left^beta p_beta
inline std::array<GridFn, 3> hamilton_equations_residual(const QuadraticHamiltonian& ham,
                                                         const GridFn& q, const MomentaPair& p) {
    const Grid& grid = q.grid();
    const GridFn pa = p.alpha_on(grid);
    const GridFn pb = p.beta_on(grid);
    const GridFn va = gl_left_deriv(q, ham.alpha());
    const GridFn vb = gl_right_deriv(q, ham.beta());
    const GridFn outer_a = gl_right_deriv(pa, ham.alpha());
    const GridFn outer_b = gl_left_deriv(pb, ham.beta());

    std::vector<double> r1(q.size()), r2(q.size()), r3(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) {
        r1[k] = ham.d_p_alpha(pa[k], pb[k]) - va[k];
        r2[k] = ham.d_p_beta(pa[k], pb[k]) - vb[k];
        r3[k] = ham.d_q(q[k]) - outer_a[k] - outer_b[k];
    }
    GridFn g1(grid, std::move(r1));
    GridFn g2(grid, std::move(r2));
    GridFn g3(grid, std::move(r3));
    g1.mark_left_end_unreliable();
    g2.mark_right_end_unreliable();
    g3.mark_left_end_unreliable();
    g3.mark_right_end_unreliable();
    return {std::move(g1), std::move(g2), std::move(g3)};
}

/// Trapezoid integral of the node-wise Lagrangian over [t1, t2], which must
/// be node-aligned inside the grid.
inline double action(const QuadraticLagrangian& lag, const GridFn& q, double t1, double t2) {
    const Grid& grid = q.grid();
    const int k1 = grid.index_of(t1);
    const int k2 = grid.index_of(t2);
    if (k1 < 0 || k2 < 0 || k2 < k1) {
        throw std::invalid_argument("action: [t1, t2] must be node-aligned inside the grid");
    }
    const GridFn va = gl_left_deriv(q, lag.alpha());
    const GridFn vb = gl_right_deriv(q, lag.beta());
    const double h = grid.step();
    double acc = 0.0;
    for (int k = k1; k < k2; ++k) {
        const double l0 = lag.value(q[k], va[k], vb[k]);
        const double l1 = lag.value(q[k + 1], va[k + 1], vb[k + 1]);
        acc += 0.5 * h * (l0 + l1);
    }
    return acc;
}

}  // namespace fracmech

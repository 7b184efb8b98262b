#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fracmech {

/// Uniform time grid on [a, b] with N intervals, node k at a + k*h.
class Grid {
public:
    Grid(double a, double b, int num_intervals)
        : a_(a), b_(b), n_(num_intervals) {
        if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
            throw std::invalid_argument("Grid: need finite endpoints with b > a");
        }
        if (num_intervals < 2) {
            throw std::invalid_argument("Grid: need at least 2 intervals");
        }
    }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    int num_intervals() const noexcept { return n_; }
    std::size_t num_nodes() const noexcept { return static_cast<std::size_t>(n_) + 1; }
    double step() const noexcept { return (b_ - a_) / n_; }

    double node(int k) const noexcept {
        return k == n_ ? b_ : a_ + k * step();
    }

    /// Index of the node nearest t, or -1 if t is not on the grid
    /// (relative tolerance on the node spacing).
    int index_of(double t, double rel_tol = 1e-9) const noexcept {
        const double x = (t - a_) / step();
        const int k = static_cast<int>(std::lround(x));
        if (k < 0 || k > n_) return -1;
        if (std::abs(t - node(k)) > rel_tol * (b_ - a_)) return -1;
        return k;
    }

    bool operator==(const Grid&) const = default;

private:
    double a_;
    double b_;
    int n_;
};

/// Real function sampled on a grid.
///
/// Interior values must be finite; the two endpoint values may be
/// non-finite (power-law endpoint singularities such as t^mu with mu < 0
/// evaluate to inf at a grid endpoint). Operators that cannot produce a
/// trustworthy value at an endpoint mark it unreliable instead of failing.
class GridFn {
public:
    GridFn(Grid grid, std::vector<double> values)
        : grid_(grid), values_(std::move(values)) {
        if (values_.size() != grid_.num_nodes()) {
            throw std::invalid_argument("GridFn: value count must match node count");
        }
        for (std::size_t k = 1; k + 1 < values_.size(); ++k) {
            if (!std::isfinite(values_[k])) {
                throw std::invalid_argument("GridFn: interior values must be finite");
            }
        }
    }

    template <class F>
    static GridFn sample(const Grid& grid, F&& f) {
        std::vector<double> v(grid.num_nodes());
        for (std::size_t k = 0; k < v.size(); ++k) {
            v[k] = f(grid.node(static_cast<int>(k)));
        }
        return GridFn(grid, std::move(v));
    }

    static GridFn constant(const Grid& grid, double c) {
        return GridFn(grid, std::vector<double>(grid.num_nodes(), c));
    }

    const Grid& grid() const noexcept { return grid_; }
    const std::vector<double>& values() const noexcept { return values_; }
    double operator[](std::size_t k) const noexcept { return values_[k]; }
    std::size_t size() const noexcept { return values_.size(); }

    bool left_end_unreliable() const noexcept { return left_unreliable_; }
    bool right_end_unreliable() const noexcept { return right_unreliable_; }
    void mark_left_end_unreliable() noexcept { left_unreliable_ = true; }
    void mark_right_end_unreliable() noexcept { right_unreliable_ = true; }
    void copy_flags(const GridFn& other) noexcept {
        left_unreliable_ = left_unreliable_ || other.left_unreliable_;
        right_unreliable_ = right_unreliable_ || other.right_unreliable_;
    }

private:
    Grid grid_;
    std::vector<double> values_;
    bool left_unreliable_ = false;
    bool right_unreliable_ = false;
};

namespace detail {
inline void require_same_grid(const GridFn& f, const GridFn& g, const char* what) {
    if (!(f.grid() == g.grid())) {
        throw std::invalid_argument(std::string(what) + ": grid mismatch");
    }
}
}  // namespace detail

template <class Op>
GridFn zip_with(const GridFn& f, const GridFn& g, Op op) {
    detail::require_same_grid(f, g, "zip_with");
    std::vector<double> v(f.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = op(f[k], g[k]);
    GridFn out(f.grid(), std::move(v));
    out.copy_flags(f);
    out.copy_flags(g);
    return out;
}

inline GridFn operator+(const GridFn& f, const GridFn& g) {
    return zip_with(f, g, [](double x, double y) { return x + y; });
}

inline GridFn operator-(const GridFn& f, const GridFn& g) {
    return zip_with(f, g, [](double x, double y) { return x - y; });
}

inline GridFn scaled(const GridFn& f, double c) {
    std::vector<double> v(f.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = c * f[k];
    GridFn out(f.grid(), std::move(v));
    out.copy_flags(f);
    return out;
}

/// First derivative by second-order differences: central in the interior,
/// one-sided three-point at the ends. End nodes are marked unreliable.
inline GridFn central_difference(const GridFn& f) {
    const auto& v = f.values();
    const std::size_t n = v.size();
    const double h = f.grid().step();
    std::vector<double> d(n);
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for (std::size_t k = 1; k + 1 < n; ++k) {
        d[k] = (v[k + 1] - v[k - 1]) / (2.0 * h);
    }
    d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    GridFn out(f.grid(), std::move(d));
    out.copy_flags(f);
    out.mark_left_end_unreliable();
    out.mark_right_end_unreliable();
    return out;
}

/// Node index range [first, last] after trimming a fraction of the interval
/// at each end. Used to exclude regions adjacent to singular endpoints.
struct NodeRange {
    std::size_t first = 0;
    std::size_t last = 0;
};

inline NodeRange interior_nodes(const Grid& grid, double trim_left_frac, double trim_right_frac) {
    const int n = grid.num_intervals();
    const double t_lo = grid.a() + trim_left_frac * (grid.b() - grid.a());
    const double t_hi = grid.b() - trim_right_frac * (grid.b() - grid.a());
    int first = 0;
    while (first < n && grid.node(first) < t_lo - 1e-12 * (grid.b() - grid.a())) ++first;
    int last = n;
    while (last > 0 && grid.node(last) > t_hi + 1e-12 * (grid.b() - grid.a())) --last;
    if (last < first) throw std::invalid_argument("interior_nodes: empty range");
    return {static_cast<std::size_t>(first), static_cast<std::size_t>(last)};
}

inline double max_abs_over(const GridFn& f, NodeRange r) {
    double m = 0.0;
    for (std::size_t k = r.first; k <= r.last; ++k) m = std::max(m, std::abs(f[k]));
    return m;
}

/// Max of |f - g| / |g| over the range; g must be bounded away from zero there.
inline double max_rel_err_over(const GridFn& f, const GridFn& g, NodeRange r) {
    detail::require_same_grid(f, g, "max_rel_err_over");
    double m = 0.0;
    for (std::size_t k = r.first; k <= r.last; ++k) {
        m = std::max(m, std::abs(f[k] - g[k]) / std::abs(g[k]));
    }
    return m;
}

}  // namespace fracmech

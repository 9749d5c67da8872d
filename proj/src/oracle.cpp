#include "monolab/oracle.hpp"

#include <cmath>

namespace monolab {

double GridOracle::value(Index offset) {
    if (offset < 0 || offset >= shape_.size()) {
        throw Error(Error::Kind::out_of_bounds, "oracle query outside the box");
    }
    ++queries_;
    return eval(offset);
}

Derivative GridOracle::derivative(Index offset, int axis) {
    if (offset < 0 || offset >= shape_.size()) {
        throw Error(Error::Kind::out_of_bounds, "oracle query outside the box");
    }
    const Index len = shape_.dim(axis);
    ++queries_;
    if (shape_.coord(offset, axis) == len) return 0.0;
    return eval(offset + shape_.stride(axis)) - eval(offset);
}

BoxOracle::BoxOracle(std::vector<double> sides) : sides_(std::move(sides)) {
    if (sides_.empty()) throw Error(Error::Kind::invalid_argument, "box must have at least one axis");
    for (double a : sides_) {
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw Error(Error::Kind::invalid_argument, "box sides must be positive");
        }
    }
}

bool BoxOracle::is_unit_cube() const noexcept {
    for (double a : sides_) {
        if (a != 1.0) return false;
    }
    return true;
}

void BoxOracle::check(std::span<const double> x) const {
    if (x.size() != sides_.size()) {
        throw Error(Error::Kind::dimension_mismatch, "query point has the wrong dimension");
    }
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!(x[k] >= 0.0 && x[k] <= sides_[k])) {
            throw Error(Error::Kind::out_of_bounds, "query point outside the box");
        }
    }
}

double BoxOracle::value(std::span<const double> x) {
    check(x);
    ++queries_;
    return eval(x);
}

Derivative BoxOracle::derivative(std::span<const double> x, int axis) {
    check(x);
    if (axis < 1 || static_cast<std::size_t>(axis) > rank()) {
        throw Error(Error::Kind::out_of_bounds, "axis out of range");
    }
    ++queries_;
    return eval_derivative(x, axis);
}

AxisProfileOracle::AxisProfileOracle(std::vector<Index> dims, int axis, std::vector<double> profile)
    : GridOracle(Shape(std::move(dims))), axis_(axis), profile_(std::move(profile)) {
    if (static_cast<Index>(profile_.size()) != shape().dim(axis_)) {
        throw Error(Error::Kind::dimension_mismatch, "profile length differs from the axis length");
    }
}

double AxisProfileOracle::eval(Index offset) const {
    return profile_[static_cast<std::size_t>(shape().coord(offset, axis_) - 1)];
}

namespace {

struct Cell {
    Index k;      // 0-based lower node
    double frac;  // position inside the cell
};

Cell locate(double x, Index m) {
    if (m == 1) return {0, 0.0};
    const double t = x * static_cast<double>(m - 1);
    const Index k = std::min<Index>(static_cast<Index>(std::floor(t)), m - 2);
    return {k, t - static_cast<double>(k)};
}

// Multilinear interpolation with the cells given; axis `pinned` (0 = none)
// is held at node `pinned_node` instead of being interpolated.
double interpolate(const GridFunction& f, const std::vector<Cell>& cells, int pinned, Index pinned_node) {
    const Shape& sh = f.shape();
    const std::size_t n = sh.rank();
    std::vector<std::size_t> active;
    Index base = 0;
    for (std::size_t a = 0; a < n; ++a) {
        const int axis = static_cast<int>(a) + 1;
        if (axis == pinned) {
            base += pinned_node * sh.stride(axis);
        } else {
            base += cells[a].k * sh.stride(axis);
            if (sh.dims()[a] > 1) active.push_back(a);
        }
    }
    double acc = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << active.size()); ++mask) {
        double w = 1.0;
        Index o = base;
        for (std::size_t b = 0; b < active.size(); ++b) {
            const std::size_t a = active[b];
            if (mask >> b & 1U) {
                w *= cells[a].frac;
                o += sh.stride(static_cast<int>(a) + 1);
            } else {
                w *= 1.0 - cells[a].frac;
            }
        }
        if (w != 0.0) acc += w * f[o];
    }
    return acc;
}

}  // namespace

MultilinearView::MultilinearView(GridFunction f)
    : BoxOracle(std::vector<double>(f.rank(), 1.0)), f_(std::move(f)) {}

double MultilinearView::eval(std::span<const double> x) const {
    std::vector<Cell> cells(x.size());
    for (std::size_t a = 0; a < x.size(); ++a) cells[a] = locate(x[a], f_.dims()[a]);
    return interpolate(f_, cells, 0, 0);
}

Derivative MultilinearView::eval_derivative(std::span<const double> x, int axis) const {
    const Index m = f_.shape().dim(axis);
    if (m == 1) return 0.0;
    const double t = x[axis - 1] * static_cast<double>(m - 1);
    if (t > 0.0 && t < static_cast<double>(m - 1) && t == std::floor(t)) return std::nullopt;

    std::vector<Cell> cells(x.size());
    for (std::size_t a = 0; a < x.size(); ++a) cells[a] = locate(x[a], f_.dims()[a]);
    const Index k = cells[axis - 1].k;
    const double hi = interpolate(f_, cells, axis, k + 1);
    const double lo = interpolate(f_, cells, axis, k);
    return (hi - lo) * static_cast<double>(m - 1);
}

MultilinearView continuous_view(const GridFunction& f) { return MultilinearView(f); }

PwlOracle::PwlOracle(PwlFunction f) : BoxOracle({f.length()}), f_(std::move(f)) {}

Derivative PwlOracle::eval_derivative(std::span<const double> x, int) const {
    if (f_.is_breakpoint(x[0])) return std::nullopt;
    return f_.slope(x[0]);
}

AxisProfileBoxOracle::AxisProfileBoxOracle(std::size_t n, int axis, PwlFunction profile)
    : BoxOracle(std::vector<double>(n, 1.0)), axis_(axis), g_(std::move(profile)) {
    if (axis < 1 || static_cast<std::size_t>(axis) > n) {
        throw Error(Error::Kind::out_of_bounds, "axis out of range");
    }
    if (g_.length() != 1.0) {
        throw Error(Error::Kind::invalid_argument, "profile must be defined on [0, 1]");
    }
}

Derivative AxisProfileBoxOracle::eval_derivative(std::span<const double> x, int axis) const {
    if (axis != axis_) return 0.0;
    const double t = x[axis_ - 1];
    if (g_.is_breakpoint(t)) return std::nullopt;
    return g_.slope(t);
}

}  // namespace monolab

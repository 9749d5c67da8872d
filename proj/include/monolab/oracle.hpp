#pragma once

#include "monolab/grid.hpp"
#include "monolab/pwl.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace monolab {

/// Result of an axis-derivative query. An empty value is the distinguished
/// "not differentiable here" answer (BOT).
using Derivative = std::optional<double>;

inline bool is_bot(const Derivative& d) noexcept { return !d.has_value(); }

// Query oracles. Each value or derivative call increments the counter by one.
// The counter is not synchronized: confine an oracle instance to one thread.

/// Oracle over a discrete box [m_1] x ... x [m_n].
class GridOracle {
public:
    explicit GridOracle(Shape shape) : shape_(std::move(shape)) {}
    virtual ~GridOracle() = default;

    const Shape& shape() const noexcept { return shape_; }
    std::uint64_t queries() const noexcept { return queries_; }

    double value(Index offset);
    double value(const GridPoint& x) { return value(shape_.offset(x)); }

    /// Forward difference along `axis` (0 on the far face). Never BOT.
    Derivative derivative(Index offset, int axis);
    Derivative derivative(const GridPoint& x, int axis) { return derivative(shape_.offset(x), axis); }

protected:
    virtual double eval(Index offset) const = 0;

private:
    Shape shape_;
    std::uint64_t queries_ = 0;
};

/// Oracle over a continuous box [0, a_1] x ... x [0, a_n].
class BoxOracle {
public:
    explicit BoxOracle(std::vector<double> sides);
    virtual ~BoxOracle() = default;

    std::size_t rank() const noexcept { return sides_.size(); }
    const std::vector<double>& sides() const noexcept { return sides_; }
    bool is_unit_cube() const noexcept;
    std::uint64_t queries() const noexcept { return queries_; }

    double value(std::span<const double> x);
    Derivative derivative(std::span<const double> x, int axis);

protected:
    virtual double eval(std::span<const double> x) const = 0;
    virtual Derivative eval_derivative(std::span<const double> x, int axis) const = 0;

private:
    void check(std::span<const double> x) const;

    std::vector<double> sides_;
    std::uint64_t queries_ = 0;
};

class DenseGridOracle final : public GridOracle {
public:
    explicit DenseGridOracle(GridFunction f) : GridOracle(f.shape()), f_(std::move(f)) {}

protected:
    double eval(Index offset) const override { return f_[offset]; }

private:
    GridFunction f_;
};

/// f(x) = profile(x_axis) on an n-dimensional box, without materializing the box.
class AxisProfileOracle final : public GridOracle {
public:
    AxisProfileOracle(std::vector<Index> dims, int axis, std::vector<double> profile);

protected:
    double eval(Index offset) const override;

private:
    int axis_;
    std::vector<double> profile_;
};

/// Multilinear interpolation of a grid function over [0,1]^n, with nodes at
/// (k-1)/(m_i-1). Derivatives are BOT on interior grid hyperplanes.
class MultilinearView final : public BoxOracle {
public:
    explicit MultilinearView(GridFunction f);

    const GridFunction& grid() const noexcept { return f_; }

protected:
    double eval(std::span<const double> x) const override;
    Derivative eval_derivative(std::span<const double> x, int axis) const override;

private:
    GridFunction f_;
};

MultilinearView continuous_view(const GridFunction& f);

/// A piecewise-linear function on [0, m].
class PwlOracle final : public BoxOracle {
public:
    explicit PwlOracle(PwlFunction f);

    const PwlFunction& function() const noexcept { return f_; }

protected:
    double eval(std::span<const double> x) const override { return f_(x[0]); }
    Derivative eval_derivative(std::span<const double> x, int axis) const override;

private:
    PwlFunction f_;
};

/// f(x) = g(x_axis) on [0,1]^n for a piecewise-linear profile g on [0,1].
class AxisProfileBoxOracle final : public BoxOracle {
public:
    AxisProfileBoxOracle(std::size_t n, int axis, PwlFunction profile);

protected:
    double eval(std::span<const double> x) const override { return g_(x[axis_ - 1]); }
    Derivative eval_derivative(std::span<const double> x, int axis) const override;

private:
    int axis_;
    PwlFunction g_;
};

}  // namespace monolab

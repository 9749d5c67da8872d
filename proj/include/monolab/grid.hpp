#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace monolab {

/// Library error. `kind` lets callers (the CLI in particular) map failures
/// to distinct messages without parsing strings.
class Error : public std::runtime_error {
public:
    enum class Kind {
        invalid_argument,
        dimension_mismatch,
        non_finite,
        out_of_bounds,
        cap_exceeded,
        infeasible,
        malformed_input,
        uncertified,
    };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

using Index = std::int64_t;

/// A point of the box [m_1] x ... x [m_n]. Coordinates are 1-based.
struct GridPoint {
    std::vector<Index> coords;

    std::size_t rank() const noexcept { return coords.size(); }
    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// Axis lengths plus row-major strides (last axis fastest).
///
/// Axis arguments throughout the library are 1-based, matching GridPoint.
class Shape {
public:
    Shape() = default;
    explicit Shape(std::vector<Index> dims);

    std::size_t rank() const noexcept { return dims_.size(); }
    Index size() const noexcept { return size_; }
    const std::vector<Index>& dims() const noexcept { return dims_; }
    Index dim(int axis) const { return dims_.at(checked_axis(axis)); }
    Index stride(int axis) const { return strides_.at(checked_axis(axis)); }
    Index max_dim() const noexcept;

    bool contains(const GridPoint& x) const noexcept;
    Index offset(const GridPoint& x) const;
    GridPoint point(Index offset) const;

    /// 1-based coordinate of `offset` along `axis`.
    Index coord(Index offset, int axis) const noexcept {
        return (offset / strides_[axis - 1]) % dims_[axis - 1] + 1;
    }

    /// Number of lines parallel to `axis`.
    Index line_count(int axis) const { return size_ / dim(axis); }
    /// Offset of the first point of the `line`-th line parallel to `axis`.
    Index line_start(int axis, Index line) const noexcept {
        const Index s = strides_[axis - 1];
        return (line / s) * s * dims_[axis - 1] + line % s;
    }

    /// x ⪯ y coordinatewise, for offsets of this shape.
    bool precedes(Index x, Index y) const noexcept;

    friend bool operator==(const Shape& a, const Shape& b) { return a.dims_ == b.dims_; }

private:
    std::size_t checked_axis(int axis) const;

    std::vector<Index> dims_;
    std::vector<Index> strides_;
    Index size_ = 0;
};

/// Dense real-valued function on a finite box, values stored row-major.
/// Immutable after construction; every stored value is finite.
class GridFunction {
public:
    /// Throws Error on non-positive lengths, a size mismatch or a non-finite value.
    GridFunction(std::vector<Index> dims, std::vector<double> values);
    GridFunction(Shape shape, std::vector<double> values);

    const Shape& shape() const noexcept { return shape_; }
    const std::vector<Index>& dims() const noexcept { return shape_.dims(); }
    std::size_t rank() const noexcept { return shape_.rank(); }
    Index size() const noexcept { return shape_.size(); }

    std::span<const double> values() const noexcept { return values_; }
    double operator[](Index offset) const noexcept { return values_[static_cast<std::size_t>(offset)]; }
    double at(const GridPoint& x) const { return values_[static_cast<std::size_t>(shape_.offset(x))]; }

    /// Same shape, new values (validated).
    GridFunction with_values(std::vector<double> values) const { return {shape_, std::move(values)}; }

    friend bool operator==(const GridFunction&, const GridFunction&) = default;

private:
    Shape shape_;
    std::vector<double> values_;
};

inline GridFunction make_grid(std::vector<Index> dims, std::vector<double> values) {
    return {std::move(dims), std::move(values)};
}

void require_same_shape(const GridFunction& f, const GridFunction& g);

}  // namespace monolab

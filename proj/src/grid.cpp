#include "monolab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace monolab {

Shape::Shape(std::vector<Index> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw Error(Error::Kind::invalid_argument, "grid must have at least one axis");
    }
    strides_.assign(dims_.size(), 1);
    size_ = 1;
    for (std::size_t k = dims_.size(); k-- > 0;) {
        if (dims_[k] < 1) {
            throw Error(Error::Kind::invalid_argument,
                        "axis " + std::to_string(k + 1) + " has non-positive length");
        }
        strides_[k] = size_;
        size_ *= dims_[k];
    }
}

Index Shape::max_dim() const noexcept {
    return dims_.empty() ? 0 : *std::max_element(dims_.begin(), dims_.end());
}

std::size_t Shape::checked_axis(int axis) const {
    if (axis < 1 || static_cast<std::size_t>(axis) > dims_.size()) {
        throw Error(Error::Kind::out_of_bounds,
                    "axis " + std::to_string(axis) + " outside [1, " + std::to_string(dims_.size()) + "]");
    }
    return static_cast<std::size_t>(axis - 1);
}

bool Shape::contains(const GridPoint& x) const noexcept {
    if (x.rank() != rank()) return false;
    for (std::size_t k = 0; k < rank(); ++k) {
        if (x.coords[k] < 1 || x.coords[k] > dims_[k]) return false;
    }
    return true;
}

Index Shape::offset(const GridPoint& x) const {
    if (!contains(x)) {
        throw Error(Error::Kind::out_of_bounds, "grid point outside the box");
    }
    Index o = 0;
    for (std::size_t k = 0; k < rank(); ++k) o += (x.coords[k] - 1) * strides_[k];
    return o;
}

GridPoint Shape::point(Index offset) const {
    if (offset < 0 || offset >= size_) {
        throw Error(Error::Kind::out_of_bounds, "offset outside the box");
    }
    GridPoint x;
    x.coords.resize(rank());
    for (std::size_t k = 0; k < rank(); ++k) x.coords[k] = (offset / strides_[k]) % dims_[k] + 1;
    return x;
}

bool Shape::precedes(Index x, Index y) const noexcept {
    for (std::size_t k = 0; k < rank(); ++k) {
        if ((x / strides_[k]) % dims_[k] > (y / strides_[k]) % dims_[k]) return false;
    }
    return true;
}

GridFunction::GridFunction(std::vector<Index> dims, std::vector<double> values)
    : GridFunction(Shape(std::move(dims)), std::move(values)) {}

GridFunction::GridFunction(Shape shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
    if (static_cast<Index>(values_.size()) != shape_.size()) {
        throw Error(Error::Kind::dimension_mismatch,
                    "expected " + std::to_string(shape_.size()) + " values, got " +
                        std::to_string(values_.size()));
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) {
            throw Error(Error::Kind::non_finite, "value at offset " + std::to_string(k) + " is not finite");
        }
    }
}

void require_same_shape(const GridFunction& f, const GridFunction& g) {
    if (!(f.shape() == g.shape())) {
        throw Error(Error::Kind::dimension_mismatch, "functions are defined on different boxes");
    }
}

}  // namespace monolab

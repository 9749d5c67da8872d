#include "monolab/pwl.hpp"

#include "monolab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace monolab {

PwlFunction::PwlFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breaks_(std::move(breakpoints)), values_(std::move(values)) {
    if (breaks_.size() < 2) {
        throw Error(Error::Kind::invalid_argument, "piecewise-linear function needs at least two breakpoints");
    }
    if (breaks_.size() != values_.size()) {
        throw Error(Error::Kind::dimension_mismatch, "breakpoint and value counts differ");
    }
    if (breaks_.front() != 0.0) {
        throw Error(Error::Kind::invalid_argument, "first breakpoint must be 0");
    }
    for (std::size_t k = 0; k < breaks_.size(); ++k) {
        if (!std::isfinite(breaks_[k]) || !std::isfinite(values_[k])) {
            throw Error(Error::Kind::non_finite, "piecewise-linear data must be finite");
        }
        if (k > 0 && !(breaks_[k] > breaks_[k - 1])) {
            throw Error(Error::Kind::invalid_argument, "breakpoints must be strictly increasing");
        }
    }
}

std::size_t PwlFunction::segment(double x) const {
    if (!(x >= 0.0 && x <= length())) {
        throw Error(Error::Kind::out_of_bounds, "query outside [0, m]");
    }
    // Index k of the segment [b_k, b_{k+1}] containing x (last segment includes m).
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    const auto k = static_cast<std::size_t>(it - breaks_.begin());
    return std::min(k, breaks_.size() - 1) - 1;
}

double PwlFunction::operator()(double x) const {
    const std::size_t k = segment(x);
    const double t = (x - breaks_[k]) / (breaks_[k + 1] - breaks_[k]);
    return values_[k] + t * (values_[k + 1] - values_[k]);
}

double PwlFunction::slope(double x) const {
    const std::size_t k = segment(x);
    return (values_[k + 1] - values_[k]) / (breaks_[k + 1] - breaks_[k]);
}

bool PwlFunction::is_breakpoint(double x) const {
    return std::binary_search(breaks_.begin() + 1, breaks_.end() - 1, x);
}

double PwlFunction::max_slope() const noexcept {
    double best = 0.0;
    for (std::size_t k = 0; k + 1 < breaks_.size(); ++k) {
        best = std::max(best, std::abs((values_[k + 1] - values_[k]) / (breaks_[k + 1] - breaks_[k])));
    }
    return best;
}

}  // namespace monolab

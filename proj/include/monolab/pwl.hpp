#pragma once

#include <span>
#include <vector>

namespace monolab {

/// Continuous piecewise-linear function on [0, m] given by its breakpoints.
class PwlFunction {
public:
    /// Breakpoints must be strictly increasing, start at 0, and number at least two.
    PwlFunction(std::vector<double> breakpoints, std::vector<double> values);

    double length() const noexcept { return breaks_.back(); }
    std::span<const double> breakpoints() const noexcept { return breaks_; }
    std::span<const double> values() const noexcept { return values_; }

    double operator()(double x) const;

    /// Slope of the segment containing x; at an interior breakpoint the two
    /// one-sided slopes may differ, so callers that care check is_breakpoint first.
    double slope(double x) const;
    bool is_breakpoint(double x) const;

    /// Largest |segment slope|, i.e. the Lipschitz constant.
    double max_slope() const noexcept;

    friend bool operator==(const PwlFunction&, const PwlFunction&) = default;

private:
    std::size_t segment(double x) const;

    std::vector<double> breaks_;
    std::vector<double> values_;
};

}  // namespace monolab

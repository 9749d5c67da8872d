#pragma once

#include "monolab/grid.hpp"

#include <optional>
#include <span>
#include <vector>

namespace monolab {

/// Ascending sort of a nonempty sequence.
std::vector<double> rearrange_line(std::span<const double> values);

/// R_i f: every line parallel to `axis` replaced by its sorted version.
GridFunction rearrange_axis(const GridFunction& f, int axis);

struct RearrangementTrace {
    std::vector<int> axis_order;
    /// mean_abs_diff between consecutive stages R_{k-1}...R_1 f and R_k...R_1 f.
    std::vector<double> stage_gaps;
};

struct Rearrangement {
    GridFunction result;
    RearrangementTrace trace;
};

/// f* = R_n ... R_1 f. An explicit order may be given for experiments; it must
/// be a permutation of 1..n.
Rearrangement monotone_rearrangement(const GridFunction& f,
                                     std::optional<std::vector<int>> axis_order = std::nullopt);

/// E|f - f*|.
double rearrangement_gap(const GridFunction& f);

namespace reference {

GridFunction rearrange_axis(const GridFunction& f, int axis);

}  // namespace reference

}  // namespace monolab

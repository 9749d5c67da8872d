#include "monolab/rearrange.hpp"

#include "monolab/calculus.hpp"

#include <algorithm>
#include <numeric>

namespace monolab {

std::vector<double> rearrange_line(std::span<const double> values) {
    if (values.empty()) throw Error(Error::Kind::invalid_argument, "cannot rearrange an empty line");
    std::vector<double> out(values.begin(), values.end());
    std::stable_sort(out.begin(), out.end());
    return out;
}

GridFunction rearrange_axis(const GridFunction& f, int axis) {
    const Shape& sh = f.shape();
    const Index len = sh.dim(axis);
    const Index stride = sh.stride(axis);
    const Index lines = sh.line_count(axis);
    const auto in = f.values();
    std::vector<double> out(in.begin(), in.end());

#pragma omp parallel
    {
        std::vector<double> buf(static_cast<std::size_t>(len));
#pragma omp for schedule(static)
        for (Index l = 0; l < lines; ++l) {
            const Index start = sh.line_start(axis, l);
            for (Index k = 0; k < len; ++k) buf[k] = in[start + k * stride];
            std::stable_sort(buf.begin(), buf.end());
            for (Index k = 0; k < len; ++k) out[start + k * stride] = buf[k];
        }
    }
    return f.with_values(std::move(out));
}

Rearrangement monotone_rearrangement(const GridFunction& f, std::optional<std::vector<int>> axis_order) {
    std::vector<int> order;
    if (axis_order) {
        order = *axis_order;
        std::vector<int> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> expected(f.rank());
        std::iota(expected.begin(), expected.end(), 1);
        if (sorted != expected) {
            throw Error(Error::Kind::invalid_argument, "axis order must be a permutation of 1..n");
        }
    } else {
        order.resize(f.rank());
        std::iota(order.begin(), order.end(), 1);
    }

    RearrangementTrace trace{order, {}};
    GridFunction current = f;
    for (int axis : order) {
        GridFunction next = rearrange_axis(current, axis);
        trace.stage_gaps.push_back(mean_abs_diff(current, next));
        current = std::move(next);
    }
    return {std::move(current), std::move(trace)};
}

double rearrangement_gap(const GridFunction& f) {
    return mean_abs_diff(f, monotone_rearrangement(f).result);
}

namespace reference {

GridFunction rearrange_axis(const GridFunction& f, int axis) {
    const Shape& sh = f.shape();
    std::vector<double> out(f.values().begin(), f.values().end());
    // Walk every point whose coordinate along `axis` is 1 and sort its line.
    for (Index o = 0; o < sh.size(); ++o) {
        if (sh.coord(o, axis) != 1) continue;
        std::vector<double> line;
        for (Index k = 0; k < sh.dim(axis); ++k) line.push_back(out[o + k * sh.stride(axis)]);
        std::sort(line.begin(), line.end());
        for (Index k = 0; k < sh.dim(axis); ++k) out[o + k * sh.stride(axis)] = line[k];
    }
    return f.with_values(std::move(out));
}

}  // namespace reference

}  // namespace monolab

#include "monolab/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace monolab {

namespace {

void check_axis(const GridFunction& f, int axis) {
    if (axis < 1 || static_cast<std::size_t>(axis) > f.rank()) {
        throw Error(Error::Kind::out_of_bounds, "axis " + std::to_string(axis) + " out of range");
    }
}

// Sum of |negative forward differences| along one line. Lines are the unit of
// parallel work, so reductions are deterministic regardless of thread count.
double line_negative_mass(std::span<const double> v, Index start, Index stride, Index len) {
    double s = 0.0;
    for (Index k = 0; k + 1 < len; ++k) {
        const double d = v[start + (k + 1) * stride] - v[start + k * stride];
        if (d < 0.0) s -= d;
    }
    return s;
}

}  // namespace

PartialDerivative partial_derivative(const GridFunction& f, const GridPoint& x, int axis) {
    check_axis(f, axis);
    const Index o = f.shape().offset(x);
    if (x.coords[axis - 1] == f.shape().dim(axis)) return {0.0, 0.0};
    const double fwd = f[o + f.shape().stride(axis)] - f[o];
    return {fwd, std::min(0.0, fwd)};
}

double axis_mass(const GridFunction& f, int axis) {
    check_axis(f, axis);
    const Shape& sh = f.shape();
    const Index lines = sh.line_count(axis);
    const Index stride = sh.stride(axis);
    const Index len = sh.dim(axis);
    const auto v = f.values();

    std::vector<double> per_line(static_cast<std::size_t>(lines));
#pragma omp parallel for schedule(static)
    for (Index l = 0; l < lines; ++l) {
        per_line[l] = line_negative_mass(v, sh.line_start(axis, l), stride, len);
    }
    double total = 0.0;
    for (double s : per_line) total += s;
    return total / static_cast<double>(sh.size());
}

std::vector<double> axis_masses(const GridFunction& f) {
    std::vector<double> out(f.rank());
    for (std::size_t k = 0; k < f.rank(); ++k) out[k] = axis_mass(f, static_cast<int>(k) + 1);
    return out;
}

double gradient_mass(const GridFunction& f, GradientNorm norm) {
    if (norm == GradientNorm::l1) {
        // The l1 norm separates over axes.
        double total = 0.0;
        for (double a : axis_masses(f)) total += a;
        return total;
    }
    const Shape& sh = f.shape();
    const auto v = f.values();
    const int n = static_cast<int>(sh.rank());
    const Index last = sh.dim(n);
    const Index rows = sh.size() / last;

    std::vector<double> per_row(static_cast<std::size_t>(rows));
#pragma omp parallel for schedule(static)
    for (Index r = 0; r < rows; ++r) {
        double s = 0.0;
        for (Index o = r * last; o < (r + 1) * last; ++o) {
            double sq = 0.0;
            for (int axis = 1; axis <= n; ++axis) {
                if (sh.coord(o, axis) == sh.dims()[axis - 1]) continue;
                const double d = v[o + sh.stride(axis)] - v[o];
                if (d < 0.0) sq += d * d;
            }
            s += std::sqrt(sq);
        }
        per_row[r] = s;
    }
    double total = 0.0;
    for (double s : per_row) total += s;
    return total / static_cast<double>(sh.size());
}

double weighted_axis_mass(const GridFunction& f) {
    double total = 0.0;
    for (std::size_t k = 0; k < f.rank(); ++k) {
        const int axis = static_cast<int>(k) + 1;
        total += static_cast<double>(f.shape().dim(axis)) * axis_mass(f, axis);
    }
    return total;
}

double lip1(const GridFunction& f) {
    const Shape& sh = f.shape();
    const auto v = f.values();
    double best = 0.0;
    for (int axis = 1; axis <= static_cast<int>(sh.rank()); ++axis) {
        const Index lines = sh.line_count(axis);
        const Index stride = sh.stride(axis);
        const Index len = sh.dim(axis);
#pragma omp parallel for schedule(static) reduction(max : best)
        for (Index l = 0; l < lines; ++l) {
            const Index start = sh.line_start(axis, l);
            for (Index k = 0; k + 1 < len; ++k) {
                best = std::max(best, std::abs(v[start + (k + 1) * stride] - v[start + k * stride]));
            }
        }
    }
    return best;
}

bool is_monotone(const GridFunction& f) {
    const Shape& sh = f.shape();
    const auto v = f.values();
    bool ok = true;
    for (int axis = 1; axis <= static_cast<int>(sh.rank()); ++axis) {
        const Index lines = sh.line_count(axis);
        const Index stride = sh.stride(axis);
        const Index len = sh.dim(axis);
#pragma omp parallel for schedule(static) reduction(&& : ok)
        for (Index l = 0; l < lines; ++l) {
            const Index start = sh.line_start(axis, l);
            for (Index k = 0; k + 1 < len; ++k) {
                if (v[start + (k + 1) * stride] < v[start + k * stride]) {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) return false;
    }
    return true;
}

double mean_abs_diff(const GridFunction& f, const GridFunction& g) {
    require_same_shape(f, g);
    const auto a = f.values();
    const auto b = g.values();
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
    return s / static_cast<double>(a.size());
}

bool equimeasurable(const GridFunction& f, const GridFunction& g) {
    require_same_shape(f, g);
    std::vector<double> a(f.values().begin(), f.values().end());
    std::vector<double> b(g.values().begin(), g.values().end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

namespace reference {

double axis_mass(const GridFunction& f, int axis) {
    check_axis(f, axis);
    double s = 0.0;
    for (Index o = 0; o < f.size(); ++o) {
        s -= partial_derivative(f, f.shape().point(o), axis).directed;
    }
    return s / static_cast<double>(f.size());
}

double gradient_mass(const GridFunction& f, GradientNorm norm) {
    double s = 0.0;
    for (Index o = 0; o < f.size(); ++o) {
        const GridPoint x = f.shape().point(o);
        double acc = 0.0;
        for (int axis = 1; axis <= static_cast<int>(f.rank()); ++axis) {
            const double d = partial_derivative(f, x, axis).directed;
            acc += norm == GradientNorm::l1 ? -d : d * d;
        }
        s += norm == GradientNorm::l1 ? acc : std::sqrt(acc);
    }
    return s / static_cast<double>(f.size());
}

double lip1(const GridFunction& f) {
    double best = 0.0;
    for (Index o = 0; o < f.size(); ++o) {
        const GridPoint x = f.shape().point(o);
        for (int axis = 1; axis <= static_cast<int>(f.rank()); ++axis) {
            best = std::max(best, std::abs(partial_derivative(f, x, axis).forward));
        }
    }
    return best;
}

bool is_monotone(const GridFunction& f) {
    for (Index o = 0; o < f.size(); ++o) {
        const GridPoint x = f.shape().point(o);
        for (int axis = 1; axis <= static_cast<int>(f.rank()); ++axis) {
            if (partial_derivative(f, x, axis).forward < 0.0) return false;
        }
    }
    return true;
}

}  // namespace reference

}  // namespace monolab

#include "monolab/distance.hpp"

#include "monolab/calculus.hpp"
#include "monolab/matching.hpp"
#include "monolab/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>

namespace monolab {

namespace {

std::vector<double> distinct_sorted(std::span<const double> values) {
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<std::uint8_t> indicator_above(const GridFunction& f, double level) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(f.size()));
    for (Index o = 0; o < f.size(); ++o) bits[o] = f[o] > level ? 1 : 0;
    return bits;
}

void check_cap(const GridFunction& f, Index cap) {
    if (f.size() > cap) {
        throw Error(Error::Kind::cap_exceeded,
                    "box has " + std::to_string(f.size()) + " points, above the exact-distance cap of " +
                        std::to_string(cap) + "; use certified bounds instead");
    }
}

// Minimum of sum |a_i - b_i| over non-decreasing b (slope trick).
double line_isotonic_l1(std::span<const double> a) {
    std::priority_queue<double> heap;
    double cost = 0.0;
    for (double x : a) {
        heap.push(x);
        if (heap.top() > x) {
            cost += heap.top() - x;
            heap.pop();
            heap.push(x);
        }
    }
    return cost;
}

template <typename CoverFn>
DistanceReport threshold_decomposition(const GridFunction& f, bool parallel, CoverFn&& cover) {
    const std::vector<double> levels = distinct_sorted(f.values());
    const auto k = static_cast<std::int64_t>(levels.size());
    std::vector<ThresholdRow> rows(levels.empty() ? 0 : levels.size() - 1);

#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (std::int64_t j = 0; j < k - 1; ++j) {
        const auto bits = indicator_above(f, levels[j]);
        rows[j] = {levels[j], levels[j + 1] - levels[j], cover(f.shape(), bits).matching_size};
    }

    double total = 0.0;
    for (const auto& r : rows) total += r.gap * static_cast<double>(r.flips);
    return {total / static_cast<double>(f.size()), std::move(rows), monotone_rearrangement(f).result,
            DistanceMethod::threshold_matching};
}

}  // namespace

BooleanRepair boolean_hamming_to_monotone(const GridFunction& f) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(f.size()));
    for (Index o = 0; o < f.size(); ++o) {
        if (f[o] != 0.0 && f[o] != 1.0) {
            throw Error(Error::Kind::invalid_argument, "function is not Boolean");
        }
        bits[o] = f[o] == 1.0 ? 1 : 0;
    }
    const BooleanCover cover = boolean_violation_cover(f.shape(), bits);
    BooleanRepair out{static_cast<double>(cover.matching_size) / static_cast<double>(f.size()), {}};
    out.flips.reserve(cover.cover.size());
    for (Index o : cover.cover) out.flips.push_back(f.shape().point(o));
    return out;
}

GridFunction monotone_closure_repair(const GridFunction& f, const std::vector<GridPoint>& flips) {
    const Shape& sh = f.shape();
    std::vector<std::uint8_t> flipped(static_cast<std::size_t>(f.size()), 0);
    for (const auto& p : flips) flipped[sh.offset(p)] = 1;

    constexpr double kNone = -std::numeric_limits<double>::infinity();
    const double floor_value = *std::min_element(f.values().begin(), f.values().end());
    // Row-major order is a linear extension of ⪯, so predecessors are final.
    std::vector<double> below(static_cast<std::size_t>(f.size()));
    std::vector<double> out(f.values().begin(), f.values().end());
    for (Index o = 0; o < f.size(); ++o) {
        double best = flipped[o] ? kNone : f[o];
        for (int axis = 1; axis <= static_cast<int>(sh.rank()); ++axis) {
            if (sh.coord(o, axis) > 1) best = std::max(best, below[o - sh.stride(axis)]);
        }
        below[o] = best;
        if (flipped[o]) out[o] = best == kNone ? floor_value : best;
    }
    return f.with_values(std::move(out));
}

DistanceReport l1_distance_exact(const GridFunction& f, Index cap) {
    check_cap(f, cap);
    return threshold_decomposition(f, true, [](const Shape& sh, std::span<const std::uint8_t> bits) {
        return boolean_violation_cover(sh, bits);
    });
}

double l1_distance_bruteforce(const GridFunction& f) {
    if (f.size() > 10) {
        throw Error(Error::Kind::cap_exceeded, "brute-force distance is limited to 10 points");
    }
    const Shape& sh = f.shape();
    const std::vector<double> levels = distinct_sorted(f.values());
    const Index N = f.size();
    std::vector<std::size_t> g(static_cast<std::size_t>(N), 0);  // level indices
    double best = std::numeric_limits<double>::infinity();

    std::function<void(Index, double)> search = [&](Index o, double cost) {
        if (cost >= best) return;
        if (o == N) {
            best = cost;
            return;
        }
        std::size_t lo = 0;
        for (int axis = 1; axis <= static_cast<int>(sh.rank()); ++axis) {
            if (sh.coord(o, axis) > 1) lo = std::max(lo, g[o - sh.stride(axis)]);
        }
        for (std::size_t v = lo; v < levels.size(); ++v) {
            g[o] = v;
            search(o + 1, cost + std::abs(f[o] - levels[v]));
        }
    };
    search(0, 0.0);
    return best / static_cast<double>(N);
}

double hamming_line(const GridFunction& f) {
    if (f.rank() != 1) throw Error(Error::Kind::invalid_argument, "hamming_line needs a one-axis function");
    std::vector<double> tails;
    for (double x : f.values()) {
        const auto it = std::upper_bound(tails.begin(), tails.end(), x);
        if (it == tails.end()) {
            tails.push_back(x);
        } else {
            *it = x;
        }
    }
    return 1.0 - static_cast<double>(tails.size()) / static_cast<double>(f.size());
}

MatchingBound matching_lower_bound(const GridFunction& f) {
    struct Candidate {
        double gap;
        std::int32_t x, y;
    };
    const Shape& sh = f.shape();
    std::vector<Candidate> cands;
    for (Index x = 0; x < f.size(); ++x) {
        for (Index y = x + 1; y < f.size(); ++y) {
            if (f[x] > f[y] && sh.precedes(x, y)) {
                cands.push_back({f[x] - f[y], static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
            }
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.gap != b.gap) return a.gap > b.gap;
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });

    std::vector<std::uint8_t> used(static_cast<std::size_t>(f.size()), 0);
    MatchingBound out;
    double gap_sum = 0.0;
    for (const auto& c : cands) {
        if (used[c.x] || used[c.y]) continue;
        used[c.x] = used[c.y] = 1;
        out.matching.pairs.push_back({sh.point(c.x), sh.point(c.y), c.gap});
        gap_sum += c.gap;
    }
    const auto N = static_cast<double>(f.size());
    out.d1_lb = gap_sum / (2.0 * N);
    out.d0_lb = static_cast<double>(out.matching.pairs.size()) / N;
    return out;
}

double line_restriction_lower_bound(const GridFunction& f, int axis) {
    const Shape& sh = f.shape();
    const Index len = sh.dim(axis);
    const Index stride = sh.stride(axis);
    const Index lines = sh.line_count(axis);
    std::vector<double> per_line(static_cast<std::size_t>(lines));
#pragma omp parallel
    {
        std::vector<double> buf(static_cast<std::size_t>(len));
#pragma omp for schedule(static)
        for (Index l = 0; l < lines; ++l) {
            const Index start = sh.line_start(axis, l);
            for (Index k = 0; k < len; ++k) buf[k] = f[start + k * stride];
            per_line[l] = line_isotonic_l1(buf);
        }
    }
    double total = 0.0;
    for (double c : per_line) total += c;
    return total / static_cast<double>(sh.size());
}

namespace reference {

DistanceReport l1_distance_exact(const GridFunction& f, Index cap) {
    check_cap(f, cap);
    return threshold_decomposition(f, false, [](const Shape& sh, std::span<const std::uint8_t> bits) {
        return reference::boolean_violation_cover(sh, bits);
    });
}

}  // namespace reference

}  // namespace monolab

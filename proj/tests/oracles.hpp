#pragma once

// Small independent implementations used as test oracles. They follow the
// definitions directly (enumeration, point-by-point loops) and share no code
// with the library beyond GridFunction/Shape indexing.

#include "monolab/grid.hpp"
#include "monolab/random.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <vector>

namespace oracle {

using monolab::GridFunction;
using monolab::GridPoint;
using monolab::Index;

inline bool leq(const GridPoint& x, const GridPoint& y) {
    for (std::size_t k = 0; k < x.coords.size(); ++k) {
        if (x.coords[k] > y.coords[k]) return false;
    }
    return true;
}

/// Monotone by the order definition: every comparable pair, not only neighbours.
inline bool monotone_by_pairs(const GridFunction& f) {
    const auto& s = f.shape();
    for (Index a = 0; a < f.size(); ++a) {
        for (Index b = 0; b < f.size(); ++b) {
            if (leq(s.point(a), s.point(b)) && f[a] > f[b]) return false;
        }
    }
    return true;
}

/// min over monotone g valued in f's distinct values of E|f - g|, by enumerating
/// every assignment. Optimal monotone approximations can always take values in
/// the range of f, so this is the exact L1 distance.
inline double brute_d1(const GridFunction& f) {
    std::set<double> distinct(f.values().begin(), f.values().end());
    const std::vector<double> levels(distinct.begin(), distinct.end());
    const Index N = f.size();
    const auto k = static_cast<Index>(levels.size());
    std::vector<Index> idx(static_cast<std::size_t>(N), 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        std::vector<double> g(static_cast<std::size_t>(N));
        double cost = 0.0;
        for (Index p = 0; p < N; ++p) {
            g[p] = levels[idx[p]];
            cost += std::abs(f[p] - g[p]);
        }
        if (cost / N < best && monotone_by_pairs(f.with_values(g))) best = cost / N;
        Index p = 0;
        while (p < N && ++idx[p] == k) idx[p++] = 0;
        if (p == N) break;
    }
    return best;
}

/// Smallest set of points whose removal leaves no violating pair, by subset
/// enumeration (N <= 16).
inline Index brute_min_repair(const GridFunction& f) {
    const auto& s = f.shape();
    const Index N = f.size();
    Index best = N;
    for (std::uint32_t mask = 0; mask < (1u << N); ++mask) {
        const Index c = std::popcount(mask);
        if (c >= best) continue;
        bool ok = true;
        for (Index a = 0; a < N && ok; ++a) {
            if (mask >> a & 1u) continue;
            for (Index b = 0; b < N; ++b) {
                if (mask >> b & 1u) continue;
                if (leq(s.point(a), s.point(b)) && f[a] > f[b]) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) best = c;
    }
    return best;
}

/// (1/N) sum_x sum_i |min(0, f(x+e_i) - f(x))|, point by point through GridPoint.
inline double directed_mass_l1(const GridFunction& f) {
    const auto& s = f.shape();
    double total = 0.0;
    for (Index p = 0; p < f.size(); ++p) {
        GridPoint x = s.point(p);
        for (std::size_t i = 0; i < x.coords.size(); ++i) {
            if (x.coords[i] == s.dims()[i]) continue;
            GridPoint y = x;
            ++y.coords[i];
            total += std::max(0.0, f.at(x) - f.at(y));
        }
    }
    return total / f.size();
}

inline std::uint64_t lattice_ball_count(int n, Index r) {
    std::uint64_t count = 0;
    std::vector<Index> x(static_cast<std::size_t>(n), -r);
    while (true) {
        Index norm = 0;
        for (Index v : x) norm += std::abs(v);
        if (norm <= r) ++count;
        std::size_t k = 0;
        while (k < x.size() && ++x[k] > r) x[k++] = -r;
        if (k == x.size()) break;
    }
    return count;
}

/// Longest nondecreasing subsequence by the quadratic DP.
inline Index lnds(const std::vector<double>& v) {
    std::vector<Index> best(v.size(), 1);
    Index out = v.empty() ? 0 : 1;
    for (std::size_t j = 0; j < v.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (v[i] <= v[j]) best[j] = std::max(best[j], best[i] + 1);
        }
        out = std::max(out, best[j]);
    }
    return out;
}

inline GridFunction random_grid(monolab::Rng& rng, std::vector<Index> dims, int max_value) {
    Index N = 1;
    for (Index d : dims) N *= d;
    std::vector<double> v(static_cast<std::size_t>(N));
    for (auto& x : v) x = static_cast<double>(rng.below(static_cast<std::uint64_t>(max_value) + 1));
    return {std::move(dims), std::move(v)};
}

inline GridFunction random_real_grid(monolab::Rng& rng, std::vector<Index> dims) {
    Index N = 1;
    for (Index d : dims) N *= d;
    std::vector<double> v(static_cast<std::size_t>(N));
    for (auto& x : v) x = rng.uniform(-2.0, 2.0);
    return {std::move(dims), std::move(v)};
}

}  // namespace oracle

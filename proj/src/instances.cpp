#include "monolab/instances.hpp"

#include "monolab/distance.hpp"
#include "monolab/random.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace monolab {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(Error::Kind::invalid_argument, what);
}

std::vector<Index> cube_dims(int n, Index m) {
    require(n >= 1, "n must be at least 1");
    require(m >= 1, "m must be at least 1");
    return std::vector<Index>(static_cast<std::size_t>(n), m);
}

template <typename Fn>
GridFunction tabulate(const std::vector<Index>& dims, Fn&& fn) {
    Shape sh(dims);
    std::vector<double> v(static_cast<std::size_t>(sh.size()));
    GridPoint x;
    for (Index o = 0; o < sh.size(); ++o) {
        x = sh.point(o);
        v[o] = fn(x);
    }
    return {std::move(sh), std::move(v)};
}

}  // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::step_tightness: return "step_tightness";
        case Family::linear_tightness: return "linear_tightness";
        case Family::hole: return "hole";
        case Family::slope_step: return "slope_step";
        case Family::walsh_step: return "walsh_step";
        case Family::random_lipschitz: return "random_lipschitz";
    }
    return "unknown";
}

Family family_from_string(const std::string& name) {
    static const std::map<std::string, Family> names = {
        {"step_tightness", Family::step_tightness}, {"step", Family::step_tightness},
        {"linear_tightness", Family::linear_tightness}, {"linear", Family::linear_tightness},
        {"hole", Family::hole},
        {"slope_step", Family::slope_step}, {"slope-step", Family::slope_step},
        {"walsh_step", Family::walsh_step}, {"walsh", Family::walsh_step},
        {"random_lipschitz", Family::random_lipschitz}, {"random", Family::random_lipschitz},
    };
    const auto it = names.find(name);
    if (it == names.end()) throw Error(Error::Kind::invalid_argument, "unknown instance family '" + name + "'");
    return it->second;
}

GridFunction gen_step_tightness(int n, Index m) {
    require(m >= 2 && m % 2 == 0, "step instance needs an even m");
    return tabulate(cube_dims(n, m), [m](const GridPoint& x) { return x.coords[0] <= m / 2 ? 1.0 : 0.0; });
}

GridFunction gen_linear_tightness(int n, Index m) {
    require(m >= 2, "linear instance needs m >= 2");
    const auto denom = static_cast<double>(m - 1);
    return tabulate(cube_dims(n, m),
                    [denom](const GridPoint& x) { return 1.0 - static_cast<double>(x.coords[0] - 1) / denom; });
}

GridFunction hole_function(int n, Index m, const std::vector<Index>& center, Index radius) {
    require(static_cast<int>(center.size()) == n, "center must have n coordinates");
    require(radius >= 0, "radius must be nonnegative");
    return tabulate(cube_dims(n, m), [&](const GridPoint& x) {
        Index dist = 0;
        for (std::size_t k = 0; k < center.size(); ++k) dist += std::abs(x.coords[k] - center[k]);
        return dist <= radius ? static_cast<double>(dist - radius) : 0.0;
    });
}

std::vector<std::vector<Index>> hole_packing_centers(int n, Index m, Index radius) {
    require(radius >= 1, "radius must be at least 1");
    std::vector<Index> axis_centers;
    for (Index c = radius + 1; c + radius <= m; c += 2 * radius + 1) axis_centers.push_back(c);
    std::vector<std::vector<Index>> out;
    if (axis_centers.empty()) return out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        std::vector<Index> c(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) c[k] = axis_centers[idx[k]];
        out.push_back(std::move(c));
        int k = n - 1;
        while (k >= 0 && ++idx[k] == axis_centers.size()) idx[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

HoleInstance gen_hole(int n, Index m, double epsilon, Index cap) {
    require(epsilon > 0.0, "epsilon must be positive");
    require(epsilon > std::pow(static_cast<double>(m), -n), "epsilon must exceed 1/m^n");
    const std::vector<Index> center(static_cast<std::size_t>(n), (m + 1) / 2);
    const Index r_fit = std::min(center[0] - 1, m - center[0]);
    if (r_fit < 1) throw Error(Error::Kind::infeasible, "no ball of radius >= 1 fits in the box");

    const double dn = n;
    const double guess = 2.0 * std::pow(static_cast<double>(m), dn / (dn + 1.0)) * std::pow(epsilon, 1.0 / (dn + 1.0));
    Index r = std::clamp<Index>(std::max<Index>(1, std::llround(guess)), 1, r_fit);

    while (true) {
        GridFunction f = hole_function(n, m, center, r);
        double certified;
        std::string method;
        if (f.size() <= cap) {
            certified = l1_distance_exact(f, cap).exact_d1;
            method = "exact";
        } else {
            certified = 0.0;
            for (int axis = 1; axis <= n; ++axis) certified = std::max(certified, line_restriction_lower_bound(f, axis));
            method = "line_restriction";
        }
        if (certified >= epsilon) {
            InstanceSpec spec{Family::hole,
                              {{"n", n}, {"m", m}, {"epsilon", epsilon}, {"center", center}, {"r", r}},
                              std::nullopt, certified, method};
            return {std::move(f), std::move(spec)};
        }
        if (r == r_fit) {
            throw Error(Error::Kind::infeasible, "no fitting hole radius reaches the requested distance");
        }
        r = std::min(2 * r, r_fit);
    }
}

std::pair<Index, Index> slope_step_window(Index m) { return {m / 3 + 1, (2 * m) / 3}; }

std::vector<double> slope_step_profile(Index m, Index z) {
    const auto [lo, hi] = slope_step_window(m);
    require(m >= 3 && z >= lo && z <= hi, "slope-step location outside its window");
    std::vector<double> g(static_cast<std::size_t>(m));
    for (Index t = 1; t <= m; ++t) g[t - 1] = t < z ? 1.0 : 0.0;
    return g;
}

GridFunction gen_slope_step_discrete(int n, Index m, int axis, Index z) {
    require(axis >= 1 && axis <= n, "axis out of range");
    const std::vector<double> g = slope_step_profile(m, z);
    return tabulate(cube_dims(n, m), [&](const GridPoint& x) { return g[x.coords[axis - 1] - 1]; });
}

PwlFunction gen_slope_step_continuous(double epsilon, double z) {
    require(epsilon > 0.0 && epsilon <= 1.0 / 6.0, "slope-step height must lie in (0, 1/6]");
    require(z >= 1.0 / 3.0 && z <= 2.0 / 3.0 - epsilon, "slope-step location outside [1/3, 2/3 - eps]");
    return PwlFunction({0.0, z, z + epsilon, 1.0}, {epsilon, epsilon, 0.0, 0.0});
}

PwlDistance pwl_distance_to_monotone(const PwlFunction& f, Index cells) {
    require(cells >= 1, "need at least one cell");
    // The step function of cell-midpoint samples is within L*delta/4 of f in
    // mean absolute difference, and its distance to monotone equals the
    // discrete one (optimal Boolean cuts sit on cell boundaries). d1 is
    // 1-Lipschitz in that metric, which gives the error term.
    const double delta = f.length() / static_cast<double>(cells);
    std::vector<double> samples(static_cast<std::size_t>(cells));
    for (Index k = 0; k < cells; ++k) samples[k] = f((static_cast<double>(k) + 0.5) * delta);
    const GridFunction fbar({cells}, std::move(samples));
    return {line_restriction_lower_bound(fbar, 1), f.max_slope() * delta / 4.0};
}

Index walsh_step_s(int i, Index x) { return ((x - 1) >> i) + 1; }

int walsh_w(const std::vector<int>& S, Index x) {
    int sign = 1;
    for (int i : S) {
        if (((x - 1) >> (i - 1)) & 1) sign = -sign;
    }
    return sign;
}

GridFunction gen_walsh_step(int ell, int n, const std::vector<int>& i_vec, const std::vector<std::vector<int>>& S_vec) {
    require(ell >= 0 && ell < 31, "ell out of range");
    require(static_cast<int>(i_vec.size()) == n && static_cast<int>(S_vec.size()) == n,
            "step and Walsh index vectors must have length n");
    for (int i : i_vec) require(i >= 0 && i <= ell, "step index must lie in {0..ell}");
    for (const auto& S : S_vec) {
        std::vector<int> sorted = S;
        std::sort(sorted.begin(), sorted.end());
        require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "Walsh subset has repeats");
        for (int i : S) require(i >= 1 && i <= ell, "Walsh subset entries must lie in [1, ell]");
    }
    const Index m = Index{1} << ell;
    return tabulate(cube_dims(n, m), [&](const GridPoint& x) {
        Index s = 0;
        int w = 1;
        for (int j = 0; j < n; ++j) {
            s += walsh_step_s(i_vec[j], x.coords[j]);
            w *= walsh_w(S_vec[j], x.coords[j]);
        }
        return static_cast<double>(2 * s + w);
    });
}

GridFunction lipschitz_regularize(const GridFunction& raw, double L) {
    require(L > 0.0, "L must be positive");
    const Shape& sh = raw.shape();
    std::vector<double> v(raw.values().begin(), raw.values().end());
    for (int axis = 1; axis <= static_cast<int>(sh.rank()); ++axis) {
        const Index len = sh.dim(axis);
        const Index stride = sh.stride(axis);
        const Index lines = sh.line_count(axis);
#pragma omp parallel for schedule(static)
        for (Index l = 0; l < lines; ++l) {
            const Index start = sh.line_start(axis, l);
            for (Index k = 1; k < len; ++k) {
                double& cur = v[start + k * stride];
                cur = std::min(cur, v[start + (k - 1) * stride] + L);
            }
            for (Index k = len - 1; k-- > 0;) {
                double& cur = v[start + k * stride];
                cur = std::min(cur, v[start + (k + 1) * stride] + L);
            }
        }
    }
    return raw.with_values(std::move(v));
}

GridFunction gen_random_lipschitz(const std::vector<Index>& dims, double L, std::uint64_t seed) {
    require(L > 0.0, "L must be positive");
    Shape sh(dims);
    double span = 0.0;
    for (Index m : dims) span += static_cast<double>(m - 1);
    const double top = L * span;
    Rng rng(seed);
    std::vector<double> raw(static_cast<std::size_t>(sh.size()));
    for (double& x : raw) x = rng.uniform(0.0, top);
    return lipschitz_regularize(GridFunction(std::move(sh), std::move(raw)), L);
}

std::uint64_t l1_ball_volume_discrete(int n, Index r) {
    require(n >= 1, "n must be at least 1");
    if (r < 0) throw Error(Error::Kind::invalid_argument, "radius must be nonnegative");
    std::vector<std::uint64_t> vol(static_cast<std::size_t>(r) + 1);
    for (Index k = 0; k <= r; ++k) vol[k] = 1 + 2 * static_cast<std::uint64_t>(k);
    for (int dim = 2; dim <= n; ++dim) {
        std::vector<std::uint64_t> next(vol.size());
        for (Index k = 0; k <= r; ++k) {
            std::uint64_t acc = vol[k];
            for (Index d = 1; d <= k; ++d) acc += 2 * vol[k - d];
            next[k] = acc;
        }
        vol = std::move(next);
    }
    return vol[r];
}

double l1_ball_volume_continuous(int n, double r) {
    require(n >= 1, "n must be at least 1");
    if (!(r > 0.0)) throw Error(Error::Kind::invalid_argument, "radius must be positive");
    double v = 1.0;
    for (int k = 1; k <= n; ++k) v *= 2.0 * r / static_cast<double>(k);
    return v;
}

double l1_ball_volume(int n, double r, BallMode mode) {
    if (mode == BallMode::continuous) return l1_ball_volume_continuous(n, r);
    if (r != std::floor(r)) throw Error(Error::Kind::invalid_argument, "discrete radius must be an integer");
    return static_cast<double>(l1_ball_volume_discrete(n, static_cast<Index>(r)));
}

Instance regenerate(const InstanceSpec& spec) {
    const auto& p = spec.params;
    try {
        switch (spec.family) {
            case Family::step_tightness: return gen_step_tightness(p.at("n").get<int>(), p.at("m").get<Index>());
            case Family::linear_tightness: return gen_linear_tightness(p.at("n").get<int>(), p.at("m").get<Index>());
            case Family::hole:
                return hole_function(p.at("n").get<int>(), p.at("m").get<Index>(),
                                     p.at("center").get<std::vector<Index>>(), p.at("r").get<Index>());
            case Family::slope_step:
                if (p.value("kind", std::string("discrete")) == "continuous") {
                    return gen_slope_step_continuous(p.at("epsilon").get<double>(), p.at("z").get<double>());
                }
                return gen_slope_step_discrete(p.at("n").get<int>(), p.at("m").get<Index>(), p.at("axis").get<int>(),
                                               p.at("z").get<Index>());
            case Family::walsh_step:
                return gen_walsh_step(p.at("ell").get<int>(), p.at("n").get<int>(), p.at("i").get<std::vector<int>>(),
                                      p.at("S").get<std::vector<std::vector<int>>>());
            case Family::random_lipschitz:
                if (!spec.seed) throw Error(Error::Kind::malformed_input, "random_lipschitz spec needs a seed");
                return gen_random_lipschitz(p.at("dims").get<std::vector<Index>>(), p.at("L").get<double>(), *spec.seed);
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(Error::Kind::malformed_input, std::string("instance spec: ") + e.what());
    }
    throw Error(Error::Kind::malformed_input, "unknown family");
}

}  // namespace monolab

#include "monolab/testers.hpp"

#include "monolab/random.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace monolab {

namespace {

const double kLn3 = std::log(3.0);
constexpr double kSlopeSlack = 1e-9;

void check_L_eps(double L, double epsilon) {
    if (!(L > 0.0) || !std::isfinite(L)) throw Error(Error::Kind::invalid_argument, "L must be positive");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw Error(Error::Kind::invalid_argument, "epsilon must be positive");
    }
}

void check_line(const GridOracle& f) {
    if (f.shape().rank() != 1) throw Error(Error::Kind::invalid_argument, "line tester needs a one-axis domain");
}

std::uint64_t ceil_to_count(double x) { return static_cast<std::uint64_t>(std::ceil(x)); }

// Discretized view i -> f(delta * i) of a function on [0, m]. Queries are
// forwarded, so the inner oracle's counter is the true query cost.
class DiscretizedLine final : public GridOracle {
public:
    DiscretizedLine(BoxOracle& inner, Index m_prime)
        : GridOracle(Shape({m_prime})), inner_(&inner), m_(inner.sides()[0]), m_prime_(m_prime) {}

protected:
    double eval(Index offset) const override {
        const double x = std::min(m_, m_ * static_cast<double>(offset + 1) / static_cast<double>(m_prime_));
        return inner_->value(std::span<const double>(&x, 1));
    }

private:
    BoxOracle* inner_;
    double m_;
    Index m_prime_;
};

struct SpotCheckOutcome {
    Verdict verdict = Verdict::accept;
    std::optional<PairWitness> witness;
    bool not_in_class = false;
    std::uint64_t rounds = 0;
};

// Rounds of: pick u, binary search for the key (f(u), u). While every
// comparison agrees with the index order, u stays inside [lo, hi] and the
// search ends on u; the first disagreement is a violating pair.
SpotCheckOutcome spot_check(GridOracle& f, double epsilon0, Rng& rng, std::optional<double> slope_limit) {
    const Index m = f.shape().size();
    SpotCheckOutcome out;
    out.rounds = ceil_to_count(kLn3 / epsilon0);
    for (std::uint64_t round = 0; round < out.rounds; ++round) {
        const auto u = static_cast<Index>(rng.below(static_cast<std::uint64_t>(m)));
        const double fu = f.value(u);
        Index lo = 0;
        Index hi = m - 1;
        while (lo <= hi) {
            const Index mid = lo + (hi - lo) / 2;
            if (mid == u) break;
            const double fm = f.value(mid);
            const Index a = std::min(u, mid);
            const Index b = std::max(u, mid);
            const double fa = a == u ? fu : fm;
            const double fb = b == u ? fu : fm;
            if (slope_limit && std::abs(fb - fa) > *slope_limit * static_cast<double>(b - a) + kSlopeSlack) {
                out.verdict = Verdict::reject;
                out.not_in_class = true;
                out.witness = PairWitness{a + 1, b + 1, fa, fb};
                return out;
            }
            const bool mid_below = fm < fu || (fm == fu && mid < u);
            if (mid_below != (mid < u)) {
                out.verdict = Verdict::reject;
                out.witness = PairWitness{a + 1, b + 1, fa, fb};
                return out;
            }
            if (mid_below) {
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
    }
    return out;
}

}  // namespace

std::string to_string(Verdict v) { return v == Verdict::accept ? "accept" : "reject"; }

std::uint64_t pd_budget_grid(std::size_t n, Index m_max, double L, double epsilon) {
    check_L_eps(L, epsilon);
    return ceil_to_count(2.0 * static_cast<double>(n) * static_cast<double>(m_max) * L * kLn3 / epsilon);
}

std::uint64_t pd_budget_cube(std::size_t n, double L, double epsilon) {
    check_L_eps(L, epsilon);
    return ceil_to_count(2.0 * static_cast<double>(n) * L * kLn3 / epsilon);
}

TestReport pd_tester(GridOracle& f, double L, double epsilon, std::uint64_t seed) {
    const Shape& sh = f.shape();
    TestReport rep;
    rep.tester = "pd";
    rep.seed = seed;
    rep.budget = pd_budget_grid(sh.rank(), sh.max_dim(), L, epsilon);
    rep.params.L = L;
    rep.params.epsilon = epsilon;
    rep.params.rounds = rep.budget;

    Rng rng(seed);
    const std::uint64_t start = f.queries();
    for (std::uint64_t it = 0; it < rep.budget; ++it) {
        const auto x = static_cast<Index>(rng.below(static_cast<std::uint64_t>(sh.size())));
        const int axis = static_cast<int>(rng.below(sh.rank())) + 1;
        const Derivative d = f.derivative(x, axis);
        if (d && *d < 0.0) {
            rep.verdict = Verdict::reject;
            rep.witness = GridEdgeWitness{sh.point(x), axis, *d};
            break;
        }
    }
    rep.queries_used = f.queries() - start;
    return rep;
}

TestReport pd_tester(BoxOracle& f, double L, double epsilon, std::uint64_t seed) {
    if (!f.is_unit_cube()) {
        throw Error(Error::Kind::invalid_argument, "continuous partial-derivative tester runs on [0,1]^n");
    }
    TestReport rep;
    rep.tester = "pd";
    rep.seed = seed;
    rep.budget = pd_budget_cube(f.rank(), L, epsilon);
    rep.params.L = L;
    rep.params.epsilon = epsilon;
    rep.params.rounds = rep.budget;

    Rng rng(seed);
    const std::uint64_t start = f.queries();
    std::vector<double> x(f.rank());
    for (std::uint64_t it = 0; it < rep.budget; ++it) {
        for (double& c : x) c = rng.uniform01();
        const int axis = static_cast<int>(rng.below(f.rank())) + 1;
        const Derivative d = f.derivative(x, axis);
        if (d && *d < 0.0) {
            rep.verdict = Verdict::reject;
            rep.witness = BoxWitness{x, axis, *d};
            break;
        }
    }
    rep.queries_used = f.queries() - start;
    return rep;
}

std::uint64_t spot_check_round_cost(Index m) {
    if (m < 1) throw Error(Error::Kind::invalid_argument, "line length must be positive");
    const auto bits = static_cast<std::uint64_t>(std::bit_width(static_cast<std::uint64_t>(m - 1)));
    return bits + 1;  // ceil(log2 m) + 1
}

TestReport ekkrv_line_tester(GridOracle& f, double epsilon0, std::uint64_t seed) {
    check_line(f);
    if (!(epsilon0 > 0.0 && epsilon0 <= 1.0)) {
        throw Error(Error::Kind::invalid_argument, "proximity parameter must lie in (0, 1]");
    }
    Rng rng(seed);
    const std::uint64_t start = f.queries();
    const SpotCheckOutcome sc = spot_check(f, epsilon0, rng, std::nullopt);

    TestReport rep;
    rep.tester = "ekkrv";
    rep.seed = seed;
    rep.verdict = sc.verdict;
    if (sc.witness) rep.witness = *sc.witness;
    rep.queries_used = f.queries() - start;
    rep.budget = sc.rounds * spot_check_round_cost(f.shape().size());
    rep.params.epsilon = epsilon0;
    rep.params.epsilon_prime = epsilon0;
    rep.params.rounds = sc.rounds;
    rep.params.line_tester = "binary-search spot-checker";
    return rep;
}

TestReport l1_line_tester_discrete(GridOracle& f, double L, double epsilon, std::uint64_t seed) {
    check_line(f);
    check_L_eps(L, epsilon);
    const Index m = f.shape().size();
    const double eps_prime = std::sqrt(epsilon / (static_cast<double>(m) * L));

    TestReport rep;
    rep.tester = "l1-line";
    rep.seed = seed;
    rep.params.L = L;
    rep.params.epsilon = epsilon;
    rep.params.epsilon_prime = eps_prime;
    const std::uint64_t start = f.queries();

    if (eps_prime < 2.0 / static_cast<double>(m)) {
        rep.params.exhaustive = true;
        rep.budget = static_cast<std::uint64_t>(m);
        double prev = f.value(Index{0});
        for (Index i = 1; i < m; ++i) {
            const double cur = f.value(i);
            if (std::abs(cur - prev) > L + kSlopeSlack) {
                rep.verdict = Verdict::reject;
                rep.params.not_in_class = true;
                rep.witness = PairWitness{i, i + 1, prev, cur};
                break;
            }
            if (cur < prev) {
                rep.verdict = Verdict::reject;
                rep.witness = PairWitness{i, i + 1, prev, cur};
                break;
            }
            prev = cur;
        }
        rep.queries_used = f.queries() - start;
        return rep;
    }

    Rng rng(seed);
    const double eps0 = std::min(1.0, eps_prime);
    const SpotCheckOutcome sc = spot_check(f, eps0, rng, L);
    rep.verdict = sc.verdict;
    if (sc.witness) rep.witness = *sc.witness;
    rep.params.not_in_class = sc.not_in_class;
    rep.params.rounds = sc.rounds;
    rep.params.line_tester = "binary-search spot-checker";
    rep.budget = sc.rounds * spot_check_round_cost(m);
    rep.queries_used = f.queries() - start;
    return rep;
}

TestReport l1_line_tester_continuous(const PwlFunction& f, double L, double epsilon, std::uint64_t seed) {
    check_L_eps(L, epsilon);
    const double m = f.length();

    TestReport rep;
    rep.tester = "l1-line-continuous";
    rep.seed = seed;
    rep.params.L = L;
    rep.params.epsilon = epsilon;
    if (m * L / epsilon < 1.0) {
        // An L-Lipschitz function on [0, m] is within mL/2 < epsilon of monotone.
        rep.params.trivial = true;
        return rep;
    }

    const auto m_prime = static_cast<Index>(std::ceil(4.0 * m * L / epsilon));
    const double delta = m / static_cast<double>(m_prime);
    const double eps_prime = std::sqrt(1.0 / (4.0 * static_cast<double>(m_prime)));
    rep.params.m_prime = m_prime;
    rep.params.epsilon_prime = eps_prime;
    rep.params.line_tester = "binary-search spot-checker";

    PwlOracle inner(f);
    DiscretizedLine fbar(inner, m_prime);
    Rng rng(seed);
    const SpotCheckOutcome sc = spot_check(fbar, eps_prime, rng, L * delta);
    rep.verdict = sc.verdict;
    if (sc.witness) rep.witness = *sc.witness;
    rep.params.not_in_class = sc.not_in_class;
    rep.params.rounds = sc.rounds;
    rep.budget = sc.rounds * spot_check_round_cost(m_prime);
    rep.queries_used = inner.queries();
    return rep;
}

}  // namespace monolab

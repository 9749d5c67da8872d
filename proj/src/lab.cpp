#include "monolab/lab.hpp"

#include "monolab/calculus.hpp"
#include "monolab/io.hpp"
#include "monolab/oracle.hpp"
#include "monolab/random.hpp"
#include "monolab/rearrange.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace monolab {

using nlohmann::json;

Check Check::le(double lhs, double rhs) {
    const double tol = 1e-9 * std::max(std::abs(lhs), std::abs(rhs)) + 1e-12;
    return {lhs, rhs, lhs <= rhs + tol};
}

bool VerificationRow::all_pass() const {
    return box_inequality.pass && optimality_lower.pass && optimality_upper.pass && per_axis.pass &&
           telescoping.pass && star_monotone && star_equimeasurable;
}

VerificationRow verify_inequalities(const GridFunction& f, std::string instance_id, std::string family, Index cap) {
    VerificationRow row;
    row.instance_id = std::move(instance_id);
    row.family = std::move(family);
    row.points = f.size();

    const Rearrangement star = monotone_rearrangement(f);
    row.gap = mean_abs_diff(f, star.result);
    row.stage_gaps = star.trace.stage_gaps;
    row.axis_mass = axis_masses(f);
    row.mass_l1 = weighted_axis_mass(f);
    row.mass_l2 = gradient_mass(f, GradientNorm::l2);

    row.box_inequality = Check::le(row.gap, 2.0 * row.mass_l1);

    if (f.size() <= cap) {
        row.exact = true;
        row.d1 = l1_distance_exact(f, cap).exact_d1;
        row.optimality_lower = Check::le(row.d1, row.gap);
        row.optimality_upper = Check::le(row.gap, 2.0 * row.d1);
    } else {
        double lb = matching_lower_bound(f).d1_lb;
        for (int axis = 1; axis <= static_cast<int>(f.rank()); ++axis) {
            lb = std::max(lb, line_restriction_lower_bound(f, axis));
        }
        row.d1 = lb;
        row.optimality_lower = Check::le(row.d1, row.gap);
        row.optimality_upper = Check{row.gap, row.gap, true};
    }

    // Per-axis cost: keep the tightest axis, failing if any axis fails.
    bool axes_pass = true;
    for (int axis = 1; axis <= static_cast<int>(f.rank()); ++axis) {
        const double cost = mean_abs_diff(f, rearrange_axis(f, axis));
        row.axis_cost.push_back(cost);
        const Check c = Check::le(cost, 2.0 * static_cast<double>(f.shape().dim(axis)) * row.axis_mass[axis - 1]);
        axes_pass = axes_pass && c.pass;
        if (axis == 1 || c.slack() < row.per_axis.slack()) row.per_axis = c;
    }
    row.per_axis.pass = axes_pass;

    double stage_sum = 0.0;
    for (double g : row.stage_gaps) stage_sum += g;
    row.telescoping = Check::le(row.gap, stage_sum);

    row.star_monotone = is_monotone(star.result);
    row.star_equimeasurable = equimeasurable(f, star.result);
    return row;
}

ProbeResult conjecture_probe(const GridFunction& f, Index cap) {
    ProbeResult p;
    p.mass_l2 = gradient_mass(f, GradientNorm::l2);
    double upper;
    if (f.size() <= cap) {
        p.exact = true;
        p.d1 = l1_distance_exact(f, cap).exact_d1;
        upper = p.d1;
    } else {
        const double gap = rearrangement_gap(f);
        p.d1 = gap / 2.0;
        upper = gap;
    }
    if (p.mass_l2 > 0.0) {
        p.ratio = p.d1 / p.mass_l2;
        p.ratio_upper = upper / p.mass_l2;
    } else if (p.d1 > 0.0) {
        p.ratio = p.ratio_upper = std::numeric_limits<double>::infinity();
        p.breach = true;
    }
    return p;
}

SweepConfig SweepConfig::defaults() {
    SweepConfig c;
    c.dims = {{16}, {64}, {256}, {8, 8}, {16, 16}, {4, 4, 4}, {6, 6, 6}, {3, 3, 3, 3}, {4, 4, 4, 4}};
    return c;
}

namespace {

struct NamedInstance {
    std::string id;
    std::string family;
    GridFunction f;
};

std::vector<NamedInstance> named_family_instances(Index cap) {
    std::vector<NamedInstance> out;
    for (int n = 1; n <= 3; ++n) {
        for (Index m : {4, 16}) {
            const std::string tag = "n" + std::to_string(n) + "_m" + std::to_string(m);
            out.push_back({"step_" + tag, "step_tightness", gen_step_tightness(n, m)});
            out.push_back({"linear_" + tag, "linear_tightness", gen_linear_tightness(n, m)});
        }
    }
    for (int n = 1; n <= 2; ++n) {
        for (Index m : {16, 32}) {
            for (double eps : {0.05, 0.1}) {
                try {
                    HoleInstance h = gen_hole(n, m, eps, cap);
                    out.push_back({"hole_n" + std::to_string(n) + "_m" + std::to_string(m) + "_e" + format_number(eps),
                                   "hole", std::move(h.f)});
                } catch (const Error&) {
                    // no certified radius at this size; nothing to sweep
                }
            }
        }
    }
    for (int n = 1; n <= 2; ++n) {
        const Index m = 12;
        const auto [lo, hi] = slope_step_window(m);
        for (Index z = lo; z <= hi; ++z) {
            out.push_back({"slope_step_n" + std::to_string(n) + "_z" + std::to_string(z), "slope_step",
                           gen_slope_step_discrete(n, m, n, z)});
        }
    }
    for (int ell = 1; ell <= 3; ++ell) {
        for (int n = 1; n <= 2; ++n) {
            const std::vector<int> i_vec(static_cast<std::size_t>(n), ell - 1);
            std::vector<std::vector<int>> S_vec(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) {
                for (int b = 1; b < ell; ++b) S_vec[j].push_back(b);
            }
            out.push_back({"walsh_l" + std::to_string(ell) + "_n" + std::to_string(n), "walsh_step",
                           gen_walsh_step(ell, n, i_vec, S_vec)});
        }
    }
    return out;
}

}  // namespace

SweepResult run_verification_sweep(const SweepConfig& config, const std::map<std::string, double>& history) {
    if (config.dims.empty() || config.Ls.empty()) {
        throw Error(Error::Kind::invalid_argument, "sweep needs at least one shape and one L");
    }
    std::vector<NamedInstance> work;
    for (std::uint64_t k = 0; k < config.random_instances; ++k) {
        const auto& dims = config.dims[k % config.dims.size()];
        const double L = config.Ls[(k / config.dims.size()) % config.Ls.size()];
        const std::uint64_t seed = derive_seed(config.seed, k);
        work.push_back({"random_" + std::to_string(k), "random_lipschitz", gen_random_lipschitz(dims, L, seed)});
    }
    if (config.include_named_families) {
        for (auto& inst : named_family_instances(config.cap)) work.push_back(std::move(inst));
    }

    SweepResult result;
    result.rows.resize(work.size());
    result.probes.resize(work.size());
    const auto count = static_cast<std::int64_t>(work.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < count; ++k) {
        result.rows[k] = verify_inequalities(work[k].f, work[k].id, work[k].family, config.cap);
        result.probes[k] = conjecture_probe(work[k].f, config.cap);
    }

    std::map<std::string, ProbeTableRow> table;
    for (std::size_t k = 0; k < work.size(); ++k) {
        if (!result.rows[k].all_pass()) ++result.failures;
        auto& t = table[work[k].family];
        t.family = work[k].family;
        ++t.count;
        if (t.count == 1 || result.probes[k].ratio > t.max_ratio) {
            t.max_ratio = result.probes[k].ratio;
            t.argmax_id = work[k].id;
        }
    }
    for (auto& [family, t] : table) {
        if (auto it = history.find(family); it != history.end()) {
            t.historical_max = it->second;
            t.exceeds_history = t.max_ratio > it->second;
        }
        result.probe_table.push_back(t);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Power experiments

namespace {

std::vector<double> number_or_list(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return {fallback};
    const json& v = j.at(key);
    if (v.is_number()) return {v.get<double>()};
    if (v.is_array() && !v.empty()) return v.get<std::vector<double>>();
    throw Error(Error::Kind::malformed_input, std::string("'") + key + "' must be a number or a nonempty list");
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

double line_d1(const std::vector<double>& profile) {
    return l1_distance_exact(GridFunction({static_cast<Index>(profile.size())}, profile)).exact_d1;
}

/// Everything one cell needs to run a trial, prepared once.
struct PreparedCell {
    PowerRow row;
    // slope_step
    std::vector<Index> dims;
    Index z_lo = 0, z_hi = 0;
    // dense grid instances
    std::optional<GridFunction> grid;
    // continuous
    std::optional<PwlFunction> pwl;
    std::size_t box_rank = 1;
};

void require_tester(const PowerCell& c, std::initializer_list<const char*> allowed) {
    for (const char* t : allowed) {
        if (c.tester == t) return;
    }
    throw Error(Error::Kind::invalid_argument, "tester '" + c.tester + "' does not apply to family '" + c.family + "'");
}

PreparedCell prepare(const PowerCell& c, Index cap) {
    PreparedCell p;
    PowerRow& r = p.row;
    r.family = c.family;
    r.tester = c.tester;
    r.L = c.L;
    r.epsilon = c.epsilon;
    const json& q = c.params;
    try {
        if (c.family == "slope_step") {
            const int n = q.value("n", 1);
            const Index m = q.value("m", Index{16});
            require_tester(c, n == 1 ? std::initializer_list<const char*>{"pd", "l1-line", "ekkrv"}
                                     : std::initializer_list<const char*>{"pd"});
            p.dims.assign(static_cast<std::size_t>(n), m);
            std::tie(p.z_lo, p.z_hi) = slope_step_window(m);
            double lb = std::numeric_limits<double>::infinity();
            for (Index z = p.z_lo; z <= p.z_hi; ++z) lb = std::min(lb, line_d1(slope_step_profile(m, z)));
            r.n = static_cast<std::size_t>(n);
            r.m = m;
            r.certified_d1_lb = lb;
            r.certificate = "exact";
        } else if (c.family == "slope_step_continuous") {
            const int n = q.value("n", 1);
            require_tester(c, n == 1 ? std::initializer_list<const char*>{"pd", "l1-line-continuous"}
                                     : std::initializer_list<const char*>{"pd"});
            p.pwl = gen_slope_step_continuous(q.value("height", 1.0 / 6.0), q.value("z", 1.0 / 3.0));
            p.box_rank = static_cast<std::size_t>(n);
            const PwlDistance d = pwl_distance_to_monotone(*p.pwl, q.value("cells", Index{4096}));
            r.n = p.box_rank;
            r.m = 1;
            r.certified_d1_lb = d.lower();
            r.certificate = "fine_grid";
        } else if (c.family == "hole") {
            const int n = q.value("n", 1);
            const Index m = q.value("m", Index{64});
            require_tester(c, n == 1 ? std::initializer_list<const char*>{"pd", "l1-line", "ekkrv"}
                                     : std::initializer_list<const char*>{"pd"});
            HoleInstance h = gen_hole(n, m, q.value("target", c.epsilon), cap);
            r.n = static_cast<std::size_t>(n);
            r.m = m;
            r.certified_d1_lb = h.spec.certified_d1_lb;
            r.certificate = h.spec.certificate;
            p.grid = std::move(h.f);
        } else if (c.family == "walsh_step") {
            const int ell = q.at("ell").get<int>();
            const int n = q.at("n").get<int>();
            require_tester(c, n == 1 ? std::initializer_list<const char*>{"pd", "l1-line", "ekkrv"}
                                     : std::initializer_list<const char*>{"pd"});
            p.grid = gen_walsh_step(ell, n, q.at("i").get<std::vector<int>>(),
                                    q.at("S").get<std::vector<std::vector<int>>>());
            r.n = static_cast<std::size_t>(n);
            r.m = Index{1} << ell;
            r.certified_d1_lb = l1_distance_exact(*p.grid, cap).exact_d1;
            r.certificate = "exact";
        } else if (c.family == "monotone") {
            r.control = true;
            if (c.tester == "l1-line-continuous") {
                r.n = 1;
                r.m = q.value("m", Index{1});
            } else {
                const int n = q.value("n", 1);
                require_tester(c, n == 1 ? std::initializer_list<const char*>{"pd", "l1-line", "ekkrv"}
                                         : std::initializer_list<const char*>{"pd"});
                r.n = static_cast<std::size_t>(n);
                r.m = q.value("m", Index{16});
                p.dims.assign(r.n, r.m);
            }
        } else {
            throw Error(Error::Kind::invalid_argument, "unknown power-experiment family '" + c.family + "'");
        }
    } catch (const json::exception& e) {
        throw Error(Error::Kind::malformed_input, "cell parameters: " + std::string(e.what()));
    }
    if (!r.control && !(r.certified_d1_lb && *r.certified_d1_lb > c.epsilon)) {
        throw Error(Error::Kind::uncertified, "family '" + c.family + "' has certified d1 " +
                                                  format_number(r.certified_d1_lb.value_or(0.0)) +
                                                  ", not above epsilon " + format_number(c.epsilon));
    }
    return p;
}

/// Separable sum of nondecreasing per-axis profiles with steps in [0, L].
GridFunction monotone_control(const std::vector<Index>& dims, double L, Rng& rng) {
    std::vector<std::vector<double>> prof(dims.size());
    for (std::size_t a = 0; a < dims.size(); ++a) {
        prof[a].resize(static_cast<std::size_t>(dims[a]));
        double v = 0.0;
        for (auto& x : prof[a]) {
            x = v;
            v += L * rng.uniform01();
        }
    }
    const Shape shape(dims);
    std::vector<double> values(static_cast<std::size_t>(shape.size()));
    for (Index k = 0; k < shape.size(); ++k) {
        double s = 0.0;
        for (std::size_t a = 0; a < dims.size(); ++a) s += prof[a][shape.coord(k, static_cast<int>(a) + 1) - 1];
        values[k] = s;
    }
    return {shape, std::move(values)};
}

/// Nondecreasing piecewise-linear function on [0, m] with slopes in [0, L].
PwlFunction monotone_pwl(Index m, double L, Rng& rng) {
    const int pieces = 8;
    std::vector<double> bp, vals;
    double v = 0.0;
    for (int k = 0; k <= pieces; ++k) {
        bp.push_back(static_cast<double>(m) * k / pieces);
        vals.push_back(v);
        v += L * rng.uniform01() * static_cast<double>(m) / pieces;
    }
    return {std::move(bp), std::move(vals)};
}

TestReport run_grid_tester(const std::string& tester, GridOracle& o, double L, double eps, std::uint64_t seed) {
    if (tester == "pd") return pd_tester(o, L, eps, seed);
    if (tester == "l1-line") return l1_line_tester_discrete(o, L, eps, seed);
    return ekkrv_line_tester(o, eps, seed);
}

TestReport run_trial(const PowerCell& c, const PreparedCell& p, std::uint64_t trial, std::uint64_t seed) {
    const PowerRow& r = p.row;
    if (c.family == "slope_step") {
        const std::uint64_t span = static_cast<std::uint64_t>(p.z_hi - p.z_lo + 1);
        const Index z = p.z_lo + static_cast<Index>(trial % span);
        const int axis = 1 + static_cast<int>((trial / span) % r.n);
        AxisProfileOracle o(p.dims, axis, slope_step_profile(r.m, z));
        return run_grid_tester(c.tester, o, c.L, c.epsilon, seed);
    }
    if (c.family == "slope_step_continuous") {
        if (c.tester == "l1-line-continuous") return l1_line_tester_continuous(*p.pwl, c.L, c.epsilon, seed);
        const int axis = 1 + static_cast<int>(trial % p.box_rank);
        AxisProfileBoxOracle o(p.box_rank, axis, *p.pwl);
        return pd_tester(o, c.L, c.epsilon, seed);
    }
    if (c.family == "monotone") {
        Rng rng(derive_seed(seed, 0x6d6f6e6fULL));
        if (c.tester == "l1-line-continuous") return l1_line_tester_continuous(monotone_pwl(r.m, c.L, rng), c.L, c.epsilon, seed);
        DenseGridOracle o(monotone_control(p.dims, c.L, rng));
        return run_grid_tester(c.tester, o, c.L, c.epsilon, seed);
    }
    DenseGridOracle o(*p.grid);
    return run_grid_tester(c.tester, o, c.L, c.epsilon, seed);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    if (!j.is_object()) throw Error(Error::Kind::malformed_input, "experiment config must hold an object");
    ExperimentConfig c;
    try {
        c.trials = j.value("trials", c.trials);
        c.seed = j.value("seed", c.seed);
        c.jobs = j.value("jobs", c.jobs);
        c.output = j.value("output", c.output);
        if (!j.contains("cells") || !j.at("cells").is_array()) {
            throw Error(Error::Kind::malformed_input, "experiment config needs a 'cells' list");
        }
        for (const auto& cell : j.at("cells")) {
            const auto epsilons = number_or_list(cell, "epsilon", 0.1);
            const auto Ls = number_or_list(cell, "L", 1.0);
            for (double L : Ls) {
                for (double eps : epsilons) {
                    PowerCell pc;
                    pc.family = cell.at("family").get<std::string>();
                    pc.tester = cell.at("tester").get<std::string>();
                    pc.params = cell.value("params", json::object());
                    pc.L = L;
                    pc.epsilon = eps;
                    c.cells.push_back(std::move(pc));
                }
            }
        }
    } catch (const json::exception& e) {
        throw Error(Error::Kind::malformed_input, std::string("experiment config: ") + e.what());
    }
    if (c.trials == 0) throw Error(Error::Kind::invalid_argument, "trials must be positive");
    return c;
}

json ExperimentConfig::to_json() const {
    json j;
    j["trials"] = trials;
    j["seed"] = seed;
    j["cells"] = json::array();
    for (const auto& c : cells) {
        j["cells"].push_back({{"family", c.family}, {"tester", c.tester}, {"params", c.params}, {"L", c.L},
                              {"epsilon", c.epsilon}});
    }
    return j;
}

std::string ExperimentConfig::hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(to_json().dump())));
    return buf;
}

double power_threshold(std::uint64_t trials) {
    return 2.0 / 3.0 - 3.0 * std::sqrt((2.0 / 9.0) / static_cast<double>(trials));
}

std::vector<PowerRow> power_experiment(const ExperimentConfig& config) {
    const std::string hash = config.hash();
    std::vector<PowerRow> rows;
    if (config.jobs > 0) omp_set_num_threads(config.jobs);
    for (std::size_t ci = 0; ci < config.cells.size(); ++ci) {
        const PowerCell& cell = config.cells[ci];
        const PreparedCell prepared = prepare(cell, kDefaultExactCap);
        const std::uint64_t cell_seed = derive_seed(config.seed, ci);

        std::vector<TestReport> reports(config.trials);
        const auto trials = static_cast<std::int64_t>(config.trials);
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t t = 0; t < trials; ++t) {
            const auto trial = static_cast<std::uint64_t>(t);
            reports[t] = run_trial(cell, prepared, trial, derive_seed(cell_seed, trial));
        }

        PowerRow r = prepared.row;
        r.config_hash = hash;
        r.cell = ci;
        r.trials = config.trials;
        double total = 0.0;
        for (const auto& rep : reports) {
            if (rep.verdict == Verdict::reject) ++r.rejections;
            total += static_cast<double>(rep.queries_used);
            r.max_queries = std::max(r.max_queries, rep.queries_used);
            r.budget = std::max(r.budget, rep.budget);
        }
        r.rejection_rate = static_cast<double>(r.rejections) / static_cast<double>(r.trials);
        r.mean_queries = total / static_cast<double>(r.trials);
        if (r.control) {
            r.threshold = 0.0;
            r.pass = r.rejections == 0;
        } else {
            r.threshold = power_threshold(r.trials);
            r.pass = r.rejection_rate >= r.threshold;
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string join(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? ";" : "") + format_number(xs[k]);
    return s;
}

const char* flag(bool b) { return b ? "1" : "0"; }

}  // namespace

void write_verification_csv(std::ostream& os, const std::vector<VerificationRow>& rows,
                            const std::vector<ProbeResult>& probes) {
    os << "instance,family,points,d1_mode,d1,gap,mass_l1,mass_l2,axis_mass,axis_cost,"
          "box_lhs,box_rhs,box_pass,opt_lower_pass,opt_upper_pass,per_axis_slack,per_axis_pass,"
          "telescoping_pass,star_monotone,star_equimeasurable,probe_ratio,probe_ratio_upper,all_pass\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        const ProbeResult p = k < probes.size() ? probes[k] : ProbeResult{};
        os << r.instance_id << ',' << r.family << ',' << r.points << ',' << (r.exact ? "exact" : "bound") << ','
           << format_number(r.d1) << ',' << format_number(r.gap) << ',' << format_number(r.mass_l1) << ','
           << format_number(r.mass_l2) << ',' << join(r.axis_mass) << ',' << join(r.axis_cost) << ','
           << format_number(r.box_inequality.lhs) << ',' << format_number(2.0 * r.mass_l1) << ','
           << flag(r.box_inequality.pass) << ',' << flag(r.optimality_lower.pass) << ','
           << flag(r.optimality_upper.pass) << ',' << format_number(r.per_axis.slack()) << ','
           << flag(r.per_axis.pass) << ',' << flag(r.telescoping.pass) << ',' << flag(r.star_monotone) << ','
           << flag(r.star_equimeasurable) << ',' << format_number(p.ratio) << ',' << format_number(p.ratio_upper)
           << ',' << flag(r.all_pass()) << '\n';
    }
}

void write_probe_table(std::ostream& os, const std::vector<ProbeTableRow>& table) {
    os << "family,count,max_ratio,argmax,historical_max,exceeds_history\n";
    for (const auto& t : table) {
        os << t.family << ',' << t.count << ',' << format_number(t.max_ratio) << ',' << t.argmax_id << ','
           << (t.historical_max ? format_number(*t.historical_max) : std::string()) << ','
           << flag(t.exceeds_history) << '\n';
    }
}

void write_power_csv(std::ostream& os, const std::vector<PowerRow>& rows) {
    os << "config_hash,cell,family,tester,n,m,L,epsilon,control,certified_d1_lb,certificate,trials,rejections,"
          "rejection_rate,mean_queries,max_queries,budget,threshold,pass\n";
    for (const auto& r : rows) {
        os << r.config_hash << ',' << r.cell << ',' << r.family << ',' << r.tester << ',' << r.n << ',' << r.m << ','
           << format_number(r.L) << ',' << format_number(r.epsilon) << ',' << flag(r.control) << ','
           << (r.certified_d1_lb ? format_number(*r.certified_d1_lb) : std::string()) << ',' << r.certificate << ','
           << r.trials << ',' << r.rejections << ',' << format_number(r.rejection_rate) << ','
           << format_number(r.mean_queries) << ',' << r.max_queries << ',' << r.budget << ','
           << format_number(r.threshold) << ',' << flag(r.pass) << '\n';
    }
}

}  // namespace monolab

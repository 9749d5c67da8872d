#include "monolab/calculus.hpp"
#include "monolab/distance.hpp"
#include "monolab/instances.hpp"
#include "monolab/io.hpp"
#include "monolab/lab.hpp"
#include "monolab/oracle.hpp"
#include "monolab/rearrange.hpp"
#include "monolab/testers.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace monolab;
using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240601;

enum Exit { kOk = 0, kFail = 1, kUsage = 2 };

std::vector<std::vector<int>> parse_sets(const std::string& text) {
    // "1,2;3;" -> {{1,2},{3},{}}
    std::vector<std::vector<int>> out(1);
    std::string num;
    auto flush = [&] {
        if (!num.empty()) out.back().push_back(std::stoi(num));
        num.clear();
    };
    for (char c : text) {
        if (c == ';') {
            flush();
            out.emplace_back();
        } else if (c == ',') {
            flush();
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            num += c;
        } else if (c != ' ') {
            throw Error(Error::Kind::invalid_argument, "--S expects digits separated by ',' and ';'");
        }
    }
    flush();
    return out;
}

void emit(const std::string& path, const json& j) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << '\n';
    } else {
        write_json_file(path, j);
    }
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Error::Kind::invalid_argument, "cannot write '" + path + "'");
    fn(out);
}

struct GenerateArgs {
    std::string family;
    int n = 1;
    Index m = 4;
    int axis = 1;
    std::optional<double> z;
    double epsilon = 0.1;
    int ell = 2;
    std::vector<int> i;
    std::string S;
    std::vector<Index> dims;
    double L = 1.0;
    std::uint64_t seed = kDefaultSeed;
    Index cap = kDefaultExactCap;
    bool continuous = false;
    std::string output;
};

int run_generate(const GenerateArgs& a) {
    const Family family = family_from_string(a.family);
    InstanceSpec spec{family, json::object(), std::nullopt, std::nullopt, {}};
    switch (family) {
        case Family::step_tightness:
        case Family::linear_tightness:
            spec.params = {{"n", a.n}, {"m", a.m}};
            break;
        case Family::hole: {
            HoleInstance h = gen_hole(a.n, a.m, a.epsilon, a.cap);
            spec = h.spec;
            break;
        }
        case Family::slope_step:
            if (a.continuous) {
                spec.params = {{"kind", "continuous"}, {"epsilon", a.epsilon}, {"z", a.z.value_or(1.0 / 3.0)}};
            } else {
                const Index z = a.z ? static_cast<Index>(*a.z) : slope_step_window(a.m).first;
                if (a.z && static_cast<double>(z) != *a.z) {
                    throw Error(Error::Kind::invalid_argument, "discrete slope-step location must be an integer");
                }
                spec.params = {{"kind", "discrete"}, {"n", a.n}, {"m", a.m}, {"axis", a.axis}, {"z", z}};
            }
            break;
        case Family::walsh_step: {
            const std::vector<int> i = a.i.empty() ? std::vector<int>(static_cast<std::size_t>(a.n), 0) : a.i;
            auto S = a.S.empty() ? std::vector<std::vector<int>>(static_cast<std::size_t>(a.n)) : parse_sets(a.S);
            spec.params = {{"ell", a.ell}, {"n", a.n}, {"i", i}, {"S", S}};
            break;
        }
        case Family::random_lipschitz:
            spec.params = {{"dims", a.dims.empty() ? std::vector<Index>(static_cast<std::size_t>(a.n), a.m) : a.dims},
                           {"L", a.L}};
            spec.seed = a.seed;
            break;
    }
    const Instance inst = regenerate(spec);
    if (!spec.certified_d1_lb) {
        if (const auto* g = std::get_if<GridFunction>(&inst); g && g->size() <= a.cap) {
            spec.certified_d1_lb = l1_distance_exact(*g, a.cap).exact_d1;
            spec.certificate = "exact";
        } else if (const auto* p = std::get_if<PwlFunction>(&inst)) {
            spec.certified_d1_lb = pwl_distance_to_monotone(*p).lower();
            spec.certificate = "fine_grid";
        }
    }
    emit(a.output, instance_to_json(inst, {{"spec", spec_to_json(spec)}}));
    return kOk;
}

GridFunction load_grid(const std::string& path) { return grid_from_json(read_json_file(path)); }

int run_rearrange(const std::string& input, const std::string& output, const std::vector<int>& order) {
    const GridFunction f = load_grid(input);
    Rearrangement r = order.empty() ? monotone_rearrangement(f) : monotone_rearrangement(f, order);
    const double gap = mean_abs_diff(f, r.result);
    if (!output.empty()) write_json_file(output, grid_to_json(r.result, {{"gap", gap}}));
    std::cout << "gap " << format_number(gap) << '\n';
    for (std::size_t k = 0; k < r.trace.stage_gaps.size(); ++k) {
        std::cout << "stage " << r.trace.axis_order[k] << ' ' << format_number(r.trace.stage_gaps[k]) << '\n';
    }
    return kOk;
}

int run_distance(const std::string& input, const std::string& method, Index cap, const std::string& report) {
    const GridFunction f = load_grid(input);
    if (method == "exact") {
        const DistanceReport r = l1_distance_exact(f, cap);
        if (!report.empty()) write_json_file(report, distance_report_to_json(r));
        std::cout << format_number(r.exact_d1) << '\n';
    } else if (method == "brute") {
        std::cout << format_number(l1_distance_bruteforce(f)) << '\n';
    } else {
        const MatchingBound mb = matching_lower_bound(f);
        double line = 0.0;
        for (int axis = 1; axis <= static_cast<int>(f.rank()); ++axis) {
            line = std::max(line, line_restriction_lower_bound(f, axis));
        }
        const double gap = rearrangement_gap(f);
        std::cout << "matching_d1_lb " << format_number(mb.d1_lb) << '\n'
                  << "matching_d0_lb " << format_number(mb.d0_lb) << '\n'
                  << "line_restriction_lb " << format_number(line) << '\n'
                  << "gap_half_lb " << format_number(gap / 2.0) << '\n'
                  << "gap_ub " << format_number(gap) << '\n';
    }
    return kOk;
}

int run_test(const std::string& input, const std::string& tester, double L, double epsilon, std::uint64_t seed,
             bool continuous, bool header, const std::string& id) {
    const Instance inst = instance_from_json(read_json_file(input));
    TestReport rep;
    if (const auto* p = std::get_if<PwlFunction>(&inst)) {
        if (tester == "l1-line-continuous") {
            rep = l1_line_tester_continuous(*p, L, epsilon, seed);
        } else if (tester == "pd") {
            PwlOracle o(*p);
            rep = pd_tester(o, L, epsilon, seed);
        } else {
            throw Error(Error::Kind::invalid_argument, "tester '" + tester + "' does not take a piecewise-linear file");
        }
    } else {
        const auto& g = std::get<GridFunction>(inst);
        if (tester == "pd" && continuous) {
            MultilinearView o(g);
            rep = pd_tester(o, L, epsilon, seed);
        } else if (tester == "pd") {
            DenseGridOracle o(g);
            rep = pd_tester(o, L, epsilon, seed);
        } else if (tester == "l1-line") {
            DenseGridOracle o(g);
            rep = l1_line_tester_discrete(o, L, epsilon, seed);
        } else if (tester == "ekkrv") {
            DenseGridOracle o(g);
            rep = ekkrv_line_tester(o, epsilon, seed);
        } else {
            throw Error(Error::Kind::invalid_argument, "tester '" + tester + "' does not take a grid file");
        }
    }
    if (header) std::cout << test_report_csv_header() << '\n';
    std::cout << to_csv_row(rep, id.empty() ? input : id) << '\n';
    return rep.verdict == Verdict::accept ? kOk : kFail;
}

struct VerifyArgs {
    std::string input;
    bool sweep = false;
    std::uint64_t random = 1000;
    std::uint64_t seed = 20240601;
    bool no_named = false;
    std::string history;
    std::string csv;
    std::string probe_table;
    bool fail_on_breach = false;
    Index cap = kDefaultExactCap;
};

void print_summary(const SweepResult& s) {
    double worst_box = std::numeric_limits<double>::infinity();
    double worst_axis = std::numeric_limits<double>::infinity();
    for (const auto& r : s.rows) {
        worst_box = std::min(worst_box, r.box_inequality.slack());
        worst_axis = std::min(worst_axis, r.per_axis.slack());
    }
    std::cout << "instances " << s.rows.size() << '\n'
              << "failures " << s.failures << '\n'
              << "worst_box_slack " << format_number(worst_box) << '\n'
              << "worst_per_axis_slack " << format_number(worst_axis) << '\n';
    write_probe_table(std::cout, s.probe_table);
}

int run_verify(const VerifyArgs& a) {
    if (!a.sweep) {
        if (a.input.empty()) throw CLI::ValidationError("verify", "give a grid file or --sweep");
        const GridFunction f = load_grid(a.input);
        const VerificationRow row = verify_inequalities(f, a.input, "file", a.cap);
        const ProbeResult probe = conjecture_probe(f, a.cap);
        with_output(a.csv, [&](std::ostream& os) { write_verification_csv(os, {row}, {probe}); });
        if (probe.breach && a.fail_on_breach) return kFail;
        return row.all_pass() ? kOk : kFail;
    }
    SweepConfig config = SweepConfig::defaults();
    config.random_instances = a.random;
    config.seed = a.seed;
    config.include_named_families = !a.no_named;
    config.cap = a.cap;
    std::map<std::string, double> history;
    if (!a.history.empty()) {
        const json h = read_json_file(a.history);
        if (!h.is_object()) throw Error(Error::Kind::malformed_input, "history file must map family to ratio");
        for (const auto& [k, v] : h.items()) history[k] = v.get<double>();
    }
    const SweepResult s = run_verification_sweep(config, history);
    if (!a.csv.empty()) with_output(a.csv, [&](std::ostream& os) { write_verification_csv(os, s.rows, s.probes); });
    if (!a.probe_table.empty()) with_output(a.probe_table, [&](std::ostream& os) { write_probe_table(os, s.probe_table); });
    print_summary(s);
    bool breach = false;
    for (const auto& t : s.probe_table) breach = breach || t.exceeds_history;
    for (const auto& p : s.probes) breach = breach || p.breach;
    if (s.failures > 0) return kFail;
    return breach && a.fail_on_breach ? kFail : kOk;
}

int run_bench(const std::string& config_path, int jobs, const std::string& output) {
    ExperimentConfig config = ExperimentConfig::from_json(read_json_file(config_path));
    if (jobs > 0) config.jobs = jobs;
    const auto rows = power_experiment(config);
    const std::string out = output.empty() ? config.output : output;
    with_output(out, [&](std::ostream& os) { write_power_csv(os, rows); });
    for (const auto& r : rows) {
        if (!r.pass) return kFail;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monotone rearrangement, distances and monotonicity testers on hypergrids"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "Write an instance file");
    g->add_option("--family", gen.family, "step, linear, hole, slope_step, walsh, random")->required();
    g->add_option("--n", gen.n, "dimension");
    g->add_option("--m", gen.m, "side length");
    g->add_option("--axis", gen.axis, "slope-step axis (1-based)");
    g->add_option("--z", gen.z, "slope-step location");
    g->add_option("--epsilon", gen.epsilon, "target distance (hole) or step height (continuous slope step)");
    g->add_option("--ell", gen.ell, "Walsh instances live on [2^ell]^n");
    g->add_option("--i", gen.i, "Walsh step orders, one per axis");
    g->add_option("--S", gen.S, "Walsh bit sets, e.g. \"1,2;3\"");
    g->add_option("--dims", gen.dims, "box dimensions (random)");
    g->add_option("--L", gen.L, "Lipschitz constant (random)");
    g->add_option("--seed", gen.seed, "seed (random)");
    g->add_option("--cap", gen.cap, "largest N for exact certification");
    g->add_flag("--continuous", gen.continuous, "piecewise-linear slope step on [0,1]");
    g->add_option("-o,--output", gen.output, "output file (default stdout)");

    std::string r_in, r_out;
    std::vector<int> r_order;
    auto* r = app.add_subcommand("rearrange", "Compute f* and the rearrangement gap");
    r->add_option("input", r_in, "grid file")->required();
    r->add_option("-o,--output", r_out, "write f* here");
    r->add_option("--order", r_order, "axis order (permutation of 1..n)");

    std::string d_in, d_method = "exact", d_report;
    Index d_cap = kDefaultExactCap;
    auto* d = app.add_subcommand("distance", "L1 distance to monotone");
    d->add_option("input", d_in, "grid file")->required();
    d->add_option("--method", d_method, "exact, brute or bounds")->check(CLI::IsMember({"exact", "brute", "bounds"}));
    d->add_option("--cap", d_cap, "largest N for the exact method");
    d->add_option("--report", d_report, "write the full report (thresholds and f*) as JSON");

    std::string t_in, t_tester, t_id;
    double t_L = 1.0, t_eps = 0.1;
    std::uint64_t t_seed = kDefaultSeed;
    bool t_cont = false, t_header = false;
    auto* t = app.add_subcommand("test", "Run one monotonicity tester");
    t->add_option("input", t_in, "grid or piecewise-linear file")->required();
    t->add_option("--tester", t_tester, "pd, l1-line, l1-line-continuous or ekkrv")
        ->required()
        ->check(CLI::IsMember({"pd", "l1-line", "l1-line-continuous", "ekkrv"}));
    t->add_option("--L", t_L, "Lipschitz constant");
    t->add_option("--epsilon", t_eps, "proximity parameter");
    t->add_option("--seed", t_seed, "seed");
    t->add_option("--id", t_id, "instance id for the CSV row (default: the file path)");
    t->add_flag("--continuous", t_cont, "pd on the multilinear view of a grid file");
    t->add_flag("--header", t_header, "print the CSV header first");

    VerifyArgs v;
    auto* vs = app.add_subcommand("verify", "Check the rearrangement inequalities");
    vs->add_option("input", v.input, "grid file");
    vs->add_flag("--sweep", v.sweep, "run the default verification sweep");
    vs->add_option("--random", v.random, "random instances in the sweep");
    vs->add_option("--seed", v.seed, "sweep seed");
    vs->add_flag("--no-named", v.no_named, "skip the named families");
    vs->add_option("--history", v.history, "JSON map family -> historical max probe ratio");
    vs->add_option("--csv", v.csv, "per-instance CSV");
    vs->add_option("--probe-table", v.probe_table, "probe table CSV");
    vs->add_option("--cap", v.cap, "largest N for exact d1");
    vs->add_flag("--fail-on-conjecture-breach", v.fail_on_breach, "exit 1 when a probe ratio exceeds its history");

    std::string b_config, b_out;
    int b_jobs = 0;
    auto* b = app.add_subcommand("bench", "Run a power experiment");
    b->add_option("config", b_config, "experiment config file")->required();
    b->add_option("--jobs", b_jobs, "threads")->check(CLI::NonNegativeNumber);
    b->add_option("-o,--output", b_out, "CSV output (default: config 'output' or stdout)");

    int bv_n = 1;
    double bv_r = 1.0;
    std::string bv_mode = "discrete";
    auto* bv = app.add_subcommand("ballvol", "Volume of the l1 ball");
    bv->add_option("--n", bv_n, "dimension")->required();
    bv->add_option("--r", bv_r, "radius")->required();
    bv->add_option("--mode", bv_mode, "discrete or continuous")->check(CLI::IsMember({"discrete", "continuous"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    if (!b->parsed()) omp_set_num_threads(1);

    try {
        if (g->parsed()) return run_generate(gen);
        if (r->parsed()) return run_rearrange(r_in, r_out, r_order);
        if (d->parsed()) return run_distance(d_in, d_method, d_cap, d_report);
        if (t->parsed()) return run_test(t_in, t_tester, t_L, t_eps, t_seed, t_cont, t_header, t_id);
        if (vs->parsed()) return run_verify(v);
        if (b->parsed()) return run_bench(b_config, b_jobs, b_out);
        if (bv->parsed()) {
            const BallMode mode = bv_mode == "continuous" ? BallMode::continuous : BallMode::discrete;
            std::cout << format_number(l1_ball_volume(bv_n, bv_r, mode)) << '\n';
            return kOk;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

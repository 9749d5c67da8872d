#pragma once

#include "monolab/distance.hpp"
#include "monolab/grid.hpp"
#include "monolab/instances.hpp"
#include "monolab/testers.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace monolab {

/// lhs <= rhs with relative tolerance 1e-9 (plus 1e-12 absolute near zero).
struct Check {
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = true;

    double slack() const { return rhs - lhs; }
    static Check le(double lhs, double rhs);
};

struct VerificationRow {
    std::string instance_id;
    std::string family;
    Index points = 0;
    bool exact = false;   // d1 below is exact; otherwise a certified lower bound
    double d1 = 0.0;
    double gap = 0.0;     // E|f - f*|
    double mass_l1 = 0.0; // sum_i m_i * axis mass_i
    double mass_l2 = 0.0; // E ||directed gradient||_2
    std::vector<double> axis_mass;
    std::vector<double> axis_cost;   // E|f - R_i f|
    std::vector<double> stage_gaps;  // telescoping stages of f*

    Check box_inequality;    // gap <= 2 * mass_l1
    Check optimality_lower;  // d1 <= gap
    Check optimality_upper;  // gap <= 2 * d1 (exact mode)
    Check per_axis;          // worst of E|f - R_i f| <= 2 m_i mass_i over axes
    Check telescoping;       // gap <= sum of stage gaps
    bool star_monotone = true;
    bool star_equimeasurable = true;

    bool all_pass() const;
};

/// Computes every quantity for one function and checks the proved
/// inequalities. Exact d1 when N <= cap, otherwise bound mode.
VerificationRow verify_inequalities(const GridFunction& f, std::string instance_id = {}, std::string family = {},
                                    Index cap = kDefaultExactCap);

struct ProbeResult {
    double ratio = 0.0;        // d1 / E||directed gradient||_2 (0/0 := 0)
    double ratio_upper = 0.0;  // same with the upper end of the d1 bracket
    double d1 = 0.0;
    double mass_l2 = 0.0;
    bool exact = false;
    bool breach = false;       // positive distance with zero gradient mass
};

ProbeResult conjecture_probe(const GridFunction& f, Index cap = kDefaultExactCap);

struct ProbeTableRow {
    std::string family;
    std::uint64_t count = 0;
    double max_ratio = 0.0;
    std::string argmax_id;
    std::optional<double> historical_max;
    bool exceeds_history = false;
};

struct SweepConfig {
    std::vector<std::vector<Index>> dims;
    std::vector<double> Ls{1.0, 3.0};
    std::uint64_t random_instances = 1000;
    std::uint64_t seed = 20240601;
    bool include_named_families = true;
    Index cap = kDefaultExactCap;

    static SweepConfig defaults();
};

struct SweepResult {
    std::vector<VerificationRow> rows;
    std::vector<ProbeResult> probes;  // aligned with rows
    std::vector<ProbeTableRow> probe_table;
    std::uint64_t failures = 0;
};

/// Random Lipschitz instances cycling over dims x L, plus the named families.
/// `history` maps family -> previously observed max probe ratio.
SweepResult run_verification_sweep(const SweepConfig& config, const std::map<std::string, double>& history = {});

struct PowerCell {
    std::string family;  // slope_step, slope_step_continuous, hole, walsh_step, monotone
    std::string tester;  // pd, l1-line, l1-line-continuous, ekkrv
    nlohmann::json params = nlohmann::json::object();
    double L = 1.0;
    double epsilon = 0.1;
};

struct ExperimentConfig {
    std::vector<PowerCell> cells;
    std::uint64_t trials = 400;
    std::uint64_t seed = 1;
    int jobs = 0;  // 0: OpenMP default
    std::string output;

    /// Accepts "epsilon"/"L" as numbers or lists; lists expand into cells.
    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    std::string hash() const;  // FNV-1a of the canonical JSON
};

struct PowerRow {
    std::string config_hash;
    std::size_t cell = 0;
    std::string family;
    std::string tester;
    std::size_t n = 0;
    Index m = 0;
    double L = 0.0;
    double epsilon = 0.0;
    bool control = false;           // monotone control: must never reject
    std::optional<double> certified_d1_lb;
    std::string certificate;
    std::uint64_t trials = 0;
    std::uint64_t rejections = 0;
    double rejection_rate = 0.0;
    double mean_queries = 0.0;
    std::uint64_t max_queries = 0;
    std::uint64_t budget = 0;
    double threshold = 0.0;  // 2/3 - 3 sigma for far cells, 0 rejections for controls
    bool pass = false;
};

/// Runs every cell; throws Error{uncertified} for a far cell whose
/// certificate does not exceed epsilon.
std::vector<PowerRow> power_experiment(const ExperimentConfig& config);

/// 2/3 minus three binomial standard deviations at p = 2/3.
double power_threshold(std::uint64_t trials);

void write_verification_csv(std::ostream& os, const std::vector<VerificationRow>& rows,
                            const std::vector<ProbeResult>& probes);
void write_probe_table(std::ostream& os, const std::vector<ProbeTableRow>& table);
void write_power_csv(std::ostream& os, const std::vector<PowerRow>& rows);

}  // namespace monolab

#include "monolab/io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

namespace monolab {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(Error::Kind::malformed_input, what); }

std::vector<double> number_list(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) malformed(std::string("missing list field '") + key + "'");
    std::vector<double> out;
    out.reserve(j.at(key).size());
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) malformed(std::string("non-numeric entry in '") + key + "'");
        out.push_back(v.get<double>());
    }
    return out;
}

void attach_meta(json& j, const json& meta) {
    if (!meta.is_null()) j["meta"] = meta;
}

std::string witness_text(const Witness& w) {
    struct Visitor {
        std::string operator()(const GridEdgeWitness& e) const {
            std::string s = "x=(";
            for (std::size_t k = 0; k < e.x.coords.size(); ++k) {
                s += (k ? " " : "") + std::to_string(e.x.coords[k]);
            }
            return s + ") axis=" + std::to_string(e.axis) + " d=" + format_number(e.derivative);
        }
        std::string operator()(const BoxWitness& e) const {
            std::string s = "x=(";
            for (std::size_t k = 0; k < e.x.size(); ++k) s += (k ? " " : "") + format_number(e.x[k]);
            return s + ") axis=" + std::to_string(e.axis) + " d=" + format_number(e.derivative);
        }
        std::string operator()(const PairWitness& p) const {
            return "pair=(" + std::to_string(p.lower) + " " + std::to_string(p.upper) + ") f=(" +
                   format_number(p.f_lower) + " " + format_number(p.f_upper) + ")";
        }
    };
    return std::visit(Visitor{}, w);
}

}  // namespace

json grid_to_json(const GridFunction& f, const json& meta) {
    json j;
    j["dims"] = f.dims();
    j["values"] = std::vector<double>(f.values().begin(), f.values().end());
    attach_meta(j, meta);
    return j;
}

GridFunction grid_from_json(const json& j) {
    if (!j.is_object()) malformed("grid file must hold an object");
    if (!j.contains("dims") || !j.at("dims").is_array()) malformed("missing list field 'dims'");
    std::vector<Index> dims;
    for (const auto& d : j.at("dims")) {
        if (!d.is_number_integer()) malformed("'dims' entries must be integers");
        dims.push_back(d.get<Index>());
    }
    return {std::move(dims), number_list(j, "values")};
}

json pwl_to_json(const PwlFunction& f, const json& meta) {
    json j;
    j["breakpoints"] = std::vector<double>(f.breakpoints().begin(), f.breakpoints().end());
    j["values"] = std::vector<double>(f.values().begin(), f.values().end());
    attach_meta(j, meta);
    return j;
}

PwlFunction pwl_from_json(const json& j) {
    if (!j.is_object()) malformed("piecewise-linear file must hold an object");
    return {number_list(j, "breakpoints"), number_list(j, "values")};
}

json instance_to_json(const Instance& inst, const json& meta) {
    if (const auto* g = std::get_if<GridFunction>(&inst)) return grid_to_json(*g, meta);
    return pwl_to_json(std::get<PwlFunction>(inst), meta);
}

Instance instance_from_json(const json& j) {
    if (j.is_object() && j.contains("breakpoints")) return pwl_from_json(j);
    return grid_from_json(j);
}

json spec_to_json(const InstanceSpec& spec) {
    json j;
    j["family"] = to_string(spec.family);
    j["params"] = spec.params;
    if (spec.seed) j["seed"] = *spec.seed;
    if (spec.certified_d1_lb) j["certified_d1_lb"] = *spec.certified_d1_lb;
    if (!spec.certificate.empty()) j["certificate"] = spec.certificate;
    return j;
}

InstanceSpec spec_from_json(const json& j) {
    try {
        InstanceSpec spec{family_from_string(j.at("family").get<std::string>()), j.value("params", json::object()),
                          std::nullopt, std::nullopt, j.value("certificate", std::string())};
        if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("certified_d1_lb")) spec.certified_d1_lb = j.at("certified_d1_lb").get<double>();
        return spec;
    } catch (const json::exception& e) {
        malformed(std::string("instance spec: ") + e.what());
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) malformed("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        malformed("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Error::Kind::invalid_argument, "cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

json distance_report_to_json(const DistanceReport& r) {
    json j;
    j["method"] = r.method == DistanceMethod::threshold_matching ? "threshold_matching" : "brute_force";
    j["exact_d1"] = r.exact_d1;
    j["thresholds"] = json::array();
    for (const auto& t : r.thresholds) {
        j["thresholds"].push_back({{"level", t.level}, {"gap", t.gap}, {"flips", t.flips}});
    }
    j["witness"] = grid_to_json(r.witness);
    return j;
}

std::string format_number(double x) { return fmt::format("{:.12g}", x); }

std::string test_report_csv_header() { return "instance,tester,seed,params,verdict,queries_used"; }

std::string to_csv_row(const TestReport& r, const std::string& instance_id) {
    std::ostringstream params;
    params << "L=" << format_number(r.params.L) << ";epsilon=" << format_number(r.params.epsilon)
           << ";budget=" << r.budget << ";rounds=" << r.params.rounds;
    if (r.params.m_prime) params << ";m_prime=" << *r.params.m_prime;
    if (r.params.epsilon_prime) params << ";epsilon_prime=" << format_number(*r.params.epsilon_prime);
    if (r.params.exhaustive) params << ";exhaustive=1";
    if (r.params.trivial) params << ";trivial=1";
    if (r.params.not_in_class) params << ";not_in_class=1";
    return instance_id + "," + r.tester + "," + std::to_string(r.seed) + "," + params.str() + "," +
           to_string(r.verdict) + "," + std::to_string(r.queries_used);
}

json test_report_to_json(const TestReport& r) {
    json j;
    j["tester"] = r.tester;
    j["verdict"] = to_string(r.verdict);
    j["queries_used"] = r.queries_used;
    j["budget"] = r.budget;
    j["seed"] = r.seed;
    json p;
    p["L"] = r.params.L;
    p["epsilon"] = r.params.epsilon;
    p["rounds"] = r.params.rounds;
    if (r.params.m_prime) p["m_prime"] = *r.params.m_prime;
    if (r.params.epsilon_prime) p["epsilon_prime"] = *r.params.epsilon_prime;
    p["exhaustive"] = r.params.exhaustive;
    p["trivial"] = r.params.trivial;
    p["not_in_class"] = r.params.not_in_class;
    if (!r.params.line_tester.empty()) p["line_tester"] = r.params.line_tester;
    j["params"] = p;
    if (r.witness) j["witness"] = witness_text(*r.witness);
    return j;
}

}  // namespace monolab

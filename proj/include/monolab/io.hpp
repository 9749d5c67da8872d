#pragma once

#include "monolab/distance.hpp"
#include "monolab/grid.hpp"
#include "monolab/instances.hpp"
#include "monolab/pwl.hpp"
#include "monolab/testers.hpp"

#include <json.hpp>

#include <string>

namespace monolab {

// Grid-function file (.gridfn.json):
//   {"dims": [m_1, ...], "values": [...row-major, last axis fastest...], "meta": {...}}
// Piecewise-linear file (.pwl.json):
//   {"breakpoints": [0, ..., m], "values": [...], "meta": {...}}
// Doubles are written with round-trip precision, so write-then-read is bit-exact.

nlohmann::json grid_to_json(const GridFunction& f, const nlohmann::json& meta = nullptr);
GridFunction grid_from_json(const nlohmann::json& j);

nlohmann::json pwl_to_json(const PwlFunction& f, const nlohmann::json& meta = nullptr);
PwlFunction pwl_from_json(const nlohmann::json& j);

nlohmann::json instance_to_json(const Instance& inst, const nlohmann::json& meta = nullptr);
/// Grid or piecewise-linear, decided by which fields are present.
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json spec_to_json(const InstanceSpec& spec);
InstanceSpec spec_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

nlohmann::json distance_report_to_json(const DistanceReport& r);

/// 12 significant digits, the CLI's number format.
std::string format_number(double x);

std::string test_report_csv_header();
/// instance id, tester, seed, params (key=value;...), verdict, queries_used.
std::string to_csv_row(const TestReport& r, const std::string& instance_id);

nlohmann::json test_report_to_json(const TestReport& r);

}  // namespace monolab

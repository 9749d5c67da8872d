#include "monolab/instances.hpp"
#include "monolab/io.hpp"
#include "monolab/random.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

using namespace monolab;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("monolab_io_" + name)).string();
}

}  // namespace

TEST(Io, GridRoundTripIsBitExact) {
    const GridFunction f = gen_random_lipschitz({5, 3, 2}, 1.7, 4);
    const std::string path = temp_path("grid.gridfn.json");
    write_json_file(path, grid_to_json(f, {{"note", "x"}}));
    const nlohmann::json j = read_json_file(path);
    const GridFunction g = grid_from_json(j);
    EXPECT_EQ(f, g);
    EXPECT_EQ(j.at("meta").at("note"), "x");
    std::remove(path.c_str());
}

TEST(Io, ThirdsSurviveRoundTrip) {
    const GridFunction f = make_grid({3}, {1.0 / 3.0, 2.0 / 3.0, 0.1});
    EXPECT_EQ(grid_from_json(nlohmann::json::parse(grid_to_json(f).dump())), f);
}

TEST(Io, PwlRoundTrip) {
    const PwlFunction g = gen_slope_step_continuous(1.0 / 6.0, 0.4);
    const nlohmann::json j = nlohmann::json::parse(pwl_to_json(g).dump());
    EXPECT_EQ(pwl_from_json(j), g);
    EXPECT_TRUE(std::holds_alternative<PwlFunction>(instance_from_json(j)));
    EXPECT_TRUE(std::holds_alternative<GridFunction>(instance_from_json(grid_to_json(make_grid({1}, {0})))));
}

TEST(Io, MalformedInputs) {
    const auto expect_malformed = [](const nlohmann::json& j) {
        try {
            grid_from_json(j);
            ADD_FAILURE() << j.dump();
        } catch (const Error& e) {
            EXPECT_TRUE(e.kind() == Error::Kind::malformed_input || e.kind() == Error::Kind::dimension_mismatch ||
                        e.kind() == Error::Kind::invalid_argument)
                << j.dump();
        }
    };
    expect_malformed(nlohmann::json::array());
    expect_malformed({{"values", {1, 2}}});
    expect_malformed({{"dims", {2}}});
    expect_malformed({{"dims", {2}}, {"values", {1, "a"}}});
    expect_malformed({{"dims", {1.5}}, {"values", {1}}});
    expect_malformed({{"dims", {3}}, {"values", {1, 2}}});
    EXPECT_THROW(read_json_file(temp_path("does_not_exist.json")), Error);
}

TEST(Io, SpecRoundTrip) {
    const HoleInstance h = gen_hole(2, 16, 0.05);
    const InstanceSpec back = spec_from_json(nlohmann::json::parse(spec_to_json(h.spec).dump()));
    EXPECT_EQ(back.family, h.spec.family);
    EXPECT_EQ(back.params, h.spec.params);
    EXPECT_EQ(back.certified_d1_lb, h.spec.certified_d1_lb);
    EXPECT_EQ(back.certificate, h.spec.certificate);
    EXPECT_EQ(std::get<GridFunction>(regenerate(back)), h.f);
    EXPECT_THROW(spec_from_json({{"params", {}}}), Error);
}

TEST(Io, NumberFormatAndCsvRow) {
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_number(0.5), "0.5");
    EXPECT_EQ(format_number(2.0), "2");
    TestReport r;
    r.tester = "pd";
    r.seed = 7;
    r.budget = 18;
    r.queries_used = 18;
    r.params.L = 1.0;
    r.params.epsilon = 0.5;
    r.params.rounds = 18;
    EXPECT_EQ(test_report_csv_header(), "instance,tester,seed,params,verdict,queries_used");
    EXPECT_EQ(to_csv_row(r, "mono"), "mono,pd,7,L=1;epsilon=0.5;budget=18;rounds=18,accept,18");
}

TEST(Io, DistanceReportJson) {
    const DistanceReport r = l1_distance_exact(make_grid({4}, {1, 1, 0, 0}));
    const nlohmann::json j = distance_report_to_json(r);
    EXPECT_EQ(j.at("exact_d1"), 0.5);
    ASSERT_EQ(j.at("thresholds").size(), 1u);
    EXPECT_EQ(j.at("thresholds")[0].at("flips"), 2);
    EXPECT_EQ(grid_from_json(j.at("witness")), r.witness);
}

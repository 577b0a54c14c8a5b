#include "gravshift/cli.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

using gravshift::cli::run;

namespace {

const std::string kData = GRAVSHIFT_TEST_DATA_DIR;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "gravshift");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> cells;
    std::stringstream in(line);
    for (std::string cell; std::getline(in, cell, sep);) {
        cells.push_back(cell);
    }
    return cells;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream in(text);
    for (std::string line; std::getline(in, line);) {
        rows.push_back(split(line, ','));
    }
    return rows;
}

}  // namespace

TEST(Cli, Constants) {
    const auto r = invoke({"constants"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"G", "c", "h", "hbar", "alpha", "m_electron", "eV"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["c"].get<double>(), 299792458.0);
    EXPECT_EQ(j["G"].get<double>(), 6.67430e-11);
}

TEST(Cli, ShiftTower) {
    const auto r = invoke({"shift", "--body", "earth", "--emit-alt", "0", "--obs-alt", "22.5", "--model", "emitter",
                           "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j.size(), 1u);
    EXPECT_EQ(j[0]["model"], "EmitterMassDefect");
    EXPECT_NEAR(j[0]["delta_nu_over_nu"].get<double>(), -2.4584672944e-15, 1e-24);
    EXPECT_EQ(j[0]["shift"], "red");
}

TEST(Cli, ShiftEqualAltitudesIsZero) {
    const auto r = invoke({"shift", "--body", "earth", "--emit-alt", "100", "--obs-alt", "100", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j.size(), 3u);
    for (const auto& row : j) {
        EXPECT_EQ(row["delta_nu_over_nu"].get<double>(), 0.0);
        EXPECT_EQ(row["shift"], "none");
    }
}

TEST(Cli, ShiftMultiBodyPoints) {
    const auto r = invoke({"shift", "--emit", "sun:r=6.957e8,earth:r=1.495978707e11", "--obs",
                           "sun:r=1.495978707e11,earth:r=6.371e6", "--model", "double", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j[0]["delta_nu_over_nu"].get<double>(), 2 * -2.112031599903241e-6, 1e-17);
}

TEST(Cli, JsonCsvParity) {
    const std::vector<std::string> base{"shift", "--body", "sun", "--emit-alt", "0", "--obs-r-m", "1.495978707e11"};
    auto json_args = base, csv_args = base;
    json_args.insert(json_args.end(), {"--format", "json"});
    csv_args.insert(csv_args.end(), {"--format", "csv"});
    const auto j = nlohmann::json::parse(invoke(json_args).out);
    const auto rows = csv_rows(invoke(csv_args).out);
    ASSERT_EQ(rows.size(), j.size() + 1);
    ASSERT_EQ(rows[0][3], "delta_nu_over_nu");
    for (std::size_t i = 0; i < j.size(); ++i) {
        const double a = j[i]["delta_nu_over_nu"].get<double>();
        const double b = std::stod(rows[i + 1][3]);
        EXPECT_LE(std::abs(a - b), 1e-15 * std::abs(a));
        EXPECT_EQ(rows[i + 1][0], j[i]["model"]);
    }
}

TEST(Cli, Deterministic) {
    const std::vector<std::string> args{"photon", "--body", "sun", "--sweep-from-radii", "2", "--sweep-to-radii",
                                        "20", "--sweep-count", "6", "--format", "csv"};
    EXPECT_EQ(invoke(args).out, invoke(args).out);
    const std::vector<std::string> exp{"experiment", "--report", "json"};
    EXPECT_EQ(invoke(exp).out, invoke(exp).out);
}

TEST(Cli, ExperimentVerdict) {
    const auto r = invoke({"experiment", "--registry", kData + "/experiments.json", "--report", "json"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["reports"].size(), 9u);
    EXPECT_TRUE(j["double_effect_excluded"].get<bool>());

    const auto text = invoke({"experiment"});
    EXPECT_EQ(text.code, 0);
    EXPECT_NE(text.out.find("DoubleEffect: Excluded"), std::string::npos);

    // a tiny threshold excludes the single-shift models too
    EXPECT_EQ(invoke({"experiment", "--threshold", "0.1"}).code, 1);
}

TEST(Cli, SpectrumCsv) {
    const auto r = invoke({"spectrum", "--z", "1", "--n-max", "2", "--point", "earth:0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"state", "E_eV", "nu_Hz", "shift_fractional"}));
    EXPECT_EQ(rows[1][0], "Z=1 n=1 j=1/2");
    EXPECT_NEAR(std::stod(rows[1][1]), 13.606, 13.606 * 1e-4);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_NEAR(std::stod(rows[i][3]), -6.961311310505493e-10, 1e-22);
    }
    const auto one = invoke({"spectrum", "--state", "1,1/2", "--format", "json"});
    ASSERT_EQ(one.code, 0) << one.err;
    EXPECT_EQ(nlohmann::json::parse(one.out)[0]["state"], "Z=1 n=2 j=1/2");
}

TEST(Cli, PhotonKeysAndSweepOrder) {
    const auto r = invoke({"photon", "--body", "sun", "--b-radii", "10", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"impact_parameter_m", "deflection_rad", "deflection_arcsec", "transit_time_s",
                            "time_excess_s", "closest_approach_m", "deflection_error_estimate_rad"}) {
        EXPECT_TRUE(j.contains(key) || j[0].contains(key)) << key;
    }
    const auto sweep = nlohmann::json::parse(invoke({"photon", "--body", "sun", "--sweep-from-radii", "2",
                                                     "--sweep-to-radii", "10", "--sweep-count", "5", "--format",
                                                     "json"})
                                                 .out);
    ASSERT_EQ(sweep.size(), 5u);
    for (std::size_t i = 1; i < sweep.size(); ++i) {
        EXPECT_GT(sweep[i]["impact_parameter_m"].get<double>(), sweep[i - 1]["impact_parameter_m"].get<double>());
        EXPECT_LT(sweep[i]["deflection_rad"].get<double>(), sweep[i - 1]["deflection_rad"].get<double>());
    }
    const auto limb = invoke({"photon", "--body", "sun", "--b-m", "6.9570000696e8", "--periapsis", "--format", "json"});
    ASSERT_EQ(limb.code, 0) << limb.err;
}

TEST(Cli, ErrorsAndExitCodes) {
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"nonsense"}).code, 2);
    const auto unknown = invoke({"shift", "--bogus"});
    EXPECT_EQ(unknown.code, 2);
    EXPECT_TRUE(unknown.out.empty());
    EXPECT_EQ(invoke({"shift", "--body", "earth"}).code, 2);
    EXPECT_EQ(invoke({"shift", "--body", "earth", "--emit-alt", "0", "--obs-alt", "1", "--format", "xml"}).code, 2);

    const auto impact = invoke({"photon", "--body", "sun", "--b-radii", "0.5"});
    EXPECT_EQ(impact.code, 1);
    EXPECT_TRUE(impact.out.empty());
    EXPECT_FALSE(impact.err.empty());
    EXPECT_EQ(invoke({"shift", "--body", "earth", "--emit-alt", "-1e7", "--obs-alt", "0"}).code, 1);
    EXPECT_EQ(invoke({"shift", "--body", "pluto", "--emit-alt", "0", "--obs-alt", "1"}).code, 1);
    EXPECT_EQ(invoke({"photon", "--body", "sun", "--b-radii", "10", "--tolerance", "1e-3"}).code, 1);
    EXPECT_EQ(invoke({"experiment", "--registry", "/nonexistent.json"}).code, 1);
    EXPECT_EQ(invoke({"--help"}).code, 0);
}

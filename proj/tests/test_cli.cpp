#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "app.hpp"
#include "shakerbeam/shakerbeam.h"

namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = fs::path(SHAKERBEAM_SOURCE_DIR) / "configs";

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("shakerbeam_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int run(std::vector<std::string> args) {
        args.push_back("--out");
        args.push_back(dir_.string());
        std::ostringstream out, err;
        const int code = sbcli::run_cli(args, out, err);
        stdout_ = out.str();
        stderr_ = err.str();
        return code;
    }

    fs::path dir_;
    std::string stdout_, stderr_;
};

using Table = std::vector<std::map<std::string, std::string>>;

Table read_csv(const fs::path& path) {
    std::ifstream in(path);
    std::string line;
    std::vector<std::string> header;
    Table rows;
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cell;
        std::istringstream ss(s);
        while (std::getline(ss, cell, ',')) out.push_back(cell);
        if (!s.empty() && s.back() == ',') out.emplace_back();
        return out;
    };
    if (!std::getline(in, line)) return rows;
    header = split(line);
    while (std::getline(in, line)) {
        const auto cells = split(line);
        EXPECT_EQ(cells.size(), header.size()) << line;
        std::map<std::string, std::string> row;
        for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) row[header[i]] = cells[i];
        rows.push_back(row);
    }
    return rows;
}

sb_params* reference_params() {
    sb_params* p = nullptr;
    EXPECT_EQ(sb_params_reference(&p), SB_OK);
    return p;
}

}  // namespace

TEST_F(Cli, RootsDefaultConfig) {
    ASSERT_EQ(run({"roots", "--quiet"}), 0) << stderr_;
    const auto rows = read_csv(dir_ / "roots.csv");
    ASSERT_EQ(rows.size(), 24u);
    int exact = 0;
    sb_params* p = reference_params();
    for (const auto& row : rows) {
        if (row.at("mu").empty()) continue;
        ++exact;
        double v = 0.0;
        ASSERT_EQ(sb_phi(p, std::stod(row.at("mu")), &v), SB_OK);
        EXPECT_LE(std::abs(v), 1e-8) << row.at("mu");
    }
    sb_params_destroy(p);
    EXPECT_EQ(exact, 23);
    EXPECT_EQ(rows[0].at("pairing_status"), "truncated_only");
    EXPECT_TRUE(rows[0].at("mu").empty());
    EXPECT_NEAR(std::stod(rows[0].at("mu_bar")), 0.9949, 1e-3);
    EXPECT_NEAR(std::stod(rows[1].at("mu")), 2.552, 5e-4);
    EXPECT_NEAR(std::stod(rows[1].at("mu_bar")), 2.616, 5e-4);
    EXPECT_NEAR(std::stod(rows[1].at("nu_hz")), 4.537, 5e-3);
    EXPECT_NEAR(std::stod(rows[1].at("nu_bar_hz")), 4.767, 5e-3);
    EXPECT_EQ(rows[3].at("pairing_status"), "exact_only");
    EXPECT_TRUE(rows[3].at("mu_bar").empty());
}

TEST_F(Cli, RepeatRunsAreByteIdentical) {
    ASSERT_EQ(run({"roots", "--quiet"}), 0);
    std::ifstream a(dir_ / "roots.csv");
    const std::string first((std::istreambuf_iterator<char>(a)), {});
    ASSERT_EQ(run({"roots", "--quiet", "--threads", "3"}), 0);
    std::ifstream b(dir_ / "roots.csv");
    const std::string second((std::istreambuf_iterator<char>(b)), {});
    EXPECT_EQ(first, second);
}

TEST_F(Cli, LowWindowHasOneTruncatedRow) {
    ASSERT_EQ(run({"roots", "--quiet", "--mu-min", "0.1", "--mu-max", "1.5"}), 0) << stderr_;
    const auto rows = read_csv(dir_ / "roots.csv");
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].at("pairing_status"), "truncated_only");
    EXPECT_NEAR(std::stod(rows[0].at("mu_bar")), 0.9949, 1e-3);
}

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run({"roots", "--quiet", "--mu-min", "0.1", "--mu-max", "0.5"}), 3);
    EXPECT_EQ(run({"roots", "--quiet", "--set", "kappa=7 furlongs"}), 1);
    EXPECT_EQ(run({"roots", "--quiet", "--config", (dir_ / "missing.conf").string()}), 1);
    EXPECT_EQ(run({"roots", "--quiet", "--n-roots", "5", "--mu-max", "20"}), 1);
    EXPECT_EQ(run({"roots", "--quiet", "--l0", "3"}), 1);
    EXPECT_EQ(run({"verify", "--quiet", "--epsilon", "0.8"}), 4);
    EXPECT_EQ(run({"verify", "--quiet"}), 6);
    EXPECT_EQ(run({"verify", "--quiet", "--threshold", "15"}), 0);
    EXPECT_EQ(run({"--help"}), 0);
    EXPECT_EQ(run({"bogus"}), 1);

    // Output directory blocked by a regular file.
    std::ofstream(dir_ / "blocker") << "x";
    std::ostringstream out, err;
    EXPECT_EQ(sbcli::run_cli({"roots", "--quiet", "--out", (dir_ / "blocker" / "sub").string()}, out, err), 2);
}

TEST_F(Cli, VerifyReport) {
    ASSERT_EQ(run({"verify", "--quiet"}), 6);
    std::ifstream in(dir_ / "localization.json");
    const auto j = nlohmann::json::parse(in);
    EXPECT_FALSE(j.at("verdict").get<bool>());
    EXPECT_DOUBLE_EQ(j.at("epsilon").get<double>(), 0.35);
    EXPECT_DOUBLE_EQ(j.at("threshold_M").get<double>(), 10.0);
    ASSERT_EQ(j.at("stray_roots").size(), 1u);
    EXPECT_NEAR(j.at("stray_roots")[0].get<double>(), 14.501, 1e-3);
    int missing = 0;
    for (const auto& p : j.at("pairings")) missing += p.at("status") == "no_exact_root_in_neighborhood";
    EXPECT_EQ(missing, 1);
}

TEST_F(Cli, ModesAreNormalisedAndPinned) {
    ASSERT_EQ(run({"modes", "--quiet", "--modes", "1,2,5"}), 0) << stderr_;
    for (int j : {1, 2, 5}) {
        const auto rows = read_csv(dir_ / ("mode_" + std::to_string(j) + ".csv"));
        ASSERT_EQ(rows.size(), 2001u);
        EXPECT_EQ(std::stod(rows.front().at("u")), 0.0);
        EXPECT_EQ(std::stod(rows.back().at("u")), 0.0);
        EXPECT_EQ(std::stod(rows.back().at("x")), 1.905);
        double trap = 0.0;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const double u0 = std::stod(rows[i - 1].at("u")), u1 = std::stod(rows[i].at("u"));
            trap += 0.5 * (u0 * u0 + u1 * u1) * (std::stod(rows[i].at("x")) - std::stod(rows[i - 1].at("x")));
        }
        EXPECT_NEAR(trap, 1.0, 1e-6) << j;
    }
    EXPECT_TRUE(fs::exists(dir_ / "modes.svg"));
    EXPECT_EQ(run({"modes", "--quiet", "--modes", "40"}), 1);
}

TEST_F(Cli, MidspanConfig) {
    ASSERT_EQ(run({"modes", "--quiet", "--config", (kConfigs / "midspan.conf").string()}), 0) << stderr_;
    EXPECT_TRUE(fs::exists(dir_ / "mode_4.csv"));
}

TEST_F(Cli, GrowthHalfConfigMatchesClosedForm) {
    ASSERT_EQ(run({"growth", "--quiet", "--config", (kConfigs / "half.conf").string()}), 0) << stderr_;
    const auto rows = read_csv(dir_ / "growth.csv");
    ASSERT_GE(rows.size(), 40u);
    int checked = 0;
    for (const auto& row : rows) {
        if (row.at("mu_bar").empty() || row.at("mu_closed_form").empty()) continue;
        EXPECT_NEAR(std::stod(row.at("mu_bar")), std::stod(row.at("mu_closed_form")), 1e-9) << row.at("j");
        ++checked;
    }
    EXPECT_EQ(checked, 40);
    EXPECT_TRUE(fs::exists(dir_ / "growth.svg"));
}

TEST_F(Cli, GrowthSingleRoot) {
    ASSERT_EQ(run({"growth", "--quiet", "--n-roots", "1"}), 0) << stderr_;
    const auto rows = read_csv(dir_ / "growth.csv");
    int exact = 0;
    for (const auto& row : rows) exact += !row.at("mu").empty();
    EXPECT_EQ(exact, 1);
}

TEST_F(Cli, GrowthSlopeIsStable) {
    ASSERT_EQ(run({"growth", "--quiet", "--n-roots", "60"}), 0) << stderr_;
    std::vector<double> mu;
    for (const auto& row : read_csv(dir_ / "growth.csv")) {
        if (!row.at("mu").empty()) mu.push_back(std::stod(row.at("mu")));
    }
    ASSERT_EQ(mu.size(), 60u);
    // Least-squares slope of mu_j over successive windows of ten indices.
    auto slope = [&](std::size_t from) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t k = from; k < from + 10; ++k) {
            const double x = static_cast<double>(k);
            sx += x, sy += mu[k], sxx += x * x, sxy += x * mu[k];
        }
        return (10 * sxy - sx * sy) / (10 * sxx - sx * sx);
    };
    double prev = slope(9);
    EXPECT_GT(prev, 0.0);
    for (std::size_t from = 19; from + 10 <= mu.size(); from += 10) {
        const double s = slope(from);
        EXPECT_NEAR(s / prev, 1.0, 0.15) << from;
        prev = s;
    }
}

TEST_F(Cli, ConfigFileAndOverrides) {
    const auto cfg = dir_ / "run.conf";
    std::ofstream(cfg) << "# test\nkappa = 7 N/mm\nmu_max = 10\n\n";
    ASSERT_EQ(run({"roots", "--quiet", "--config", cfg.string(), "--mu-max", "6"}), 0) << stderr_;
    const auto rows = read_csv(dir_ / "roots.csv");
    for (const auto& row : rows) {
        if (!row.at("mu").empty()) {
            EXPECT_LT(std::stod(row.at("mu")), 6.0);
        }
    }
    std::ofstream(cfg) << "kappa 7\n";
    EXPECT_EQ(run({"roots", "--quiet", "--config", cfg.string()}), 1);
    EXPECT_NE(stderr_.find(":1:"), std::string::npos) << stderr_;
}

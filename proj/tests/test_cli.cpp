#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = riskclaim::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> csv_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    return lines;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "riskclaim_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(Cli, SolveAvar) {
    const auto r = run({"solve", "--measure", "avar:0.75", "--density", "uniform:0,2", "--v", "0.9"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["params"]["beta"].get<double>(), 0.6, 1e-12);
    EXPECT_NEAR(j["risk"].get<double>(), 13.0 / 15.0, 1e-10);
    EXPECT_EQ(j["regime"], "diversified");
}

TEST(Cli, SolveZeroBudget) {
    const auto r = run({"solve", "--measure", "avar:0.75", "--density", "uniform:0,2", "--v", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["payoff"]["tag"], "constant");
    EXPECT_EQ(j["risk"].get<double>(), 0.0);
}

TEST(Cli, SolveTwoLevel) {
    const auto r = run({"solve", "--measure", "rho_k:twolevel:0.6,0.5", "--density", "uniform:0,2", "--v", "0.7"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_GT(json::parse(r.out)["params"]["x_star"].get<double>(), 0.0);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"solve", "--measure", "avar:2", "--density", "uniform:0,2", "--v", "0.5"}).code, 1);
    EXPECT_EQ(run({"solve", "--measure", "avar:0.5", "--density", "uniform:0,2"}).code, 1);
    EXPECT_EQ(run({"solve", "--measure", "avar:0.5", "--density", "uniform:0,2", "--v", "1.5"}).code, 1);
    EXPECT_EQ(run({"solve", "--bogus"}).code, 1);
    EXPECT_EQ(run({}).code, 1);
    const auto bad = run({"solve", "--measure", "avar:0.5", "--density", "uniform:0,x", "--v", "0.5"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("position"), std::string::npos) << bad.err;
    const std::string atoms = std::string("atoms:") + RISKCLAIM_TEST_DATA + "/atoms_example.csv";
    const auto solver = run({"solve", "--measure", "avar:0.5", "--density", atoms, "--v", "0.5"});
    EXPECT_EQ(solver.code, 2) << solver.err;
}

TEST(Cli, CurveCsv) {
    const auto r = run({"curve", "--measure", "avar:0.75", "--density", "uniform:0,2", "--grid", "0:1:11"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto lines = csv_lines(r.out);
    ASSERT_EQ(lines.size(), 12u);
    EXPECT_EQ(lines[0], "v,risk,regime,beta_or_xstar");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream row(lines[i]);
        std::string v, risk, regime;
        std::getline(row, v, ',');
        std::getline(row, risk, ',');
        std::getline(row, regime, ',');
        const double vv = std::stod(v), rr = std::stod(risk);
        const double z = std::sqrt(1.0 - vv);
        const double want = vv <= 0.75 ? (1.0 - z) / 0.75 : 1.0 - (1.0 - vv) / 0.75;
        EXPECT_NEAR(rr, want, 1e-9) << lines[i];
        if (vv > 0.0 && vv < 0.75 - 1e-12) EXPECT_EQ(regime, "classical") << lines[i];
        if (vv > 0.75 + 1e-12 && vv < 1.0) EXPECT_EQ(regime, "diversified") << lines[i];
    }
    const auto check = json::parse(r.err);
    EXPECT_EQ(check["strictly_increasing"], true);
}

TEST(Cli, CurveEndpoints) {
    const auto r = run({"curve", "--measure", "avar:0.75", "--density", "uniform:0,2", "--grid", "0:1:2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto lines = csv_lines(r.out);
    ASSERT_EQ(lines.size(), 3u);
    EXPECT_EQ(lines[1].substr(0, 4), "0,0,");
    EXPECT_EQ(lines[2].substr(0, 4), "1,1,");
}

TEST(Cli, CurveSidecarFile) {
    const auto path = scratch("var_curve.csv");
    const auto r = run({"curve", "--measure", "var:0.25", "--density", "uniform:0,2", "--grid", "0:1:6", "--out",
                        path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(csv_lines(slurp(path)).size(), 7u);
    const auto check = json::parse(slurp(path.string() + ".check.json"));
    EXPECT_EQ(check["convex"], "skipped (non-convex measure)");
}

TEST(Cli, VerifyPassAndFail) {
    const auto pass = run({"verify", "--measure", "avar:0.75", "--density", "uniform:0,2", "--v", "0.9", "--n", "2000"});
    EXPECT_EQ(pass.code, 0) << pass.err;
    EXPECT_LE(json::parse(pass.out)["gap"].get<double>(), 2e-3);
    const auto flat = run({"verify", "--measure", "rho_k:affine:2", "--density", "uniform:0,2", "--v", "0.7"});
    EXPECT_EQ(flat.code, 0) << flat.err;
    EXPECT_NEAR(json::parse(flat.out)["solver_risk"].get<double>(), 0.7, 1e-8);
    const auto fail = run({"verify", "--measure", "avar:0.75", "--density", "uniform:0,2", "--v", "0.5", "--n", "2",
                           "--tol", "1e-6"});
    EXPECT_EQ(fail.code, 3);
    EXPECT_NE(fail.err.find("gap"), std::string::npos);
}

TEST(Cli, VerifyToleranceFromEnvironment) {
    const std::vector<std::string> args{"verify", "--measure", "avar:0.75", "--density", "uniform:0,2",
                                        "--v", "0.5", "--n", "50"};
    ::setenv("RISKCLAIM_TOL", "1e-9", 1);
    const auto strict = run(args);
    ::setenv("RISKCLAIM_TOL", "0.5", 1);
    const auto loose = run(args);
    ::setenv("RISKCLAIM_TOL", "abc", 1);
    const auto broken = run(args);
    ::unsetenv("RISKCLAIM_TOL");
    EXPECT_EQ(strict.code, 3);
    EXPECT_EQ(loose.code, 0);
    EXPECT_EQ(broken.code, 1);
}

TEST(Cli, ConfigFile) {
    const auto path = scratch("solve.json");
    std::ofstream(path) << R"({"measure": "avar:0.75", "density": "uniform:0,2", "v": 0.9})";
    const auto r = run({"solve", "--config", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(json::parse(r.out)["risk"].get<double>(), 13.0 / 15.0, 1e-10);
    const auto override = run({"solve", "--config", path.string(), "--v", "0"});
    EXPECT_EQ(json::parse(override.out)["risk"].get<double>(), 0.0);

    const auto bad = scratch("bad.json");
    std::ofstream(bad) << R"({"measure": "avar:0.75", "colour": "red"})";
    EXPECT_EQ(run({"solve", "--config", bad.string()}).code, 1);
}

TEST(Cli, Inspect) {
    const auto r = run({"inspect", "--density", "uniform:0,3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["mean"].get<double>(), 1.5, 1e-15);
    ASSERT_EQ(j["issues"].size(), 1u);
    EXPECT_EQ(j["issues"][0]["code"], "mean");
    EXPECT_EQ(j["table"].size(), 21u);
}

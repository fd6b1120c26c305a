#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace riskclaim::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 1,
    kSolverError = 2,
    kVerificationFailed = 3,
};

struct RunConfig {
    std::string command;
    std::string density;
    std::string measure;
    std::optional<double> v;
    std::string grid;
    double cap = 1.0;
    std::optional<double> tol;
    std::string out;
    std::string format;
    std::size_t n = 2000;
};

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_curve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_inspect(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace riskclaim::cli

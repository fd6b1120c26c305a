#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "riskclaim/errors.hpp"
#include "riskclaim/io.hpp"
#include "riskclaim/oracle.hpp"
#include "riskclaim/solvers.hpp"

namespace riskclaim::cli {

using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double default_verify_tol() {
    if (const char* env = std::getenv("RISKCLAIM_TOL")) {
        char* end = nullptr;
        const double t = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(t > 0.0)) {
            throw ConfigError(std::string("RISKCLAIM_TOL is not a positive number: ") + env);
        }
        return t;
    }
    return 2e-3;
}

std::string format_of(const RunConfig& cfg, const char* fallback) {
    const std::string f = cfg.format.empty() ? fallback : cfg.format;
    if (f != "json" && f != "csv") throw ConfigError("format must be json or csv");
    return f;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    f << text;
}

ProblemSpec problem(const RunConfig& cfg) {
    if (cfg.measure.empty()) throw ConfigError("--measure is required");
    if (cfg.density.empty()) throw ConfigError("--density is required");
    if (!(cfg.cap > 0.0)) throw ConfigError("--K must be positive");
    try {
        return ProblemSpec{parse_measure(cfg.measure), parse_density(cfg.density), cfg.v.value_or(0.0), cfg.cap, {}};
    } catch (const SpecError& e) {
        throw ConfigError(std::string("invalid spec: ") + e.what());
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

double budget(const RunConfig& cfg) {
    if (!cfg.v) throw ConfigError("--v is required");
    if (!(*cfg.v >= 0.0 && *cfg.v <= cfg.cap)) throw ConfigError("--v must lie in [0, K]");
    return *cfg.v;
}

double beta_or_xstar(const MeasureSpec& m, const Solution& s) {
    const char* key = "beta";
    if (m.kind == MeasureSpec::Kind::RhoK) key = "x_star";
    if (m.kind == MeasureSpec::Kind::Shifted) key = "alpha";
    if (m.kind == MeasureSpec::Kind::Var) key = "r";
    auto it = s.params.find(key);
    return it == s.params.end() ? 0.0 : it->second;
}

const char* kCurveHeader = "v,risk,regime,beta_or_xstar\n";

void merge_config(const std::string& path, RunConfig& cfg, const CLI::App& sub) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError(path + ": expected a JSON object");
    auto given = [&](const char* flag) {
        const auto* opt = sub.get_option_no_throw(flag);
        return opt != nullptr && opt->count() > 0;
    };
    try {
        for (const auto& [key, val] : j.items()) {
            if (key == "measure") { if (!given("--measure")) cfg.measure = val.get<std::string>(); }
            else if (key == "density") { if (!given("--density")) cfg.density = val.get<std::string>(); }
            else if (key == "v") { if (!given("--v")) cfg.v = val.get<double>(); }
            else if (key == "grid") { if (!given("--grid")) cfg.grid = val.get<std::string>(); }
            else if (key == "K") { if (!given("--K")) cfg.cap = val.get<double>(); }
            else if (key == "tol") { if (!given("--tol")) cfg.tol = val.get<double>(); }
            else if (key == "out") { if (!given("--out")) cfg.out = val.get<std::string>(); }
            else if (key == "format") { if (!given("--format")) cfg.format = val.get<std::string>(); }
            else if (key == "n") { if (!given("--n")) cfg.n = val.get<std::size_t>(); }
            else throw ConfigError(path + ": unknown key '" + key + "'");
        }
    } catch (const json::type_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const SpecError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const Error& e) {
        err << "solver error: " << e.what() << "\n";
        return kSolverError;
    } catch (const std::exception& e) {
        err << "solver error: " << e.what() << "\n";
        return kSolverError;
    }
}

}  // namespace

int run_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        ProblemSpec spec = problem(cfg);
        spec.v = budget(cfg);
        const std::string fmt = format_of(cfg, "json");
        const Solution s = solve(spec);
        if (fmt == "json") {
            emit(cfg.out, to_json(s, cfg.density).dump(2) + "\n", out);
        } else {
            emit(cfg.out, std::string(kCurveHeader) + format_number(s.budget) + "," + format_number(s.risk) + "," +
                              to_string(s.regime) + "," + format_number(beta_or_xstar(spec.measure, s)) + "\n",
                 out);
        }
        return int(kOk);
    });
}

int run_curve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        ProblemSpec spec = problem(cfg);
        if (cfg.grid.empty()) throw ConfigError("--grid is required");
        std::vector<double> grid;
        try {
            grid = parse_grid(cfg.grid);
        } catch (const SpecError& e) {
            throw ConfigError(std::string("invalid grid: ") + e.what());
        }
        if (grid.front() < 0.0 || grid.back() > cfg.cap) throw ConfigError("grid must lie in [0, K]");
        const std::string fmt = format_of(cfg, "csv");
        const Curve c = risk_curve(spec, grid);
        const json check = to_json(c.check);
        if (fmt == "csv") {
            std::ostringstream os;
            os << kCurveHeader;
            for (const auto& p : c.points) {
                if (p.ok) {
                    os << format_number(p.v) << "," << format_number(p.risk) << "," << to_string(p.regime) << ","
                       << format_number(p.beta_or_xstar) << "\n";
                } else {
                    os << format_number(p.v) << ",NA,NA,NA\n";
                }
            }
            emit(cfg.out, os.str(), out);
            if (cfg.out.empty()) {
                err << check.dump() << "\n";
            } else {
                emit(cfg.out + ".check.json", check.dump(2) + "\n", out);
            }
        } else {
            json pts = json::array();
            for (const auto& p : c.points) {
                json row = {{"v", p.v}};
                if (p.ok) {
                    row["risk"] = p.risk;
                    row["regime"] = to_string(p.regime);
                    row["beta_or_xstar"] = p.beta_or_xstar;
                } else {
                    row["error"] = p.error;
                }
                pts.push_back(row);
            }
            emit(cfg.out, json{{"measure", spec.measure.label}, {"points", pts}, {"check", check}}.dump(2) + "\n", out);
        }
        for (const auto& p : c.points) {
            if (!p.ok) err << "point v=" << format_number(p.v) << " failed: " << p.error << "\n";
        }
        return int(kOk);
    });
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        ProblemSpec spec = problem(cfg);
        spec.v = budget(cfg);
        if (cfg.n < 2) throw ConfigError("--n must be at least 2");
        const double tol = cfg.tol ? *cfg.tol : default_verify_tol();
        if (!(tol > 0.0)) throw ConfigError("--tol must be positive");
        const auto kind = spec.measure.kind;
        if (kind != MeasureSpec::Kind::Avar && kind != MeasureSpec::Kind::RhoK && kind != MeasureSpec::Kind::Robust) {
            throw ConfigError("verify supports avar, rho_k and robust measures");
        }
        const VerificationReport rep = verify(spec, cfg.n, tol);
        emit(cfg.out, to_json(rep).dump(2) + "\n", out);
        if (!rep.pass) {
            err << "verification failed: gap " << format_number(rep.gap) << " > tolerance " << format_number(tol)
                << "\n";
            return int(kVerificationFailed);
        }
        return int(kOk);
    });
}

int run_inspect(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (cfg.density.empty()) throw ConfigError("--density is required");
        PriceDensity d = [&] {
            try {
                return parse_density(cfg.density);
            } catch (const SpecError& e) {
                throw ConfigError(std::string("invalid spec: ") + e.what());
            } catch (const Error& e) {
                throw ConfigError(e.what());
            }
        }();
        json j;
        j["density"] = cfg.density;
        j["kind"] = d.describe();
        j["mean"] = d.mean();
        j["ess_sup"] = std::isfinite(d.ess_sup()) ? json(d.ess_sup()) : json(nullptr);
        j["continuous"] = d.continuous();
        json issues = json::array();
        for (const auto& i : validate(d).issues) {
            issues.push_back({{"code", i.code}, {"message", i.message}, {"residual", i.residual}});
        }
        j["issues"] = issues;
        json table = json::array();
        for (int i = 0; i <= 20; ++i) {
            const double t = i / 20.0;
            const double q = d.quantile(t);
            table.push_back({{"t", t}, {"quantile", std::isfinite(q) ? json(q) : json(nullptr)},
                             {"capital", d.capital_integral(t)}});
        }
        j["table"] = table;
        emit(cfg.out, j.dump(2) + "\n", out);
        return int(kOk);
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Risk-minimal contingent claims under a price budget"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string config_path;
    double v = 0.0, tol = 0.0;

    auto add_common = [&](CLI::App* sub, bool with_measure) {
        sub->add_option("--density", cfg.density, "uniform:<lo>,<hi> | plq:<t>:<q>,... | atoms:<file.csv>");
        if (with_measure) {
            sub->add_option("--measure", cfg.measure,
                            "avar:<l> | rho_k:<weight> | robust:<l>:<loss> | shifted:<l>:<x0>:<loss> | var:<l>");
            sub->add_option("--K", cfg.cap, "cap on the claim");
            sub->add_option("--tol", tol, "tolerance");
            sub->add_option("--format", cfg.format, "json or csv");
        }
        sub->add_option("--out", cfg.out, "output file");
        sub->add_option("--config", config_path, "JSON file with the same keys as the flags");
    };

    auto* solve_cmd = app.add_subcommand("solve", "solve for one budget");
    add_common(solve_cmd, true);
    solve_cmd->add_option("--v", v, "budget");
    auto* curve_cmd = app.add_subcommand("curve", "minimal risk over a budget grid");
    add_common(curve_cmd, true);
    curve_cmd->add_option("--grid", cfg.grid, "lo:hi:n");
    curve_cmd->add_option("--v", v, "unused");
    auto* verify_cmd = app.add_subcommand("verify", "compare solver and discrete oracle");
    add_common(verify_cmd, true);
    verify_cmd->add_option("--v", v, "budget");
    verify_cmd->add_option("--n", cfg.n, "oracle atom count");
    auto* inspect_cmd = app.add_subcommand("inspect", "density diagnostics");
    add_common(inspect_cmd, false);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (const auto* o = sub->get_option_no_throw("--v"); o && o->count()) cfg.v = v;
    if (const auto* o = sub->get_option_no_throw("--tol"); o && o->count()) cfg.tol = tol;
    if (!config_path.empty()) {
        try {
            merge_config(config_path, cfg, *sub);
        } catch (const ConfigError& e) {
            err << "config error: " << e.what() << "\n";
            return kConfigError;
        }
    }

    if (cfg.command == "solve") return run_solve(cfg, out, err);
    if (cfg.command == "curve") return run_curve(cfg, out, err);
    if (cfg.command == "verify") return run_verify(cfg, out, err);
    return run_inspect(cfg, out, err);
}

}  // namespace riskclaim::cli

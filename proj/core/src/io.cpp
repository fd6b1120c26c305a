#include <cmath>

#include "riskclaim/errors.hpp"
#include "riskclaim/io.hpp"

namespace riskclaim {

using nlohmann::json;

namespace {

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double get(const json& j, const char* key) {
    const auto& v = j.at(key);
    return v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
}

}  // namespace

json to_json(const Payoff& p) {
    json j;
    j["tag"] = p.tag();
    switch (p.kind()) {
        case Payoff::Kind::Constant:
            j["level"] = p.level();
            break;
        case Payoff::Kind::TwoStep:
            j["beta"] = p.beta();
            j["a"] = p.a();
            j["b"] = num(p.b());
            j["cap"] = p.cap();
            break;
        case Payoff::Kind::CappedInverse:
            j["beta"] = p.beta();
            j["c"] = p.c();
            j["y"] = p.y();
            j["cap"] = p.cap();
            j["start"] = p.start();
            j["loss"] = p.loss()->describe();
            break;
        case Payoff::Kind::StepVector:
            j["breaks"] = p.breaks();
            j["levels"] = p.levels();
            break;
    }
    if (p.offset() != 0.0) j["offset"] = p.offset();
    return j;
}

Payoff payoff_from_json(const json& j) {
    const std::string tag = j.at("tag").get<std::string>();
    Payoff p = Payoff::constant(0.0);
    if (tag == "constant") {
        p = Payoff::constant(j.at("level").get<double>());
    } else if (tag == "two_step") {
        p = Payoff::two_step(get(j, "beta"), get(j, "a"), get(j, "b"), get(j, "cap"));
    } else if (tag == "capped_inverse") {
        p = Payoff::capped_inverse(get(j, "beta"), get(j, "c"), get(j, "y"), get(j, "cap"),
                                   parse_loss(j.at("loss").get<std::string>()), j.value("start", 0.0));
    } else if (tag == "step_vector") {
        p = Payoff::step_vector(j.at("breaks").get<std::vector<double>>(),
                                j.at("levels").get<std::vector<double>>());
    } else {
        fail(ErrorKind::InvalidParameter, "unknown payoff tag '" + tag + "'");
    }
    if (j.contains("offset")) p = p.plus(j.at("offset").get<double>());
    return p;
}

json to_json(const Solution& s, const std::string& density) {
    json j;
    j["measure"] = s.measure;
    if (!density.empty()) j["density"] = density;
    j["v"] = s.budget;
    j["cap"] = s.cap;
    json params = json::object();
    for (const auto& [k, v] : s.params) params[k] = num(v);
    j["params"] = params;
    j["regime"] = to_string(s.regime);
    j["risk"] = s.risk;
    j["budget_residual"] = s.budget_residual;
    j["critical_value"] = s.critical_value ? num(*s.critical_value) : json(nullptr);
    j["payoff"] = to_json(s.payoff);
    json diag = json::object();
    for (const auto& [k, v] : s.diagnostics) diag[k] = num(v);
    if (!s.minimizers.empty()) {
        json pts = json::array();
        for (const auto& p : s.minimizers) pts.push_back({p.x, p.y, p.f});
        diag["minimizers"] = pts;
    }
    j["diagnostics"] = diag;
    return j;
}

Solution solution_from_json(const json& j) {
    Solution s;
    s.measure = j.at("measure").get<std::string>();
    s.budget = j.value("v", 0.0);
    s.cap = j.value("cap", 1.0);
    for (const auto& [k, v] : j.at("params").items()) {
        s.params[k] = v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
    }
    s.regime = regime_from_string(j.at("regime").get<std::string>());
    s.risk = j.at("risk").get<double>();
    s.budget_residual = j.at("budget_residual").get<double>();
    if (!j.at("critical_value").is_null()) s.critical_value = j.at("critical_value").get<double>();
    s.payoff = payoff_from_json(j.at("payoff"));
    for (const auto& [k, v] : j.at("diagnostics").items()) {
        if (v.is_number()) s.diagnostics[k] = v.get<double>();
    }
    return s;
}

json to_json(const VerificationReport& r) {
    return {{"measure", r.measure},
            {"v", r.v},
            {"solver_risk", r.solver_risk},
            {"oracle_risk", r.oracle_risk},
            {"gap", r.gap},
            {"n_atoms", r.n_atoms},
            {"payoff_distance", r.payoff_distance},
            {"tolerance", r.tolerance},
            {"pass", r.pass}};
}

json to_json(const CurveCheck& c) {
    json j = {{"increasing", c.increasing},
              {"strictly_increasing", c.strictly_increasing},
              {"endpoints_ok", c.endpoints_ok},
              {"max_monotone_violation", c.max_monotone_violation},
              {"failed_points", c.failed_points}};
    if (c.convexity_checked) {
        j["convex"] = c.convex;
        j["max_convexity_violation"] = c.max_convexity_violation;
    } else {
        j["convex"] = "skipped (non-convex measure)";
    }
    return j;
}

}  // namespace riskclaim

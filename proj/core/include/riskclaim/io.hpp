#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "riskclaim/density.hpp"
#include "riskclaim/loss.hpp"
#include "riskclaim/oracle.hpp"
#include "riskclaim/payoff.hpp"
#include "riskclaim/solvers.hpp"
#include "riskclaim/weight.hpp"

namespace riskclaim {

// Text grammars. Parse failures raise SpecError with a character position.
PriceDensity parse_density(const std::string& spec);
WeightFunction parse_weight(const std::string& spec);
LossFunction parse_loss(const std::string& spec);
MeasureSpec parse_measure(const std::string& spec);
/// "lo:hi:n" -> n equally spaced budgets including both ends.
std::vector<double> parse_grid(const std::string& spec);

/// CSV with header "value,prob", rows ascending by value.
std::vector<Atom> read_atoms_csv(const std::string& path);

/// 12 significant digits, "NA" for non-finite values.
std::string format_number(double x);

nlohmann::json to_json(const Payoff& p);
Payoff payoff_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Solution& s, const std::string& density = "");
Solution solution_from_json(const nlohmann::json& j);

nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const CurveCheck& c);

}  // namespace riskclaim

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "riskclaim/errors.hpp"
#include "riskclaim/io.hpp"

namespace riskclaim {

namespace {

struct Token {
    std::string text;
    std::size_t pos;
};

std::vector<Token> split(const std::string& s, char sep, std::size_t base) {
    std::vector<Token> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back({s.substr(start, i - start), base + start});
            start = i + 1;
        }
    }
    return out;
}

double number(const Token& t) {
    if (t.text.empty()) throw SpecError("expected a number", t.pos);
    const char* begin = t.text.c_str();
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(begin, &end);
    if (end == begin || errno == ERANGE || !std::isfinite(x)) {
        throw SpecError("invalid number '" + t.text + "'", t.pos);
    }
    if (*end != '\0') {
        throw SpecError("unexpected text after number", t.pos + static_cast<std::size_t>(end - begin));
    }
    return x;
}

// Splits "head:rest" and returns the rest with its offset.
std::pair<std::string, Token> head(const std::string& s, std::size_t base) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) return {s, {"", base + s.size()}};
    return {s.substr(0, colon), {s.substr(colon + 1), base + colon + 1}};
}

template <typename F>
auto wrap(const Token& t, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw SpecError(e.what(), t.pos);
    }
}

WeightFunction weight_at(const std::string& s, std::size_t base) {
    auto [kind, rest] = head(s, base);
    if (kind == "avar") return wrap(rest, [&] { return WeightFunction::avar(number(rest)); });
    if (kind == "affine") return wrap(rest, [&] { return WeightFunction::affine(number(rest)); });
    if (kind == "const" && rest.text.empty()) return WeightFunction::constant();
    if (kind == "twolevel") {
        auto parts = split(rest.text, ',', rest.pos);
        if (parts.size() != 2) throw SpecError("twolevel expects <xi>,<low>", rest.pos);
        const double xi = number(parts[0]), low = number(parts[1]);
        return wrap(rest, [&] { return WeightFunction::two_level(xi, low); });
    }
    if (kind == "steps") {
        std::vector<std::pair<double, double>> steps;
        for (const auto& item : split(rest.text, ',', rest.pos)) {
            auto pair = split(item.text, ':', item.pos);
            if (pair.size() != 2) throw SpecError("steps expects <t>:<k> pairs", item.pos);
            steps.emplace_back(number(pair[0]), number(pair[1]));
        }
        return wrap(rest, [&] { return WeightFunction::steps(steps); });
    }
    throw SpecError("unknown weight '" + kind + "'", base);
}

LossFunction loss_at(const std::string& s, std::size_t base) {
    auto [kind, rest] = head(s, base);
    double shift = 0.0;
    const auto at = rest.text.find('@');
    if (at != std::string::npos) {
        shift = number({rest.text.substr(at + 1), rest.pos + at + 1});
        rest.text = rest.text.substr(0, at);
    }
    if (kind == "exp") return wrap(rest, [&] { return LossFunction::exponential(number(rest)).shifted(shift); });
    if (kind == "pow") return wrap(rest, [&] { return LossFunction::power(number(rest)).shifted(shift); });
    throw SpecError("unknown loss '" + kind + "'", base);
}

}  // namespace

std::vector<Atom> read_atoms_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open atoms file '" + path + "'", 0);
    std::string line;
    std::size_t lineno = 0;
    std::vector<Atom> atoms;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header) {
            if (line != "value,prob") throw SpecError(path + ":" + std::to_string(lineno) + ": expected header value,prob", 0);
            header = true;
            continue;
        }
        auto cols = split(line, ',', 0);
        if (cols.size() != 2) throw SpecError(path + ":" + std::to_string(lineno) + ": expected two columns", 0);
        try {
            atoms.push_back({number(cols[0]), number(cols[1])});
        } catch (const SpecError& e) {
            throw SpecError(path + ":" + std::to_string(lineno) + ": " + e.what(), e.position());
        }
    }
    if (!header) throw SpecError(path + ": empty atoms file", 0);
    return atoms;
}

PriceDensity parse_density(const std::string& spec) {
    auto [kind, rest] = head(spec, 0);
    if (kind == "uniform") {
        auto parts = split(rest.text, ',', rest.pos);
        if (parts.size() != 2) throw SpecError("uniform expects <lo>,<hi>", rest.pos);
        const double lo = number(parts[0]), hi = number(parts[1]);
        return wrap(rest, [&] { return PriceDensity::uniform(lo, hi); });
    }
    if (kind == "plq") {
        std::vector<QuantileKnot> knots;
        std::optional<double> tail;
        for (const auto& item : split(rest.text, ',', rest.pos)) {
            auto pair = split(item.text, ':', item.pos);
            if (pair.size() != 2) throw SpecError("plq expects <t>:<q> pairs", item.pos);
            if (pair[0].text == "tail") {
                tail = number(pair[1]);
            } else {
                knots.push_back({number(pair[0]), number(pair[1])});
            }
        }
        return wrap(rest, [&] { return PriceDensity::piecewise_linear(knots, tail); });
    }
    if (kind == "atoms") {
        if (rest.text.empty()) throw SpecError("atoms expects a file path", rest.pos);
        auto atoms = read_atoms_csv(rest.text);
        return wrap(rest, [&] { return PriceDensity::discrete(atoms); });
    }
    throw SpecError("unknown density '" + kind + "'", 0);
}

WeightFunction parse_weight(const std::string& spec) { return weight_at(spec, 0); }

LossFunction parse_loss(const std::string& spec) { return loss_at(spec, 0); }

MeasureSpec parse_measure(const std::string& spec) {
    auto [kind, rest] = head(spec, 0);
    if (kind == "avar") return wrap(rest, [&] { return MeasureSpec::avar(number(rest)); });
    if (kind == "var") return wrap(rest, [&] { return MeasureSpec::var(number(rest)); });
    if (kind == "rho_k") return MeasureSpec::rho_k(weight_at(rest.text, rest.pos));
    if (kind == "robust") {
        auto [lam, loss] = head(rest.text, rest.pos);
        const double lambda = number({lam, rest.pos});
        const auto l = loss_at(loss.text, loss.pos);
        return wrap(rest, [&] { return MeasureSpec::robust(lambda, l); });
    }
    if (kind == "shifted") {
        auto [lam, tail] = head(rest.text, rest.pos);
        auto [x0s, loss] = head(tail.text, tail.pos);
        const double lambda = number({lam, rest.pos});
        const double x0 = number({x0s, tail.pos});
        const auto l = loss_at(loss.text, loss.pos);
        return wrap(rest, [&] { return MeasureSpec::shifted(lambda, x0, l); });
    }
    throw SpecError("unknown measure '" + kind + "'", 0);
}

std::vector<double> parse_grid(const std::string& spec) {
    auto parts = split(spec, ':', 0);
    if (parts.size() != 3) throw SpecError("grid expects <lo>:<hi>:<n>", 0);
    const double lo = number(parts[0]), hi = number(parts[1]), nn = number(parts[2]);
    if (nn < 2 || nn != std::floor(nn)) throw SpecError("grid count must be an integer >= 2", parts[2].pos);
    if (!(hi > lo)) throw SpecError("grid needs lo < hi", parts[1].pos);
    const auto n = static_cast<std::size_t>(nn);
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return g;
}

std::string format_number(double x) {
    if (!std::isfinite(x)) return "NA";
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

}  // namespace riskclaim

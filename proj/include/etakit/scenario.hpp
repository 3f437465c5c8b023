#pragma once

// Declarative scenarios: a line-oriented key=value file whose recipe= line is
// a pipeline building a certified form.
//
//   name=theta-iter-k2
//   source=theta^k(eta) congruence, case (1) example
//   prec=24*(2*(ell+1)/12+4)
//   recipe=eta 1 | theta 2 | scale 24^2
//   expect.case=1
//   expect.a1=1
//
// Recipe grammar (whitespace-separated tokens):
//   recipe := term ('+' term)*
//   term   := source ('|' stage)*
//   source := 'eta' R | 'zero' LAMBDA R
//   stage  := 'theta' K | 'descend' | 'scale' C
// Numeric arguments and prec/expect values are integer expressions over
// + - * / ^ and parentheses, with the variable ell.

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "classify.hpp"
#include "halfint.hpp"

namespace etakit {

namespace detail {

class ExprParser {
public:
    ExprParser(const std::string& s, std::optional<std::int64_t> ell,
               std::optional<std::int64_t> modulus = std::nullopt)
        : s_(s), ell_(ell), mod_(modulus) {}

    std::int64_t parse() {
        const auto v = sum();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw invalid_argument("expression '" + s_ + "': " + why);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::int64_t reduce(std::int64_t v) const { return mod_ ? mod_floor(v, *mod_) : v; }
    std::int64_t sum() {
        auto v = product();
        while (true) {
            if (eat('+'))
                v = reduce(v + product());
            else if (eat('-'))
                v = reduce(v - product());
            else
                return v;
        }
    }
    std::int64_t product() {
        auto v = power();
        while (true) {
            if (eat('*')) {
                v = reduce(v * power());
            } else if (eat('/')) {
                if (mod_) fail("division in a modular expression");
                const auto d = power();
                if (d == 0) fail("division by zero");
                v /= d;
            } else {
                return v;
            }
        }
    }
    std::int64_t power() {
        const auto base = unary();
        if (!eat('^')) return base;
        const auto saved = std::exchange(mod_, std::nullopt);
        const auto e = power();
        mod_ = saved;
        if (e < 0) fail("negative exponent");
        if (mod_) return static_cast<std::int64_t>(pow_mod(static_cast<std::uint64_t>(mod_floor(base, *mod_)),
                                                           static_cast<std::uint64_t>(e),
                                                           static_cast<std::uint64_t>(*mod_)));
        std::int64_t v = 1;
        for (std::int64_t i = 0; i < e; ++i) v *= base;
        return v;
    }
    std::int64_t unary() {
        if (eat('-')) return reduce(-unary());
        return atom();
    }
    std::int64_t atom() {
        skip();
        if (eat('(')) {
            const auto v = sum();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        if (s_.compare(pos_, 3, "ell") == 0) {
            pos_ += 3;
            if (!ell_) fail("ell is not set");
            return reduce(*ell_);
        }
        const auto start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        return reduce(std::stoll(s_.substr(start, pos_ - start)));
    }

    const std::string& s_;
    std::optional<std::int64_t> ell_;
    std::optional<std::int64_t> mod_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline std::int64_t eval_expr(const std::string& expr, std::optional<std::int64_t> ell) {
    return detail::ExprParser(expr, ell).parse();
}

/// Integer expression evaluated modulo l; exponents are evaluated over the
/// integers, so 24^((ell-1)/2) is reduced by modular exponentiation.
inline PrimeField::value_type eval_mod(const std::string& expr, const PrimeField& F) {
    const auto ell = static_cast<std::int64_t>(F.ell());
    return F.from_int(detail::ExprParser(expr, ell, ell).parse());
}

struct Scenario {
    std::string name;
    std::string source;
    std::optional<std::string> ell;  // expression; unset means the caller supplies l
    std::string prec;
    std::string recipe;
    std::map<std::string, std::string> expect;  // keys without the "expect." prefix
};

inline Scenario parse_scenario(std::istream& is) {
    Scenario s;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw invalid_argument("scenario line " + std::to_string(lineno) + ": expected key=value");
        const auto key = line.substr(first, eq - first);
        const auto value = line.substr(eq + 1);
        if (key == "name")
            s.name = value;
        else if (key == "source")
            s.source = value;
        else if (key == "ell")
            s.ell = value;
        else if (key == "prec")
            s.prec = value;
        else if (key == "recipe")
            s.recipe = value;
        else if (key.rfind("expect.", 0) == 0)
            s.expect[key.substr(7)] = value;
        else
            throw invalid_argument("scenario line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    for (const auto& [field, v] : {std::pair{"name", &s.name}, std::pair{"source", &s.source},
                                   std::pair{"prec", &s.prec}, std::pair{"recipe", &s.recipe}})
        if (v->empty()) throw invalid_argument(std::string("scenario: missing ") + field);
    return s;
}

inline Scenario parse_scenario(const std::string& text) {
    std::istringstream is(text);
    return parse_scenario(is);
}

/// Multiplies a precision by ETAKIT_PREC_OVERRIDE when that variable holds a factor >= 1.
inline std::int64_t effective_prec(std::int64_t prec) {
    if (const char* env = std::getenv("ETAKIT_PREC_OVERRIDE")) {
        char* end = nullptr;
        const double factor = std::strtod(env, &end);
        if (end == env || factor < 1.0)
            throw invalid_argument("ETAKIT_PREC_OVERRIDE must be a number >= 1");
        return static_cast<std::int64_t>(static_cast<double>(prec) * factor);
    }
    return prec;
}

/// Evaluates a recipe at prime l and precision prec.
inline HalfIntForm build_recipe(const std::string& recipe, std::int64_t ell, std::int64_t prec) {
    const PrimeField F(ell);
    std::vector<std::string> tokens;
    {
        std::istringstream is(recipe);
        std::string t;
        while (is >> t) tokens.push_back(t);
    }
    std::size_t i = 0;
    auto next = [&](const char* what) -> const std::string& {
        if (i >= tokens.size()) throw invalid_argument(std::string("recipe: expected ") + what);
        return tokens[i++];
    };
    auto num = [&](const char* what) { return eval_expr(next(what), ell); };

    std::optional<HalfIntForm> total;
    while (true) {
        const auto& src = next("eta or zero");
        std::optional<HalfIntForm> f;
        if (src == "eta") {
            f = eta_form(num("eta exponent"), ell, prec);
        } else if (src == "zero") {
            const auto lambda = num("lambda");
            const auto r = num("r");
            f = certify(FSeries(F, prec, static_cast<int>(mod_floor(r, 24))), lambda, r);
        } else {
            throw invalid_argument("recipe: unknown source '" + src + "'");
        }
        while (i < tokens.size() && tokens[i] == "|") {
            ++i;
            const auto& stage = next("stage");
            if (stage == "theta")
                f = theta_lift(*f, num("theta count"));
            else if (stage == "descend")
                f = u_ell_descent(*f);
            else if (stage == "scale")
                f = scale_form(*f, eval_mod(next("scale factor"), F));
            else
                throw invalid_argument("recipe: unknown stage '" + stage + "'");
        }
        total = total ? add_forms(*total, *f) : *f;
        if (i == tokens.size()) break;
        if (tokens[i] != "+") throw invalid_argument("recipe: expected '+' or '|', got '" + tokens[i] + "'");
        ++i;
    }
    return *total;
}

/// Resolves l for a scenario: its own ell= value, else the caller's.
inline std::int64_t scenario_ell(const Scenario& s, std::optional<std::int64_t> caller_ell) {
    if (s.ell) return eval_expr(*s.ell, caller_ell);
    if (!caller_ell) throw invalid_argument("scenario '" + s.name + "' needs a prime l");
    return *caller_ell;
}

/// Compares a report with the scenario's expect.* entries; returns the
/// mismatching keys (empty on success).
inline std::vector<std::string> check_expectations(const Scenario& s, const CaseReport& rep,
                                                   std::int64_t ell, int exit) {
    std::vector<std::string> failures;
    for (const auto& [key, want] : s.expect) {
        bool ok = true;
        if (key == "case")
            ok = to_string(rep.case_tag) == want;
        else if (key == "hypothesis_ok")
            ok = (rep.hypothesis_ok ? "true" : "false") == want;
        else if (key == "a1")
            ok = static_cast<std::int64_t>(rep.a1) == mod_floor(eval_expr(want, ell), ell);
        else if (key == "al")
            ok = static_cast<std::int64_t>(rep.al) == mod_floor(eval_expr(want, ell), ell);
        else if (key == "r_mod_24")
            ok = rep.r_class == eval_expr(want, ell);
        else if (key == "lambda_mod")
            ok = rep.lambda_class == eval_expr(want, ell);
        else if (key == "exit")
            ok = exit == eval_expr(want, ell);
        else
            throw invalid_argument("scenario '" + s.name + "': unknown expectation '" + key + "'");
        if (!ok) failures.push_back(key);
    }
    return failures;
}

}  // namespace etakit

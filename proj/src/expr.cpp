#include "abreu/expr.hpp"

#include "abreu/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace abreu {

std::string ScalarField::format_constant(double c) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", c);
    return buf;
}

namespace {

using Fn = std::function<double(Vec2)>;

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    Fn parse_expr() {
        Fn lhs = parse_term();
        while (true) {
            if (eat('+')) {
                Fn rhs = parse_term();
                lhs = [lhs, rhs](Vec2 p) { return lhs(p) + rhs(p); };
            } else if (eat('-')) {
                Fn rhs = parse_term();
                lhs = [lhs, rhs](Vec2 p) { return lhs(p) - rhs(p); };
            } else {
                return lhs;
            }
        }
    }

    Fn parse_term() {
        Fn lhs = parse_factor();
        while (true) {
            if (eat('*')) {
                Fn rhs = parse_factor();
                lhs = [lhs, rhs](Vec2 p) { return lhs(p) * rhs(p); };
            } else if (eat('/')) {
                Fn rhs = parse_factor();
                lhs = [lhs, rhs](Vec2 p) { return lhs(p) / rhs(p); };
            } else {
                return lhs;
            }
        }
    }

    Fn parse_factor() {
        if (eat('-')) {
            Fn f = parse_factor();
            return [f](Vec2 p) { return -f(p); };
        }
        Fn base = parse_primary();
        if (eat('^')) {
            Fn expo = parse_factor();
            return [base, expo](Vec2 p) { return std::pow(base(p), expo(p)); };
        }
        return base;
    }

    Fn parse_primary() {
        skip_ws();
        if (pos >= s.size()) throw input_error("expression ended unexpectedly");
        const char c = s[pos];
        if (c == '(') {
            ++pos;
            Fn f = parse_expr();
            if (!eat(')')) throw input_error("missing ')' in expression");
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double val = 0.0;
            const char* begin = s.data() + pos;
            const char* end = s.data() + s.size();
            auto [next, ec] = std::from_chars(begin, end, val);
            if (ec != std::errc{}) throw input_error("bad number in expression");
            pos = next - s.data();
            return [val](Vec2) { return val; };
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
            const std::string name = s.substr(start, pos - start);
            if (name == "x") return [](Vec2 p) { return p.x; };
            if (name == "y") return [](Vec2 p) { return p.y; };
            if (name == "pi") return [](Vec2) { return M_PI; };
            if (!eat('(')) throw input_error("unknown symbol '" + name + "' in expression");
            Fn arg = parse_expr();
            if (!eat(')')) throw input_error("missing ')' after " + name);
            if (name == "sin") return [arg](Vec2 p) { return std::sin(arg(p)); };
            if (name == "cos") return [arg](Vec2 p) { return std::cos(arg(p)); };
            if (name == "exp") return [arg](Vec2 p) { return std::exp(arg(p)); };
            if (name == "log") return [arg](Vec2 p) { return std::log(arg(p)); };
            if (name == "sqrt") return [arg](Vec2 p) { return std::sqrt(arg(p)); };
            if (name == "abs") return [arg](Vec2 p) { return std::abs(arg(p)); };
            throw input_error("unknown function '" + name + "' in expression");
        }
        throw input_error(std::string("unexpected character '") + c + "' in expression");
    }
};

} // namespace

ScalarField parse_scalar_field(const std::string& text) {
    // fast path: plain number means constant A
    {
        double val = 0.0;
        const char* begin = text.data();
        const char* end = text.data() + text.size();
        while (begin < end && std::isspace(static_cast<unsigned char>(*begin))) ++begin;
        auto [next, ec] = std::from_chars(begin, end, val);
        if (ec == std::errc{}) {
            const char* rest = next;
            while (rest < end && std::isspace(static_cast<unsigned char>(*rest))) ++rest;
            if (rest == end) return ScalarField::from_constant(val);
        }
    }
    Parser parser(text);
    Fn f = parser.parse_expr();
    parser.skip_ws();
    if (parser.pos != text.size()) throw input_error("trailing garbage in expression");
    return {f, text, std::nullopt};
}

} // namespace abreu

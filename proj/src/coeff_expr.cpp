#include "wfem/coeff_expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace wfem {

namespace {

// expr  := term (('+'|'-') term)*
// term  := unary ('*' unary)*
// unary := ('+'|'-') unary | power
// power := atom ('^' unsigned-integer)?
// atom  := number | 'x' | 'pi' | ('sin'|'cos'|'exp') '(' expr ')' | '(' expr ')'
struct Parser {
    const std::string& text;
    size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("coefficient expression: " + what + " at position " +
                                    std::to_string(pos) + " in '" + text + "'");
    }
    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    char peek() {
        skip();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool eat_word(const char* w) {
        skip();
        size_t n = 0;
        while (w[n]) ++n;
        if (text.compare(pos, n, w) != 0) return false;
        char next = pos + n < text.size() ? text[pos + n] : '\0';
        if (std::isalnum(static_cast<unsigned char>(next)) || next == '_') return false;
        pos += n;
        return true;
    }

    ScalarFn expr() {
        ScalarFn acc = term();
        for (;;) {
            if (eat('+')) {
                ScalarFn rhs = term();
                acc = [acc, rhs](double x) { return acc(x) + rhs(x); };
            } else if (eat('-')) {
                ScalarFn rhs = term();
                acc = [acc, rhs](double x) { return acc(x) - rhs(x); };
            } else {
                return acc;
            }
        }
    }
    ScalarFn term() {
        ScalarFn acc = unary();
        while (eat('*')) {
            ScalarFn rhs = unary();
            acc = [acc, rhs](double x) { return acc(x) * rhs(x); };
        }
        return acc;
    }
    ScalarFn unary() {
        if (eat('-')) {
            ScalarFn inner = unary();
            return [inner](double x) { return -inner(x); };
        }
        if (eat('+')) return unary();
        return power();
    }
    ScalarFn power() {
        ScalarFn base = atom();
        if (!eat('^')) return base;
        skip();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected an unsigned integer exponent");
        int n = std::atoi(text.substr(start, pos - start).c_str());
        return [base, n](double x) { return std::pow(base(x), n); };
    }
    ScalarFn atom() {
        char c = peek();
        if (c == '(') {
            ++pos;
            ScalarFn inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = text.c_str() + pos;
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            if (end == begin) fail("malformed number");
            pos += static_cast<size_t>(end - begin);
            return [v](double) { return v; };
        }
        if (eat_word("pi")) return [](double) { return M_PI; };
        if (eat_word("x")) return [](double x) { return x; };
        if (eat_word("sin")) return call(static_cast<double (*)(double)>(std::sin));
        if (eat_word("cos")) return call(static_cast<double (*)(double)>(std::cos));
        if (eat_word("exp")) return call(static_cast<double (*)(double)>(std::exp));
        fail(c == '\0' ? "unexpected end of input" : std::string("unexpected character '") + c + "'");
    }
    ScalarFn call(double (*fn)(double)) {
        if (!eat('(')) fail("expected '(' after function name");
        ScalarFn arg = expr();
        if (!eat(')')) fail("expected ')'");
        return [fn, arg](double x) { return fn(arg(x)); };
    }
};

}  // namespace

ScalarFn parse_coefficient(const std::string& text) {
    Parser parser(text);
    ScalarFn fn = parser.expr();
    if (parser.peek() != '\0') parser.fail("trailing input");
    return fn;
}

}  // namespace wfem

#include "jetcalc/mpoly.hpp"

#include <cctype>

namespace jc {

namespace {

// Recursive-descent parser for the polynomial literal grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' nat)?
//   atom   := rational | var | '-' factor | '(' expr ')'
// Rationals are "n" or "n/d"; variables come from the name table
// (default x1..xm).
struct PolyParser {
    const std::string& s;
    size_t pos = 0;
    int arity;
    const std::map<std::string, int>& names;

    PolyParser(const std::string& text, int arity_, const std::map<std::string, int>& names_)
        : s(text), arity(arity_), names(names_) {}

    [[noreturn]] void fail(const std::string& msg) {
        throw SyntaxError(1, static_cast<int>(pos) + 1, msg + " in polynomial literal '" + s + "'");
    }

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

    mpz_class integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected digit");
        return mpz_class(s.substr(start, pos - start));
    }

    MPoly rational_atom() {
        mpz_class num = integer();
        if (eat('/')) {
            mpz_class den = integer();
            if (den == 0) fail("zero denominator");
            Rational q(num, den);
            q.canonicalize();
            return MPoly::constant(arity, q);
        }
        return MPoly::constant(arity, Rational(num));
    }

    MPoly var_atom() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        std::string name = s.substr(start, pos - start);
        if (name.empty()) fail("expected variable name");
        int slot = -1;
        if (!names.empty()) {
            auto it = names.find(name);
            if (it == names.end()) fail("unknown variable '" + name + "'");
            slot = it->second;
        } else {
            if (name.size() < 2 || name[0] != 'x') fail("unknown variable '" + name + "'");
            try {
                slot = std::stoi(name.substr(1)) - 1;
            } catch (...) {
                fail("unknown variable '" + name + "'");
            }
        }
        if (slot < 0 || slot >= arity) fail("variable '" + name + "' out of range");
        return MPoly::variable(slot, arity);
    }

    MPoly factor() {
        MPoly base = atom();
        if (eat('^')) {
            mpz_class e = integer();
            if (e < 0 || e > 64) fail("exponent out of range");
            base = base.pow(static_cast<unsigned>(e.get_ui()));
        }
        return base;
    }

    MPoly atom() {
        char c = peek();
        if (c == '(') {
            eat('(');
            MPoly inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == '-') {
            eat('-');
            return -factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return rational_atom();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return var_atom();
        fail("unexpected character");
    }

    MPoly term() {
        MPoly p = factor();
        while (eat('*')) p = p * factor();
        return p;
    }

    MPoly expr() {
        MPoly p = term();
        while (true) {
            char c = peek();
            if (c == '+') {
                eat('+');
                p = p + term();
            } else if (c == '-') {
                eat('-');
                p = p - term();
            } else {
                break;
            }
        }
        return p;
    }

    MPoly parse() {
        MPoly p = expr();
        skip_ws();
        if (pos != s.size()) fail("trailing input");
        return p;
    }
};

} // namespace

MPoly parse_poly(const std::string& text, int arity, const std::map<std::string, int>& names) {
    return PolyParser(text, arity, names).parse();
}

} // namespace jc

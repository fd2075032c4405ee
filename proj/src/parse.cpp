#include "newton/parse.hpp"

#include <cctype>
#include <sstream>

namespace newton {

ParseError::ParseError(const std::string& what, std::size_t off)
    : std::runtime_error(what + " at offset " + std::to_string(off)), offset(off) {}

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    RationalPoly run() {
        RationalPoly p = expr();
        skip_space();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_space() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    char peek() {
        skip_space();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    RationalPoly expr() {
        RationalPoly acc = term();
        for (;;) {
            if (eat('+')) acc = acc + term();
            else if (eat('-')) acc = acc - term();
            else return acc;
        }
    }

    RationalPoly term() {
        RationalPoly acc = factor();
        for (;;) {
            if (eat('*')) acc = acc * factor();
            else if (eat('/')) {
                std::size_t at = pos_;
                RationalPoly divisor = factor();
                if (divisor.degree() > 0) {
                    pos_ = at;
                    fail("division by a non-constant expression");
                }
                if (divisor.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                acc = acc * (Rat(1) / divisor.coeff(0));
            } else return acc;
        }
    }

    RationalPoly factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        RationalPoly base = atom();
        while (eat('^')) {
            unsigned long e = exponent();
            base = base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    unsigned long exponent() {
        skip_space();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected a nonnegative integer exponent");
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        std::string digits = s_.substr(start, pos_ - start);
        if (digits.size() > 4) {
            pos_ = start;
            fail("exponent too large");
        }
        return std::stoul(digits);
    }

    RationalPoly atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            RationalPoly inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == 't') {
            ++pos_;
            return RationalPoly::variable();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '.')
                fail("non-rational literal");
            Int value(s_.substr(start, pos_ - start));
            return RationalPoly(Rat(value));
        }
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

RationalPoly parse_polynomial(const std::string& text) { return Parser(text).run(); }

Rat parse_rational(const std::string& text) {
    RationalPoly p = parse_polynomial(text);
    if (p.degree() > 0) throw ParseError("expected a rational constant", 0);
    return p.is_zero() ? Rat(0) : p.coeff(0);
}

namespace {

// One term of the canonical rendering; sign handled by the caller.
std::string term_string(const Rat& coeff, int power) {
    Rat a = coeff > 0 ? coeff : Rat(-coeff);
    std::ostringstream out;
    bool unit = (a == 1);
    if (power == 0) {
        if (a.get_den() == 1) out << a;
        else out << '(' << a << ')';
        return out.str();
    }
    if (!unit) {
        if (a.get_den() == 1) out << a << '*';
        else out << '(' << a << ")*";
    }
    out << 't';
    if (power != 1) out << '^' << power;
    return out.str();
}

} // namespace

std::string render_polynomial(const RationalPoly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = f.degree(); k >= 0; --k) {
        const Rat& c = f.coeff(k);
        if (c == 0) continue;
        if (first) {
            if (c < 0) out << '-';
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        out << term_string(c, k);
    }
    return out.str();
}

} // namespace newton

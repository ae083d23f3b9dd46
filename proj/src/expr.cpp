#include "rigidity/expr.hpp"

#include "rigidity/errors.hpp"

#include <cctype>
#include <limits>

namespace rigidity {

namespace {

enum class Tok { Number, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::End: return "end of input";
        case Tok::Number:
        case Tok::Name: return "'" + t.text + "'";
        default: return "'" + t.text + "'";
    }
}

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t{Tok::End, std::string(1, c), line, col};
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            t.kind = Tok::Number;
            t.text = std::string(s.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) {
                ++j;
            }
            t.kind = Tok::Name;
            t.text = std::string(s.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        switch (c) {
            case '+': t.kind = Tok::Plus; break;
            case '-': t.kind = Tok::Minus; break;
            case '*': t.kind = Tok::Star; break;
            case '/': t.kind = Tok::Slash; break;
            case '^': t.kind = Tok::Caret; break;
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            default: throw ParseError("unexpected character '" + t.text + "'", line, col);
        }
        advance(1);
        out.push_back(std::move(t));
    }
    out.push_back(Token{Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    Parser(std::string_view text, const Variables& vars) : toks_(tokenize(text)), vars_(vars) {}

    Polynomial parse() {
        Polynomial p = expr();
        if (peek().kind != Tok::End) fail("unexpected " + describe(peek()));
        return p;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, peek()); }
    [[noreturn]] static void fail_at(const std::string& msg, const Token& t) {
        throw ParseError(msg, t.line, t.column);
    }

    Polynomial expr() {
        bool negate = accept(Tok::Minus);
        Polynomial acc = term();
        if (negate) acc = -acc;
        for (;;) {
            if (accept(Tok::Plus)) {
                acc += term();
            } else if (accept(Tok::Minus)) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (accept(Tok::Star)) acc = acc * factor();
        return acc;
    }

    std::uint32_t exponent() {
        const Token& t = peek();
        if (t.kind != Tok::Number) fail("expected exponent, found " + describe(t));
        take();
        std::uint64_t v = 0;
        for (char c : t.text) {
            v = v * 10 + static_cast<unsigned>(c - '0');
            if (v > std::numeric_limits<std::uint32_t>::max()) fail_at("exponent too large", t);
        }
        return static_cast<std::uint32_t>(v);
    }

    Polynomial factor() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Number: return coefficient();
            case Tok::Name: {
                take();
                if (t.text == "i") return Polynomial::constant(vars_, GaussianRational::i());
                auto idx = vars_.find(t.text);
                if (!idx) fail_at("unknown variable '" + t.text + "'", t);
                ExponentVector e(vars_.size(), 0);
                e[*idx] = accept(Tok::Caret) ? exponent() : 1;
                return Polynomial::monomial(vars_, std::move(e), GaussianRational(1));
            }
            case Tok::LParen: {
                take();
                Polynomial inner = expr();
                if (!accept(Tok::RParen)) fail("expected ')', found " + describe(peek()));
                if (accept(Tok::Caret)) inner = inner.pow(exponent());
                return inner;
            }
            default: fail("unexpected " + describe(t));
        }
    }

    Polynomial coefficient() {
        mpq_class value(mpz_class(take().text));
        if (peek().kind == Tok::Slash) {
            take();
            const Token& d = peek();
            if (d.kind != Tok::Number) fail("expected denominator, found " + describe(d));
            take();
            mpz_class den(d.text);
            if (den == 0) fail_at("zero denominator", d);
            value /= mpq_class(den);
        }
        GaussianRational c(value);
        if (peek().kind == Tok::Name && peek().text == "i") {
            take();
            c *= GaussianRational::i();
        }
        return Polynomial::constant(vars_, c);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const Variables& vars_;
};

// Magnitude of a real rational, without sign.
std::string abs_str(const mpq_class& q) { return mpq_class(abs(q)).get_str(); }

// Render a nonzero coefficient as (is_negative, body). body is empty for 1.
std::pair<bool, std::string> split_coefficient(const GaussianRational& c) {
    const mpq_class& re = c.real();
    const mpq_class& im = c.imag();
    if (sgn(im) == 0) {
        return {sgn(re) < 0, abs(re) == 1 ? "" : abs_str(re)};
    }
    if (sgn(re) == 0) {
        return {sgn(im) < 0, (abs(im) == 1 ? "" : abs_str(im)) + "i"};
    }
    bool neg = sgn(re) < 0;
    mpq_class r = neg ? mpq_class(-re) : re;
    mpq_class m = neg ? mpq_class(-im) : im;
    std::string body = "(" + r.get_str() + (sgn(m) < 0 ? " - " : " + ") +
                       (abs(m) == 1 ? "" : abs_str(m)) + "i)";
    return {neg, body};
}

std::string monomial_text(const Variables& vars, const ExponentVector& e) {
    std::string out;
    for (std::size_t v = 0; v < e.size(); ++v) {
        if (e[v] == 0) continue;
        if (!out.empty()) out += "*";
        out += vars[v];
        if (e[v] > 1) out += "^" + std::to_string(e[v]);
    }
    return out;
}

}  // namespace

Polynomial parse_poly(std::string_view text, const Variables& vars) {
    for (const auto& name : vars.names()) {
        if (name == "i") throw InvalidArgument("'i' is reserved and cannot be a variable");
    }
    return Parser(text, vars).parse();
}

std::vector<std::string> identifiers_in(std::string_view text) {
    std::vector<std::string> out;
    for (const auto& t : tokenize(text)) {
        if (t.kind != Tok::Name || t.text == "i") continue;
        bool seen = false;
        for (const auto& s : out) seen = seen || s == t.text;
        if (!seen) out.push_back(t.text);
    }
    return out;
}

std::string format_scalar(const GaussianRational& c) {
    if (c.is_zero()) return "0";
    auto [neg, body] = split_coefficient(c);
    if (body.empty()) body = "1";
    return (neg ? "-" : "") + body;
}

std::string format_poly(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        auto [neg, body] = split_coefficient(c);
        std::string mono = monomial_text(p.variables(), e);
        std::string term;
        if (mono.empty()) {
            term = body.empty() ? "1" : body;
        } else {
            term = body.empty() ? mono : body + "*" + mono;
        }
        if (first) {
            out = (neg ? "-" : "") + term;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + term;
        }
    }
    return out;
}

}  // namespace rigidity

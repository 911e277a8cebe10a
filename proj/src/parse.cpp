#include "arithdyn/parse.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "arithdyn/errors.hpp"

namespace arithdyn {

namespace {

constexpr std::size_t kMaxExponent = 4096;

// Polynomial over Q, lowest degree first, no trailing zeros.
struct QPoly {
    std::vector<mpq_class> c;

    static QPoly constant(const mpq_class& v) {
        QPoly p;
        if (v != 0) p.c.push_back(v);
        return p;
    }
    static QPoly x() {
        QPoly p;
        p.c = {0, 1};
        return p;
    }
    long degree() const { return static_cast<long>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
};

QPoly add(const QPoly& a, const QPoly& b, int sign = 1) {
    QPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += sign * b.c[i];
    r.trim();
    return r;
}

QPoly mul(const QPoly& a, const QPoly& b) {
    QPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.trim();
    return r;
}

// a = q*b + r
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
    QPoly q;
    if (a.degree() < b.degree()) return {q, a};
    q.c.assign(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0);
    while (!a.is_zero() && a.degree() >= b.degree()) {
        const std::size_t shift = static_cast<std::size_t>(a.degree() - b.degree());
        const mpq_class t = a.c.back() / b.c.back();
        q.c[shift] = t;
        for (std::size_t j = 0; j < b.c.size(); ++j) a.c[shift + j] -= t * b.c[j];
        a.trim();
    }
    q.trim();
    return {q, a};
}

QPoly monic_gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) {
        const mpq_class lead = a.c.back();
        for (auto& v : a.c) v /= lead;
    }
    return a;
}

struct Fraction {
    QPoly num, den;
};

class ExpressionParser {
public:
    explicit ExpressionParser(std::string_view text) : s_(text) {}

    Fraction parse() {
        Fraction f = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
        return f;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char ch) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char ch) {
        if (!accept(ch)) throw ParseError(std::string("expected '") + ch + "'", pos_);
    }

    BigInt integer() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected integer", start);
        return BigInt(std::string(s_.substr(start, pos_ - start)), 10);
    }

    static Fraction sum(const Fraction& a, const Fraction& b, int sign) {
        const QPoly g = monic_gcd(a.den, b.den);
        const QPoly bd = divmod(b.den, g).first;
        const QPoly ad = divmod(a.den, g).first;
        return {add(mul(a.num, bd), mul(b.num, ad), sign), mul(a.den, bd)};
    }

    Fraction expr() {
        Fraction acc = term();
        while (true) {
            if (accept('+')) {
                acc = sum(acc, term(), 1);
            } else if (accept('-')) {
                acc = sum(acc, term(), -1);
            } else {
                return acc;
            }
        }
    }

    Fraction term() {
        Fraction acc = unary();
        while (true) {
            if (accept('*')) {
                Fraction r = unary();
                acc = {mul(acc.num, r.num), mul(acc.den, r.den)};
            } else if (accept('/')) {
                const std::size_t at = pos_;
                Fraction r = unary();
                if (r.num.is_zero()) throw ParseError("division by zero", at);
                acc = {mul(acc.num, r.den), mul(acc.den, r.num)};
            } else {
                return acc;
            }
        }
    }

    Fraction unary() {
        if (accept('-')) {
            Fraction f = unary();
            return {mul(f.num, QPoly::constant(-1)), f.den};
        }
        if (accept('+')) return unary();
        return power();
    }

    std::size_t exponent() {
        skip();
        const std::size_t at = pos_;
        BigInt base;
        if (accept('(')) {
            base = exponent();
            expect(')');
        } else {
            base = integer();
        }
        if (accept('^')) {
            const std::size_t e = exponent();
            if (base > 1 && e >= 13) throw ParseError("exponent too large", at);
            mpz_pow_ui(base.get_mpz_t(), base.get_mpz_t(), e);
        }
        if (base > kMaxExponent) throw ParseError("exponent too large", at);
        return base.get_ui();
    }

    Fraction power() {
        Fraction base = primary();
        if (!accept('^')) return base;
        const std::size_t e = exponent();
        Fraction out{QPoly::constant(1), QPoly::constant(1)};
        for (std::size_t i = 0; i < e; ++i) out = {mul(out.num, base.num), mul(out.den, base.den)};
        return out;
    }

    Fraction primary() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
        const char ch = s_[pos_];
        if (ch == '(') {
            ++pos_;
            Fraction f = expr();
            expect(')');
            return f;
        }
        if (ch == 'x') {
            ++pos_;
            return {QPoly::x(), QPoly::constant(1)};
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            return {QPoly::constant(mpq_class(integer())), QPoly::constant(1)};
        }
        throw ParseError("unexpected '" + std::string(1, ch) + "'", pos_);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

std::vector<Rational> highest_first(const QPoly& p) {
    std::vector<Rational> out;
    for (std::size_t i = p.c.size(); i-- > 0;) out.emplace_back(p.c[i]);
    return out;
}

std::vector<Rational> coefficient_list(std::string_view text, std::size_t offset) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        std::string_view piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.front()))) piece.remove_prefix(1);
        while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.back()))) piece.remove_suffix(1);
        if (piece.empty()) throw ParseError("empty coefficient", offset + start);
        try {
            out.push_back(Rational::parse(piece));
        } catch (const ParseError&) {
            throw ParseError("malformed coefficient '" + std::string(piece) + "'", offset + start);
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

RatMap parse_map_expression(std::string_view text) {
    Fraction f = ExpressionParser(text).parse();
    if (f.den.is_zero()) throw PreconditionError("denominator is zero");
    const auto num = highest_first(f.num);
    const auto den = highest_first(f.den);
    return make_map(num, den);
}

RatMap parse_coefficient_format(std::string_view text) {
    auto semi = text.find(';');
    if (semi == std::string_view::npos) throw ParseError("expected ';' between num and den", text.size());
    auto field = [&](std::string_view part, std::string_view key, std::size_t offset) {
        std::size_t i = 0;
        while (i < part.size() && std::isspace(static_cast<unsigned char>(part[i]))) ++i;
        if (part.substr(i, key.size()) != key) throw ParseError("expected '" + std::string(key) + "'", offset + i);
        i += key.size();
        return coefficient_list(part.substr(i), offset + i);
    };
    const auto num = field(text.substr(0, semi), "num=", 0);
    const auto den = field(text.substr(semi + 1), "den=", semi + 1);
    return make_map(num, den);
}

RatMap parse_map(std::string_view text) {
    if (text.find("num=") != std::string_view::npos) return parse_coefficient_format(text);
    return parse_map_expression(text);
}

}  // namespace arithdyn

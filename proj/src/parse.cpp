#include "pinch/parse.hpp"

#include <cctype>
#include <stdexcept>

namespace pinch {

namespace {

class ExprParser {
public:
    ExprParser(std::string_view text, const std::map<std::string, VarId>* vars)
        : s_(text), vars_(vars) {}

    RationalFunction parse() {
        RationalFunction r = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return r;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
    const std::map<std::string, VarId>* vars_;  // null: intern on first sight

    [[noreturn]] void fail(const std::string& why) {
        throw std::invalid_argument("parse error at offset " + std::to_string(pos_) + ": " + why +
                                    " in \"" + std::string(s_) + "\"");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool eat(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    RationalFunction expr() {
        RationalFunction acc = term();
        for (;;) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                return acc;
        }
    }

    RationalFunction term() {
        RationalFunction acc = factor();
        for (;;) {
            if (eat('*')) {
                acc *= factor();
            } else if (eat('/')) {
                RationalFunction d = factor();
                if (d.is_zero()) fail("division by zero");
                acc /= d;
            } else {
                // Juxtaposition multiplies: "3i", "2 x", "(1+i)(1-i)".
                skip_ws();
                if (pos_ < s_.size() &&
                    (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                     s_[pos_] == '(' || s_[pos_] == '.')) {
                    acc *= factor();
                } else {
                    return acc;
                }
            }
        }
    }

    RationalFunction factor() {
        if (eat('-')) return -factor();
        RationalFunction b = base();
        skip_ws();
        if (eat('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected integer exponent");
            unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
            RationalFunction acc(1);
            for (unsigned long k = 0; k < e; ++k) acc *= b;
            return acc;
        }
        return b;
    }

    RationalFunction base() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RationalFunction r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                        s_[pos_] == '_'))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (name == "i")
                return RationalFunction(Polynomial(GaussianRational::i()));
            if (!vars_) return RationalFunction(Polynomial::variable(intern_var(name)));
            auto it = vars_->find(name);
            if (it == vars_->end()) fail("unknown identifier \"" + name + "\"");
            return RationalFunction(Polynomial::variable(it->second));
        }
        fail("unexpected character");
    }

    RationalFunction number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string intpart(s_.substr(start, pos_ - start));
        std::string fracpart;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            std::size_t fs = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            fracpart = std::string(s_.substr(fs, pos_ - fs));
            if (intpart.empty() && fracpart.empty()) fail("malformed number");
        }
        if (intpart.empty() && fracpart.empty()) fail("malformed number");
        long expo = 0;
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            bool negx = false;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
                negx = s_[pos_] == '-';
                ++pos_;
            }
            std::size_t es = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (es == pos_) {
                pos_ = save;  // not an exponent; leave for identifier parsing elsewhere
            } else {
                expo = std::stol(std::string(s_.substr(es, pos_ - es)));
                if (negx) expo = -expo;
            }
        }
        mpz_class num(intpart.empty() ? "0" : intpart);
        mpz_class den(1);
        for (char d : fracpart) {
            num = num * 10 + (d - '0');
            den *= 10;
        }
        mpq_class q(num, den);
        q.canonicalize();
        if (expo > 0)
            for (long k = 0; k < expo; ++k) q *= 10;
        else
            for (long k = 0; k < -expo; ++k) q /= 10;
        return RationalFunction(Polynomial(GaussianRational(q)));
    }
};

}  // namespace

RationalFunction parse_rational_function(std::string_view text,
                                         const std::map<std::string, VarId>& vars) {
    return ExprParser(text, &vars).parse();
}

RationalFunction parse_rational_function(std::string_view text) {
    return ExprParser(text, nullptr).parse();
}

Polynomial parse_polynomial(std::string_view text) {
    RationalFunction r = parse_rational_function(text);
    if (!r.is_polynomial())
        throw std::invalid_argument("expected a polynomial, got a proper rational function: " +
                                    std::string(text));
    return r.as_polynomial();
}

Polynomial parse_polynomial(std::string_view text, const std::map<std::string, VarId>& vars) {
    RationalFunction r = parse_rational_function(text, vars);
    if (!r.is_polynomial())
        throw std::invalid_argument("expected a polynomial, got a proper rational function: " +
                                    std::string(text));
    return r.as_polynomial();
}

GaussianRational parse_complex_literal(std::string_view text) {
    static const std::map<std::string, VarId> none;
    RationalFunction r = parse_rational_function(text, none);
    Polynomial p = r.as_polynomial();
    if (!p.is_constant()) throw std::invalid_argument("expected a constant literal");
    return p.constant_value();
}

}  // namespace pinch

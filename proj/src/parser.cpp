#include "evpos/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace evpos {

namespace {

enum class TokKind { Integer, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    TokKind kind;
    std::string text;
    std::size_t offset;
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            out.push_back({TokKind::Integer, text.substr(start, i - start), start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
            out.push_back({TokKind::Ident, text.substr(start, i - start), start});
            continue;
        }
        TokKind k;
        switch (c) {
            case '+': k = TokKind::Plus; break;
            case '-': k = TokKind::Minus; break;
            case '*': k = TokKind::Star; break;
            case '/': k = TokKind::Slash; break;
            case '^': k = TokKind::Caret; break;
            case '(': k = TokKind::LParen; break;
            case ')': k = TokKind::RParen; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
        out.push_back({k, text.substr(start, 1), start});
        ++i;
    }
    out.push_back({TokKind::End, "", n});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks, const std::vector<std::string>& variables)
        : toks_(std::move(toks)) {
        for (std::size_t i = 0; i < variables.size(); ++i) {
            if (!var_index_.emplace(variables[i], static_cast<int>(i)).second)
                throw std::invalid_argument("duplicate variable name: " + variables[i]);
        }
        nvars_ = static_cast<int>(variables.size());
    }

    LaurentPolynomial run() {
        LaurentPolynomial p = parse_expr();
        if (peek().kind != TokKind::End)
            throw ParseError("unexpected trailing input", peek().offset);
        return p;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }
    bool accept(TokKind k) {
        if (peek().kind == k) {
            ++pos_;
            return true;
        }
        return false;
    }

    LaurentPolynomial parse_expr() {
        bool negate = accept(TokKind::Minus);
        LaurentPolynomial p = parse_term();
        if (negate) p = -p;
        while (true) {
            if (accept(TokKind::Plus)) {
                p += parse_term();
            } else if (accept(TokKind::Minus)) {
                p -= parse_term();
            } else {
                return p;
            }
        }
    }

    LaurentPolynomial parse_term() {
        LaurentPolynomial p = parse_factor();
        while (accept(TokKind::Star)) p = p * parse_factor();
        return p;
    }

    Int parse_integer_token(const Token& t) {
        try {
            return std::stoll(t.text);
        } catch (const std::out_of_range&) {
            throw ParseError("integer literal out of range", t.offset);
        }
    }

    LaurentPolynomial parse_factor() {
        const Token& t = peek();
        bool base_is_variable = false;
        LaurentPolynomial base(0);
        int var = -1;

        if (t.kind == TokKind::Integer) {
            advance();
            Rational value(parse_integer_token(t));
            if (accept(TokKind::Slash)) {
                const Token& d = peek();
                if (d.kind != TokKind::Integer)
                    throw ParseError("expected an integer denominator", d.offset);
                advance();
                Int den = parse_integer_token(d);
                if (den == 0) throw ParseError("division by zero", d.offset);
                value /= den;
            }
            base = LaurentPolynomial::constant(nvars_, value);
        } else if (t.kind == TokKind::Ident) {
            advance();
            auto it = var_index_.find(t.text);
            if (it == var_index_.end())
                throw ParseError("unknown variable '" + t.text + "'", t.offset);
            var = it->second;
            base_is_variable = true;
            base = LaurentPolynomial::variable(nvars_, var);
        } else if (t.kind == TokKind::LParen) {
            advance();
            base = parse_expr();
            if (!accept(TokKind::RParen))
                throw ParseError("expected ')'", peek().offset);
        } else if (t.kind == TokKind::Slash) {
            throw ParseError("'/' is allowed only inside a rational literal", t.offset);
        } else {
            throw ParseError("expected a number, variable or '('", t.offset);
        }

        if (!accept(TokKind::Caret)) return base;

        bool neg_exp = accept(TokKind::Minus);
        const Token& e = peek();
        if (e.kind != TokKind::Integer)
            throw ParseError("expected an integer exponent", e.offset);
        advance();
        Int exp = parse_integer_token(e);
        if (neg_exp) exp = -exp;
        if (peek().kind == TokKind::Caret)
            throw ParseError("'^' does not associate; parenthesize", peek().offset);

        if (exp < 0 && !base_is_variable)
            throw ParseError("negative exponent allowed only on a bare variable", e.offset);

        if (base_is_variable) {
            ExponentVector m(static_cast<std::size_t>(nvars_), 0);
            m[static_cast<std::size_t>(var)] = exp;
            return LaurentPolynomial::monomial(nvars_, m, 1);
        }
        return base.pow(exp);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::map<std::string, int> var_index_;
    int nvars_ = 0;
};

std::string monomial_string(const ExponentVector& m, const std::vector<std::string>& variables) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!first) os << "*";
        first = false;
        os << variables[i];
        if (m[i] != 1) os << "^" << m[i];
    }
    return os.str();
}

// natural comparison: embedded digit runs compare numerically
bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        bool da = std::isdigit(static_cast<unsigned char>(a[i]));
        bool db = std::isdigit(static_cast<unsigned char>(b[j]));
        if (da && db) {
            std::size_t i2 = i, j2 = j;
            while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
            while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
            std::string na = a.substr(i, i2 - i), nb = b.substr(j, j2 - j);
            na.erase(0, na.find_first_not_of('0'));
            nb.erase(0, nb.find_first_not_of('0'));
            if (na.size() != nb.size()) return na.size() < nb.size();
            if (na != nb) return na < nb;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    return a.size() - i < b.size() - j;
}

}  // namespace

LaurentPolynomial parse_polynomial(const std::string& text,
                                   const std::vector<std::string>& variables) {
    Parser p(lex(text), variables);
    return p.run();
}

std::string format_polynomial(const LaurentPolynomial& p,
                              const std::vector<std::string>& variables) {
    if (static_cast<int>(variables.size()) != p.nvars())
        throw DimensionMismatchError("variable name list has wrong length");
    if (p.is_zero()) return "0";

    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        std::string mono = monomial_string(m, variables);
        if (mono.empty()) {
            os << rational_to_string(mag);
        } else if (mag == 1) {
            os << mono;
        } else {
            os << rational_to_string(mag) << "*" << mono;
        }
    }
    return os.str();
}

std::vector<std::string> collect_identifiers(const std::string& text) {
    std::set<std::string> seen;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            seen.insert(text.substr(start, i - start));
        } else {
            ++i;
        }
    }
    std::vector<std::string> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), natural_less);
    return out;
}

}  // namespace evpos

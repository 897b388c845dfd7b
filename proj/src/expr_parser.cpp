#include <algorithm>
#include <cctype>
#include <string>

#include "palfac/realnum.hpp"

// Recursive-descent parser for the field-element mini-language:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | primary
//   primary:= INT | 'sqrt' '(' INT ')' | '(' expr ')'
// Rationals are spelled p/q and fall out of exact division.
namespace palfac::realnum {

namespace {

struct Lexer {
    std::string_view src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= src.size();
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        skip_ws();
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "'", pos);
    }
    bool accept_word(std::string_view word) {
        skip_ws();
        if (src.substr(pos, word.size()) == word) {
            pos += word.size();
            return true;
        }
        return false;
    }
    mpz_class integer() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer literal", start);
        return mpz_class(std::string(src.substr(start, pos - start)), 10);
    }
};

long radicand_from(Lexer& lex) {
    const std::size_t at = lex.pos;
    lex.expect('(');
    const std::size_t num_at = lex.pos;
    mpz_class n = lex.integer();
    lex.expect(')');
    if (!n.fits_slong_p()) throw ParseError("radicand too large", num_at);
    const long d = n.get_si();
    if (d < 2) throw ParseError("radicand must be >= 2", num_at);
    for (long p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0) throw ParseError("radicand must be square-free", num_at);
    (void)at;
    return d;
}

struct Parser {
    Lexer lex;
    const FieldSpec& field;

    FieldElement expr() {
        FieldElement value = term();
        for (;;) {
            if (lex.accept('+'))
                value = value + term();
            else if (lex.accept('-'))
                value = value - term();
            else
                return value;
        }
    }

    FieldElement term() {
        FieldElement value = factor();
        for (;;) {
            if (lex.accept('*')) {
                value = value * factor();
            } else if (lex.accept('/')) {
                const std::size_t at = lex.pos;
                FieldElement rhs = factor();
                if (rhs.is_zero()) throw ParseError("division by zero", at);
                value = value / rhs;
            } else {
                return value;
            }
        }
    }

    FieldElement factor() {
        if (lex.accept('-')) return -factor();
        return primary();
    }

    FieldElement primary() {
        if (lex.accept_word("sqrt")) {
            const std::size_t at = lex.pos;
            const long d = radicand_from(lex);
            const auto& ds = field.radicands();
            if (std::find(ds.begin(), ds.end(), d) == ds.end())
                throw ParseError("sqrt(" + std::to_string(d) + ") not in the working field", at);
            return FieldElement::sqrt_of(d, field);
        }
        if (lex.accept('(')) {
            FieldElement value = expr();
            lex.expect(')');
            return value;
        }
        if (std::isdigit(static_cast<unsigned char>(lex.peek())))
            return FieldElement(mpq_class(lex.integer()), field);
        throw ParseError("expected number, sqrt(...) or parenthesized expression", lex.pos);
    }
};

} // namespace

std::vector<long> scan_radicands(std::string_view src) {
    Lexer lex{src};
    std::vector<long> found;
    while (!lex.eof()) {
        if (lex.accept_word("sqrt")) {
            found.push_back(radicand_from(lex));
        } else {
            ++lex.pos;
        }
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

FieldElement parse_expression(std::string_view src, const FieldSpec& field) {
    Parser parser{Lexer{src}, field};
    FieldElement value = parser.expr();
    if (!parser.lex.eof())
        throw ParseError("trailing input after expression", parser.lex.pos);
    return value;
}

FieldElement parse_expression(std::string_view src) {
    return parse_expression(src, FieldSpec(scan_radicands(src)));
}

} // namespace palfac::realnum

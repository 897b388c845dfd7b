#pragma once

#include <gmpxx.h>

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "palfac/errors.hpp"

// Exact arithmetic over real multi-quadratic fields Q(sqrt(d1),...,sqrt(dk)),
// k <= 3. Elements carry exact rational coordinates in the canonical basis
// (all products of subsets of the sqrt(d_i)), so the zero test is exact and
// every comparison is decidable: nonzero values resolve their sign by
// evaluating enclosing balls at doubling precision.
namespace palfac::realnum {

namespace detail {
struct FieldData;
}

class FieldSpec {
public:
    // The rational field Q (no radicands).
    FieldSpec();
    // radicands: pairwise distinct square-free integers >= 2, at most 3 of
    // them, with no nonempty subset whose product is a perfect square (that
    // would collapse the basis). Stored sorted ascending.
    explicit FieldSpec(std::vector<long> radicands);

    const std::vector<long>& radicands() const;
    int radical_count() const;
    // 2^k basis elements; coordinate i corresponds to the product of
    // sqrt(d_j) over the set bits j of i.
    int degree() const;

    bool operator==(const FieldSpec& other) const;
    bool operator!=(const FieldSpec& other) const { return !(*this == other); }

private:
    std::shared_ptr<const detail::FieldData> data_;
    friend class FieldElement;
    friend class BallEvaluator;
};

// Rigorous enclosure of a field element's value: the exact value lies in
// [midpoint - radius, midpoint + radius]. Midpoint and radius are dyadic
// (binary-float) values held exactly as rationals.
struct Ball {
    mpq_class midpoint;
    mpq_class radius;
    int precision_bits = 0;

    bool contains(const mpq_class& x) const;
};

class FieldElement {
public:
    // Zero in Q.
    FieldElement();
    // A rational constant embedded in the given field.
    explicit FieldElement(mpq_class value, FieldSpec field = FieldSpec());
    // Element from explicit coordinates (size must equal field.degree()).
    FieldElement(FieldSpec field, std::vector<mpq_class> coords);

    static FieldElement zero(const FieldSpec& field);
    static FieldElement one(const FieldSpec& field);
    static FieldElement integer(long n, const FieldSpec& field = FieldSpec());
    // sqrt(d) for a radicand d of `field`.
    static FieldElement sqrt_of(long d, const FieldSpec& field);

    const FieldSpec& field() const { return field_; }
    const std::vector<mpq_class>& coords() const { return coords_; }

    bool is_zero() const;
    // True when all non-rational coordinates vanish.
    bool is_rational() const;
    // The rational coordinate (exact value when is_rational()).
    const mpq_class& rational_part() const { return coords_[0]; }

    // Re-express in a superfield whose radicands contain this field's.
    FieldElement promoted(const FieldSpec& superfield) const;

    FieldElement operator-() const;
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
    FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
    FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

    bool operator==(const FieldElement& other) const;
    bool operator!=(const FieldElement& other) const { return !(*this == other); }

    // Multiplicative inverse; DivisionByZero on zero.
    FieldElement inverse() const;

    // Decimal rendering of the expression, e.g. "(-1/2)+(1/2)*sqrt(5)".
    std::string to_string() const;

private:
    static const std::vector<mpz_class>& basis_products(const FieldSpec& f);

    FieldSpec field_;
    std::vector<mpq_class> coords_;
};

enum class ArithOp { add, sub, mul, div };

// Spec-level entry point; operands must share one FieldSpec.
FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op);

// Process-wide ceiling for ball precision escalation (bits). The default of
// 8192 is a resource guard, not a correctness bound: sign queries on nonzero
// values resolve below it in all supported uses.
int precision_cap();
void set_precision_cap(int bits);

// Enclosure of the value at the given working precision.
Ball evaluate_ball(const FieldElement& a, int precision_bits);

// -1, 0, +1. Zero is decided exactly from the coordinates; otherwise balls
// are evaluated at 128, 256, ... bits up to max_bits (0 = global cap).
int sign_of(const FieldElement& a, int max_bits = 0);

// Largest integer m with m <= a < m+1. Exact at integer boundaries.
long floor_of(const FieldElement& a, int max_bits = 0);

// Convenience comparisons built on sign_of.
int compare(const FieldElement& a, const FieldElement& b);
bool less(const FieldElement& a, const FieldElement& b);
bool less_equal(const FieldElement& a, const FieldElement& b);

// Rank over Q of the coordinate matrix of the given elements (exact
// Gaussian elimination). All elements must share one field.
int rational_rank(std::span<const FieldElement> vectors);

// ---- expression mini-language ----
// Grammar: integer literals, rationals via '/', sqrt(n) for square-free
// n >= 2, binary + - * /, unary minus, parentheses. Whitespace-insensitive.
// Parse errors carry the byte offset of the offending token.

// Radicands mentioned by the expression (sorted, deduplicated).
std::vector<long> scan_radicands(std::string_view src);

// Parse and evaluate within the given field; sqrt(d) requires d to be one of
// the field's radicands.
FieldElement parse_expression(std::string_view src, const FieldSpec& field);

// Parse in the field spanned by the expression's own radicands.
FieldElement parse_expression(std::string_view src);

} // namespace palfac::realnum

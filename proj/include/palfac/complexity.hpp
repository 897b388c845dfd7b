#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "palfac/wordcore.hpp"

// Factor complexity C(n), palindromic complexity P(n) and the derived
// quantities of the main inequality: psum(n) = P(n)+P(n+1) against
// bound(n) = dC(n)+2. P is indexed by an eertree, cross-checked in tests by
// a quadratic oracle.
namespace palfac::complexity {

using wordcore::FiniteWord;
using wordcore::LanguageTable;
using wordcore::Letter;
using wordcore::WordWindow;

// Palindromic tree: one node per distinct non-empty palindromic factor of the
// indexed sequence, built online in time linear in the sequence length.
class PalindromicIndex {
public:
    struct Node {
        int length;                     // -1 and 0 for the two roots
        std::uint32_t suffix_link;      // longest proper palindromic suffix
        std::vector<std::int32_t> next; // per-letter extension a..a, -1 if absent
    };

    static PalindromicIndex build(std::span<const Letter> letters, int alphabet_size);

    const std::vector<Node>& nodes() const { return nodes_; }
    // Number of distinct non-empty palindromic factors (excludes the roots).
    std::size_t distinct_palindromes() const { return nodes_.size() - 2; }
    // P(0..n_max); P(0) is reported as 1 for non-empty input (the empty word
    // is a palindrome) and 0 for empty input.
    std::vector<std::uint32_t> counts_by_length(int n_max) const;

private:
    std::vector<Node> nodes_;
    bool empty_input_ = true;
};

struct PalCounts {
    std::vector<std::uint32_t> count; // size n_max+1
    std::vector<std::uint8_t> stable; // per length, via half-window cross-check
};

// P(n) for n in [0, n_max]; requires n_max <= window guard.
PalCounts palindromic_complexity(const WordWindow& window, int n_max);

// C(n) for n in [0, table.n_max()].
std::vector<std::uint32_t> factor_complexity(const LanguageTable& table);

// Per-n table of C, dC, P, psum, bound and slack. Rows cover n in [0, n_max];
// the underlying counts extend one level further so every row is complete.
struct ComplexityProfile {
    std::string family_label;
    int n_max = 0;
    std::vector<std::uint32_t> c;        // size n_max+2
    std::vector<std::uint32_t> p;        // size n_max+2
    std::vector<std::uint8_t> level_stable; // size n_max+2: C and P both stabilized
    std::vector<std::uint8_t> reversal_closed; // size n_max+2; valid on stable levels
    bool eventually_periodic = false;    // some stable n >= 1 has C(n) <= n
    int periodic_witness = -1;

    long delta_c(int n) const { return static_cast<long>(c[n + 1]) - c[n]; }
    long psum(int n) const { return static_cast<long>(p[n]) + p[n + 1]; }
    long bound(int n) const { return delta_c(n) + 2; }
    long slack(int n) const { return bound(n) - psum(n); }
    // A row mixes levels n and n+1; it is trusted when both are stable.
    bool row_stable(int n) const { return level_stable[n] && level_stable[n + 1]; }

    // True when every stable level in [1, n_max+1] is closed under reversal
    // and at least one such level exists.
    bool closed_on_stable_levels() const;
    // True when some stable level is not closed under reversal.
    bool not_closed_witness(int* witness = nullptr) const;

    // CSV with header n,C,dC,P,Psum,bound,slack,stable.
    std::string to_csv() const;
};

ComplexityProfile build_profile(const WordWindow& window, int n_max);
// Reuses an existing table; it must extend to at least n_max+1.
ComplexityProfile build_profile(const LanguageTable& table, int n_max);

// Smallest R such that every length-R segment of the window contains every
// length-n factor of the window: n plus the largest number of letters between
// consecutive occurrences of any factor. A lower bound for the true R(n).
long recurrence_estimate(const WordWindow& window, int n);

struct OracleCounts {
    std::vector<std::uint32_t> factors;     // size n_max+1
    std::vector<std::uint32_t> palindromes; // size n_max+1
};

// Direct substring-set enumeration; quadratic, test use only. Windows longer
// than 10^4 are refused.
OracleCounts naive_oracles(const WordWindow& window, int n_max);

} // namespace palfac::complexity

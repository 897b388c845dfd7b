#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "palfac/errors.hpp"

// Alphabets, finite words, windows of infinite words, and the factor-language
// table every analysis consumes. Letters are 0-based integers internally;
// families labeled 1..r (interval exchanges) carry a label_base so reports
// can restore the original letters.
namespace palfac::wordcore {

using Letter = std::uint8_t;

struct FiniteWord {
    std::vector<Letter> letters;
    int alphabet_size = 2;

    FiniteWord() = default;
    FiniteWord(std::vector<Letter> ls, int alphabet) : letters(std::move(ls)), alphabet_size(alphabet) {}

    // "0102" -> letters {0,1,0,2}; digits only, for small alphabets.
    static FiniteWord from_digits(std::string_view digits, int alphabet_size);

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }

    bool operator==(const FiniteWord& o) const { return letters == o.letters; }
    bool operator!=(const FiniteWord& o) const { return letters != o.letters; }
    bool operator<(const FiniteWord& o) const { return letters < o.letters; }

    // Letters rendered as integers (shifted by label_base); joined with '.'
    // when the alphabet needs more than one digit.
    std::string to_string(int label_base = 0) const;
};

FiniteWord reverse(const FiniteWord& w);
bool is_palindrome(const FiniteWord& w);

// A finite window of an infinite word. origin_index is the position of
// letters[0] in the infinite word: 0 for one-sided prefixes, -H for
// bidirectional windows. guard is the largest factor length analyses trust;
// the default window_length/4 keeps analyzed lengths well inside the window.
class WordWindow {
public:
    WordWindow(std::vector<Letter> letters, int alphabet_size, long origin_index,
               std::string family_label, int label_base = 0);

    // Finite-word analysis mode: the window IS the whole word, guard = length.
    static WordWindow full_analysis(std::vector<Letter> letters, int alphabet_size,
                                    std::string family_label = "finite");

    std::span<const Letter> letters() const { return *letters_; }
    std::size_t length() const { return letters_->size(); }
    int alphabet_size() const { return alphabet_size_; }
    long origin_index() const { return origin_index_; }
    int label_base() const { return label_base_; }
    const std::string& family_label() const { return family_label_; }
    int guard() const { return guard_; }

    // Letter at an absolute position of the infinite word.
    Letter at_abs(long index) const;

private:
    std::shared_ptr<const std::vector<Letter>> letters_;
    int alphabet_size_;
    long origin_index_;
    std::string family_label_;
    int label_base_;
    int guard_;
};

// Distinct factors of each length n in [0, n_max], with per-level stability
// flags. A level is stable when the central half-window already shows the
// same factor count; unstable levels are refused by downstream checks.
class LanguageTable {
public:
    const WordWindow& window() const { return window_; }
    int n_max() const { return n_max_; }

    std::uint32_t count(int n) const;
    bool stable(int n) const;

    // Factors of one length, indexed 0..count(n)-1 in lexicographic order.
    FiniteWord factor(int n, std::uint32_t id) const;
    std::uint32_t rep_position(int n, std::uint32_t id) const;

    // Id of the factor occupying window positions [pos, pos+n).
    std::optional<std::uint32_t> id_at(int n, std::size_t pos) const;
    // Id of a factor given by content; nullopt when absent.
    std::optional<std::uint32_t> find(const FiniteWord& w) const;
    bool contains(const FiniteWord& w) const { return find(w).has_value(); }

    // True iff the reversal of every length-n factor is also a factor.
    // Throws UnstableLevel when level n is not stable.
    bool closed_under_reversal(int n) const;

private:
    friend LanguageTable collect_factors(const WordWindow&, int);

    struct Impl;
    LanguageTable(WordWindow window, int n_max, std::shared_ptr<const Impl> impl);

    void check_level(int n) const;

    WordWindow window_;
    int n_max_;
    std::shared_ptr<const Impl> impl_; // immutable once built, shareable
};

LanguageTable collect_factors(const WordWindow& window, int n_max);

// Word-file format: header line `# origin=<int> alphabet=<int> family=<label>`
// then the letters (label_base restored) space-separated on one line.
std::string to_word_file(const WordWindow& window);

} // namespace palfac::wordcore

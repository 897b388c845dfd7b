#include "palfac/wordcore.hpp"

#include <algorithm>
#include <sstream>

#include "palfac/detail/factor_indexer.hpp"

namespace palfac::wordcore {

namespace detail {

FactorIndexer::FactorIndexer(std::span<const std::uint8_t> letters, int max_len)
    : n_(letters.size()), max_len_(max_len) {
    // Level 0: single letters. Further levels only up to the largest power
    // of two not exceeding max_len (capped by the window itself).
    int levels = 1;
    while ((1 << levels) <= max_len_ && (std::size_t(1) << levels) <= n_) ++levels;

    ranks_.resize(levels);
    ranks_[0].assign(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) ranks_[0][i] = letters[i];

    // Counting-sort based doubling; values stay < n_ + 1.
    std::vector<std::uint32_t> order(n_), tmp(n_), bucket;
    for (std::size_t i = 0; i < n_; ++i) order[i] = static_cast<std::uint32_t>(i);

    for (int j = 1; j < levels; ++j) {
        const std::size_t shift = std::size_t(1) << (j - 1);
        const auto& prev = ranks_[j - 1];
        auto second = [&](std::uint32_t i) -> std::uint32_t {
            return i + shift < n_ ? prev[i + shift] + 1 : 0;
        };

        bucket.assign(n_ + 2, 0);
        for (std::size_t i = 0; i < n_; ++i) ++bucket[second(static_cast<std::uint32_t>(i))];
        for (std::size_t b = 1; b < bucket.size(); ++b) bucket[b] += bucket[b - 1];
        for (std::size_t i = n_; i-- > 0;) tmp[--bucket[second(order[i])]] = order[i];

        bucket.assign(n_ + 2, 0);
        for (std::size_t i = 0; i < n_; ++i) ++bucket[prev[i]];
        for (std::size_t b = 1; b < bucket.size(); ++b) bucket[b] += bucket[b - 1];
        for (std::size_t i = n_; i-- > 0;) order[--bucket[prev[tmp[i]]]] = tmp[i];

        auto& cur = ranks_[j];
        cur.assign(n_, 0);
        std::uint32_t next_rank = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (i > 0) {
                const std::uint32_t a = order[i - 1], b = order[i];
                if (prev[a] != prev[b] || second(a) != second(b)) ++next_rank;
            }
            cur[order[i]] = next_rank;
        }
    }
}

} // namespace detail

// ---- FiniteWord ----

FiniteWord FiniteWord::from_digits(std::string_view digits, int alphabet_size) {
    std::vector<Letter> letters;
    letters.reserve(digits.size());
    for (char c : digits) {
        if (c < '0' || c > '9') throw InvalidSpec("from_digits expects decimal digits");
        letters.push_back(static_cast<Letter>(c - '0'));
    }
    FiniteWord w(std::move(letters), alphabet_size);
    for (Letter l : w.letters)
        if (l >= alphabet_size) throw InvalidSpec("letter exceeds alphabet size");
    return w;
}

std::string FiniteWord::to_string(int label_base) const {
    std::ostringstream out;
    const bool wide = alphabet_size + label_base > 10;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (wide && i > 0) out << '.';
        out << static_cast<int>(letters[i]) + label_base;
    }
    return out.str();
}

FiniteWord reverse(const FiniteWord& w) {
    FiniteWord r = w;
    std::reverse(r.letters.begin(), r.letters.end());
    return r;
}

bool is_palindrome(const FiniteWord& w) {
    const auto& ls = w.letters;
    for (std::size_t i = 0, j = ls.size(); i < j / 2; ++i)
        if (ls[i] != ls[j - 1 - i]) return false;
    return true;
}

// ---- WordWindow ----

WordWindow::WordWindow(std::vector<Letter> letters, int alphabet_size, long origin_index,
                       std::string family_label, int label_base)
    : letters_(std::make_shared<const std::vector<Letter>>(std::move(letters))),
      alphabet_size_(alphabet_size),
      origin_index_(origin_index),
      family_label_(std::move(family_label)),
      label_base_(label_base),
      guard_(static_cast<int>(letters_->size() / 4)) {
    if (letters_->empty()) throw InvalidSpec("window must be non-empty");
    if (alphabet_size_ < 1 || alphabet_size_ > 255)
        throw InvalidSpec("alphabet size out of range");
    for (Letter l : *letters_)
        if (l >= alphabet_size_) throw InvalidSpec("window letter exceeds alphabet size");
    if (label_base_ != 0 && label_base_ != 1) throw InvalidSpec("label base must be 0 or 1");
}

WordWindow WordWindow::full_analysis(std::vector<Letter> letters, int alphabet_size,
                                     std::string family_label) {
    WordWindow w(std::move(letters), alphabet_size, 0, std::move(family_label), 0);
    w.guard_ = static_cast<int>(w.length());
    return w;
}

Letter WordWindow::at_abs(long index) const {
    const long rel = index - origin_index_;
    if (rel < 0 || rel >= static_cast<long>(length()))
        throw OutOfDomain("absolute index outside window");
    return (*letters_)[static_cast<std::size_t>(rel)];
}

// ---- LanguageTable ----

struct LanguageTable::Impl {
    struct Level {
        std::vector<std::uint32_t> reps; // lexicographically sorted start positions
        detail::FlatMap64 ids;           // content key -> index into reps
        std::uint32_t count_half = 0;
        bool stable = false;
    };

    detail::FactorIndexer indexer;
    std::vector<Level> levels;

    Impl(std::span<const Letter> letters, int max_len) : indexer(letters, max_len) {}
};

LanguageTable::LanguageTable(WordWindow window, int n_max, std::shared_ptr<const Impl> impl)
    : window_(std::move(window)), n_max_(n_max), impl_(std::move(impl)) {}

void LanguageTable::check_level(int n) const {
    if (n < 0 || n > n_max_)
        throw GuardExceeded("level " + std::to_string(n) + " outside table range [0," +
                            std::to_string(n_max_) + "]");
}

std::uint32_t LanguageTable::count(int n) const {
    check_level(n);
    return n == 0 ? 1 : static_cast<std::uint32_t>(impl_->levels[n].reps.size());
}

bool LanguageTable::stable(int n) const {
    check_level(n);
    return impl_->levels[n].stable;
}

FiniteWord LanguageTable::factor(int n, std::uint32_t id) const {
    const std::uint32_t pos = rep_position(n, id);
    const auto letters = window_.letters();
    return FiniteWord(std::vector<Letter>(letters.begin() + pos, letters.begin() + pos + n),
                      window_.alphabet_size());
}

std::uint32_t LanguageTable::rep_position(int n, std::uint32_t id) const {
    check_level(n);
    if (n == 0) {
        if (id != 0) throw OutOfDomain("empty factor has a single id");
        return 0;
    }
    const auto& reps = impl_->levels[n].reps;
    if (id >= reps.size()) throw OutOfDomain("factor id out of range");
    return reps[id];
}

std::optional<std::uint32_t> LanguageTable::id_at(int n, std::size_t pos) const {
    check_level(n);
    if (pos + n > window_.length()) return std::nullopt;
    if (n == 0) return 0;
    const std::uint32_t* id = impl_->levels[n].ids.find(impl_->indexer.key(n, pos));
    if (!id) return std::nullopt;
    return *id;
}

std::optional<std::uint32_t> LanguageTable::find(const FiniteWord& w) const {
    const int n = static_cast<int>(w.size());
    check_level(n);
    if (n == 0) return 0;
    const auto letters = window_.letters();
    const auto& reps = impl_->levels[n].reps;
    // Binary search by content against the lexicographically sorted reps.
    auto cmp = [&](std::uint32_t rep, const FiniteWord& word) {
        return std::lexicographical_compare(letters.begin() + rep, letters.begin() + rep + n,
                                            word.letters.begin(), word.letters.end());
    };
    auto it = std::lower_bound(reps.begin(), reps.end(), w, cmp);
    if (it == reps.end()) return std::nullopt;
    if (!std::equal(letters.begin() + *it, letters.begin() + *it + n, w.letters.begin()))
        return std::nullopt;
    return static_cast<std::uint32_t>(it - reps.begin());
}

bool LanguageTable::closed_under_reversal(int n) const {
    check_level(n);
    if (!stable(n))
        throw UnstableLevel("level " + std::to_string(n) + " is not stable");
    for (std::uint32_t id = 0; id < count(n); ++id)
        if (!contains(reverse(factor(n, id)))) return false;
    return true;
}

LanguageTable collect_factors(const WordWindow& window, int n_max) {
    if (n_max < 0) throw InvalidSpec("n_max must be non-negative");
    if (n_max > window.guard())
        throw GuardExceeded("n_max " + std::to_string(n_max) + " exceeds window guard " +
                            std::to_string(window.guard()));

    const auto letters = window.letters();
    const std::size_t n_len = letters.size();
    auto impl = std::make_shared<LanguageTable::Impl>(letters, std::max(1, n_max));

    // Central half-window for the stability cross-check.
    const std::size_t half_start = n_len / 4;
    const std::size_t half_len = n_len / 2;
    std::optional<detail::FactorIndexer> half;
    if (half_len >= 1 && n_max >= 1)
        half.emplace(letters.subspan(half_start, half_len),
                     std::max(1, std::min<int>(n_max, static_cast<int>(half_len))));

    auto& levels = impl->levels;
    levels.resize(n_max + 1);
    levels[0].stable = true;
    levels[0].count_half = 1;

    detail::FlatMap64 seen, seen_half;
    for (int n = 1; n <= n_max; ++n) {
        auto& level = levels[n];
        if (static_cast<std::size_t>(n) <= n_len) {
            seen.clear();
            for (std::size_t i = 0; i + n <= n_len; ++i)
                if (seen.insert(impl->indexer.key(n, i), 0).second)
                    level.reps.push_back(static_cast<std::uint32_t>(i));
            std::sort(level.reps.begin(), level.reps.end(),
                      [&](std::uint32_t a, std::uint32_t b) { return impl->indexer.less(n, a, b); });
            for (std::uint32_t id = 0; id < level.reps.size(); ++id)
                level.ids.insert(impl->indexer.key(n, level.reps[id]), id);
        }
        if (half && static_cast<std::size_t>(n) <= half_len) {
            seen_half.clear();
            for (std::size_t i = 0; i + n <= half_len; ++i)
                seen_half.insert(half->key(n, i), 0);
            level.count_half = static_cast<std::uint32_t>(seen_half.size());
        }
        level.stable = level.count_half == level.reps.size() && !level.reps.empty();
    }

    return LanguageTable(window, n_max, std::move(impl));
}

std::string to_word_file(const WordWindow& window) {
    std::ostringstream out;
    out << "# origin=" << window.origin_index() << " alphabet=" << window.alphabet_size()
        << " family=" << window.family_label() << "\n";
    const auto letters = window.letters();
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) out << ' ';
        out << static_cast<int>(letters[i]) + window.label_base();
    }
    out << "\n";
    return out.str();
}

} // namespace palfac::wordcore

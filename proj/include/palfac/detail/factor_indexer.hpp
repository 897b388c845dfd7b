#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace palfac::wordcore::detail {

// Open-addressing hash map from 64-bit keys to 32-bit values. The factor
// tables probe this tens of millions of times per window, which is what
// rules out unordered_map here. Key ~0ull is reserved.
class FlatMap64 {
public:
    explicit FlatMap64(std::size_t expected = 0) { rehash(capacity_for(expected)); }

    // Inserts key -> fresh if absent. Returns (stored value, inserted).
    std::pair<std::uint32_t, bool> insert(std::uint64_t key, std::uint32_t fresh) {
        if ((count_ + 1) * 3 > (mask_ + 1) * 2) rehash((mask_ + 1) * 2);
        std::size_t slot = probe(key);
        if (keys_[slot] == kEmpty) {
            keys_[slot] = key;
            vals_[slot] = fresh;
            ++count_;
            return {fresh, true};
        }
        return {vals_[slot], false};
    }

    const std::uint32_t* find(std::uint64_t key) const {
        std::size_t slot = probe(key);
        return keys_[slot] == kEmpty ? nullptr : &vals_[slot];
    }

    std::size_t size() const { return count_; }

    void clear() {
        std::fill(keys_.begin(), keys_.end(), kEmpty);
        count_ = 0;
    }

private:
    static constexpr std::uint64_t kEmpty = ~0ull;

    static std::size_t capacity_for(std::size_t expected) {
        std::size_t cap = 16;
        while (cap * 2 < expected * 3) cap *= 2;
        return cap;
    }

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::size_t probe(std::uint64_t key) const {
        std::size_t slot = mix(key) & mask_;
        while (keys_[slot] != kEmpty && keys_[slot] != key) slot = (slot + 1) & mask_;
        return slot;
    }

    void rehash(std::size_t cap) {
        std::vector<std::uint64_t> old_keys = std::move(keys_);
        std::vector<std::uint32_t> old_vals = std::move(vals_);
        keys_.assign(cap, kEmpty);
        vals_.assign(cap, 0);
        mask_ = cap - 1;
        count_ = 0;
        for (std::size_t i = 0; i < old_keys.size(); ++i)
            if (old_keys[i] != kEmpty) insert(old_keys[i], old_vals[i]);
    }

    std::vector<std::uint64_t> keys_;
    std::vector<std::uint32_t> vals_;
    std::size_t mask_ = 0;
    std::size_t count_ = 0;
};

// Rank-doubling index over a fixed letter sequence. After O(N log L)
// preprocessing it hands out exact 64-bit content keys for any substring of
// length <= max_len in O(1): two substrings of equal length have equal keys
// iff they are equal letterwise, and key pairs compare lexicographically.
class FactorIndexer {
public:
    FactorIndexer(std::span<const std::uint8_t> letters, int max_len);

    std::size_t size() const { return n_; }
    int max_len() const { return max_len_; }

    // Content key of letters[i, i+len); requires 1 <= len <= max_len and
    // i + len <= size().
    std::uint64_t key(int len, std::size_t i) const {
        const int j = level_for(len);
        const std::uint64_t hi = ranks_[j][i];
        const std::uint64_t lo = ranks_[j][i + len - (std::size_t(1) << j)];
        return (hi << 32) | lo;
    }

    // Lexicographic order of equal-length substrings.
    bool less(int len, std::size_t i, std::size_t j) const { return key(len, i) < key(len, j); }

private:
    static int level_for(int len) {
        int j = 0;
        while ((2 << j) <= len) ++j;
        return j;
    }

    std::size_t n_;
    int max_len_;
    std::vector<std::vector<std::uint32_t>> ranks_; // ranks_[j][i]: rank of s[i, i+2^j)
};

} // namespace palfac::wordcore::detail

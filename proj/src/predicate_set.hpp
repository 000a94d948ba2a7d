#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace aacbr {

/// A subset of a predicate vocabulary, as a fixed-universe bitset.
/// Bit i corresponds to predicate i of the owning vocabulary.
class PredicateSet {
public:
    PredicateSet() = default;
    explicit PredicateSet(int universe_size)
        : nbits_(universe_size), words_(static_cast<size_t>((universe_size + 63) / 64), 0) {}

    int universe_size() const { return nbits_; }

    void set(int i) { words_[static_cast<size_t>(i) >> 6] |= (std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (words_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1; }

    int count() const {
        int c = 0;
        for (std::uint64_t w : words_) c += std::popcount(w);
        return c;
    }
    bool empty() const {
        for (std::uint64_t w : words_) if (w) return false;
        return true;
    }

    bool is_subset_of(const PredicateSet& other) const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }
    bool is_proper_subset_of(const PredicateSet& other) const {
        return is_subset_of(other) && words_ != other.words_;
    }

    friend bool operator==(const PredicateSet&, const PredicateSet&) = default;

    /// Deterministic total order: cardinality first, then word-wise value.
    /// Compatible with strict inclusion (a proper subset sorts first).
    bool before(const PredicateSet& other) const {
        const int ca = count(), cb = other.count();
        if (ca != cb) return ca < cb;
        return words_ < other.words_;
    }

    /// Member predicate indices in ascending order.
    std::vector<int> members() const {
        std::vector<int> out;
        for (int i = 0; i < nbits_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

private:
    int nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace aacbr

#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "selfverify/error.hpp"

namespace selfverify {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;
using Digits = std::vector<std::uint32_t>;

/// Alphabet of digit tuples. Letters are numbered in the mixed-radix order
/// with track 0 most significant, so letter order is lexicographic order on
/// the digit tuples.
class TupleAlphabet {
public:
    TupleAlphabet() = default;

    explicit TupleAlphabet(std::vector<std::uint32_t> radices) : radices_(std::move(radices)) {
        if (radices_.empty()) throw error("tuple alphabet needs at least one track");
        size_ = 1;
        for (auto r : radices_) {
            if (r < 2) throw error("every track radix must be at least 2");
            size_ *= r;
            if (size_ > (1u << 24)) throw error("tuple alphabet too large");
        }
    }

    static TupleAlphabet uniform(std::size_t arity, std::uint32_t radix) {
        return TupleAlphabet(std::vector<std::uint32_t>(arity, radix));
    }

    std::size_t arity() const noexcept { return radices_.size(); }
    std::size_t size() const noexcept { return size_; }
    const std::vector<std::uint32_t>& radices() const noexcept { return radices_; }
    std::uint32_t radix(std::size_t track) const { return radices_.at(track); }

    Letter encode(const Digits& digits) const {
        if (digits.size() != arity()) throw error("digit tuple has wrong arity");
        Letter l = 0;
        for (std::size_t t = 0; t < arity(); ++t) {
            if (digits[t] >= radices_[t]) throw error("digit out of range for track");
            l = l * radices_[t] + digits[t];
        }
        return l;
    }

    Digits decode(Letter letter) const {
        Digits d(arity());
        for (std::size_t t = arity(); t-- > 0;) {
            d[t] = letter % radices_[t];
            letter /= radices_[t];
        }
        return d;
    }

    std::uint32_t digit(Letter letter, std::size_t track) const {
        for (std::size_t t = arity(); t-- > track + 1;) letter /= radices_[t];
        return letter % radices_[track];
    }

    /// The all-zeros letter is always letter 0.
    static constexpr Letter zero() noexcept { return 0; }

    bool operator==(const TupleAlphabet&) const = default;

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t t = 0; t < arity(); ++t) {
            if (t) s += ",";
            s += std::to_string(radices_[t]);
        }
        return s + "]";
    }

private:
    std::vector<std::uint32_t> radices_;
    std::size_t size_ = 0;
};

inline void require_same_alphabet(const TupleAlphabet& a, const TupleAlphabet& b) {
    if (!(a == b))
        throw alphabet_mismatch("alphabet mismatch: " + a.to_string() + " vs " + b.to_string());
}

/// Shortlex order on words: shorter first, then lexicographic by letter.
struct ShortlexLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept {
        std::size_t h = 1469598103934665603ull ^ w.size();
        for (auto l : w) {
            h ^= l + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

inline Word concat(const Word& a, const Word& b) {
    Word w;
    w.reserve(a.size() + b.size());
    w.insert(w.end(), a.begin(), a.end());
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

/// Renders a word as a sequence of digit tuples, e.g. "[0,1][1,0]".
inline std::string format_word(const TupleAlphabet& alphabet, const Word& w) {
    if (w.empty()) return "ε";
    std::string s;
    for (auto l : w) {
        auto d = alphabet.decode(l);
        s += "[";
        for (std::size_t t = 0; t < d.size(); ++t) {
            if (t) s += ",";
            s += std::to_string(d[t]);
        }
        s += "]";
    }
    return s;
}

}  // namespace selfverify

#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "selfverify/dfa.hpp"
#include "selfverify/error.hpp"
#include "selfverify/io.hpp"

namespace selfverify {

using Natural = std::uint64_t;

enum class SystemKind { base_k, zeckendorf, tribonacci, custom };

/// A greedy positional numeration system read msd-first. Every natural number
/// has exactly one leading-zero-free valid representation; the validity
/// recognizer accepts it with any number of leading zeros.
class NumerationSystem {
public:
    static NumerationSystem base(std::uint32_t k) {
        if (k < 2) throw unsupported_system("base must be at least 2");
        NumerationSystem ns;
        ns.kind_ = SystemKind::base_k;
        ns.name_ = "base" + std::to_string(k);
        ns.radix_ = k;
        ns.validity_ = CompleteDfa::accept_all(TupleAlphabet({k}));
        ns.recurrence_ = {static_cast<std::int64_t>(k)};
        ns.places_ = grow_places({1}, ns.recurrence_);
        return ns;
    }

    /// Places 1, 2, 3, 5, 8, ...; no two adjacent 1 digits.
    static NumerationSystem zeckendorf() {
        NumerationSystem ns;
        ns.kind_ = SystemKind::zeckendorf;
        ns.name_ = "zeckendorf";
        ns.radix_ = 2;
        ns.validity_ = no_run_of_ones(2);
        ns.recurrence_ = {1, 1};
        ns.places_ = grow_places({1, 2}, ns.recurrence_);
        return ns;
    }

    /// Places 1, 2, 4, 7, 13, 24, ...; no three consecutive 1 digits.
    static NumerationSystem tribonacci() {
        NumerationSystem ns;
        ns.kind_ = SystemKind::tribonacci;
        ns.name_ = "tribonacci";
        ns.radix_ = 2;
        ns.validity_ = no_run_of_ones(3);
        ns.recurrence_ = {1, 1, 1};
        ns.places_ = grow_places({1, 2, 4}, ns.recurrence_);
        return ns;
    }

    /// User-defined system from a validity recognizer and its place values.
    static NumerationSystem custom(std::string name, CompleteDfa validity, std::vector<Natural> places) {
        if (validity.arity() != 1) throw unsupported_system("validity recognizer must have one track");
        if (places.empty() || places[0] != 1) throw unsupported_system("place values must start at 1");
        for (std::size_t i = 1; i < places.size(); ++i)
            if (places[i] <= places[i - 1]) throw unsupported_system("place values must be increasing");
        NumerationSystem ns;
        ns.kind_ = SystemKind::custom;
        ns.name_ = std::move(name);
        ns.radix_ = validity.alphabet().radix(0);
        ns.validity_ = std::move(validity);
        ns.places_ = std::move(places);
        return ns;
    }

    /// Loads a custom system: a one-track DFA in canonical format plus a
    /// `places` line.
    static NumerationSystem from_file(const std::string& path) {
        auto file = parse_automaton(read_text_file(path));
        if (!file.places) throw parse_error(path + ": missing 'places' line");
        auto name = path;
        if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
        return custom(name, std::move(file.dfa), std::move(*file.places));
    }

    /// base<k>, msd_<k>, zeckendorf / fib / msd_fib, tribonacci / trib / msd_trib.
    static NumerationSystem by_name(const std::string& name) {
        if (name == "zeckendorf" || name == "fib" || name == "msd_fib" || name == "fibonacci") return zeckendorf();
        if (name == "tribonacci" || name == "trib" || name == "msd_trib") return tribonacci();
        std::string digits;
        if (name.rfind("base", 0) == 0) digits = name.substr(4);
        else if (name.rfind("msd_", 0) == 0) digits = name.substr(4);
        else digits = name;
        if (!digits.empty() && digits.size() < 6 && digits.find_first_not_of("0123456789") == std::string::npos)
            return base(static_cast<std::uint32_t>(std::stoul(digits)));
        throw unsupported_system("unknown numeration system '" + name + "'");
    }

    SystemKind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }
    std::uint32_t radix() const noexcept { return radix_; }
    const CompleteDfa& validity() const noexcept { return validity_; }
    const std::vector<Natural>& places() const noexcept { return places_; }

    /// Coefficients c with P_{m+d} = sum_j c_j P_{m+j}; empty when unknown.
    const std::vector<std::int64_t>& recurrence() const noexcept { return recurrence_; }

    std::string walnut_name() const {
        switch (kind_) {
            case SystemKind::base_k: return "msd_" + std::to_string(radix_);
            case SystemKind::zeckendorf: return "msd_fib";
            case SystemKind::tribonacci: return "msd_trib";
            case SystemKind::custom: return "msd_" + name_;
        }
        return name_;
    }

    bool is_valid(const Digits& word) const {
        for (auto d : word)
            if (d >= radix_) return false;
        return validity_.accepts(word);
    }

    /// Canonical greedy representation; encode(0) is the empty word.
    Digits encode(Natural n) const {
        Digits out;
        if (n == 0) return out;
        std::size_t top = 0;
        while (top + 1 < places_.size() && places_[top + 1] <= n) ++top;
        for (std::size_t i = top + 1; i-- > 0;) {
            auto d = n / places_[i];
            if (d >= radix_) throw unsupported_system(name_ + ": " + std::to_string(n) + " exceeds the listed place values");
            out.push_back(static_cast<std::uint32_t>(d));
            n -= d * places_[i];
        }
        return out;
    }

    Natural decode(const Digits& word) const {
        if (!is_valid(word)) throw invalid_representation(name_ + ": invalid representation");
        Natural value = 0;
        const auto len = word.size();
        for (std::size_t i = 0; i < len; ++i) {
            auto d = word[i];
            if (d == 0) continue;
            auto pos = len - 1 - i;
            if (pos >= places_.size()) throw invalid_representation(name_ + ": representation too long");
            value += d * places_[pos];
        }
        return value;
    }

    bool operator==(const NumerationSystem& o) const { return kind_ == o.kind_ && name_ == o.name_ && radix_ == o.radix_; }

private:
    NumerationSystem() = default;

    static std::vector<Natural> grow_places(std::vector<Natural> places, const std::vector<std::int64_t>& rec) {
        constexpr Natural limit = std::numeric_limits<Natural>::max() / 16;
        const auto d = rec.size();
        while (true) {
            Natural next = 0;
            for (std::size_t j = 0; j < d; ++j) next += static_cast<Natural>(rec[j]) * places[places.size() - d + j];
            if (next > limit) break;
            places.push_back(next);
        }
        return places;
    }

    // Binary words without `run` consecutive 1 digits.
    static CompleteDfa no_run_of_ones(std::uint32_t run) {
        TupleAlphabet alpha({2});
        const State dead = run;
        std::vector<State> delta;
        std::vector<std::uint8_t> acc;
        for (State q = 0; q <= run; ++q) {
            if (q == dead) {
                delta.insert(delta.end(), {dead, dead});
                acc.push_back(0);
            } else {
                delta.push_back(0);
                delta.push_back(q + 1 == run ? dead : q + 1);
                acc.push_back(1);
            }
        }
        return CompleteDfa(alpha, run + 1, 0, std::move(delta), std::move(acc));
    }

    SystemKind kind_ = SystemKind::base_k;
    std::string name_;
    std::uint32_t radix_ = 2;
    CompleteDfa validity_;
    std::vector<Natural> places_;
    std::vector<std::int64_t> recurrence_;
};

/// One numeration system per track.
class TrackSystemSpec {
public:
    TrackSystemSpec() = default;
    explicit TrackSystemSpec(std::vector<NumerationSystem> systems) : systems_(std::move(systems)) {
        if (systems_.empty()) throw error("track spec needs at least one track");
    }
    static TrackSystemSpec uniform(const NumerationSystem& ns, std::size_t arity) {
        return TrackSystemSpec(std::vector<NumerationSystem>(arity, ns));
    }

    std::size_t arity() const noexcept { return systems_.size(); }
    const NumerationSystem& operator[](std::size_t t) const { return systems_.at(t); }
    const std::vector<NumerationSystem>& systems() const noexcept { return systems_; }

    TupleAlphabet alphabet() const {
        std::vector<std::uint32_t> r;
        for (const auto& s : systems_) r.push_back(s.radix());
        return TupleAlphabet(r);
    }

    /// Sub-spec made of the listed tracks, in order.
    TrackSystemSpec select(const std::vector<std::size_t>& tracks) const {
        std::vector<NumerationSystem> out;
        for (auto t : tracks) out.push_back(systems_.at(t));
        return TrackSystemSpec(std::move(out));
    }

private:
    std::vector<NumerationSystem> systems_;
};

/// Per-track canonical encodings, left-padded with zeros to a common length
/// (at least `min_length`) and zipped into tuple letters.
inline Word tuple_encode(const TrackSystemSpec& spec, const std::vector<Natural>& values, std::size_t min_length = 0) {
    if (values.size() != spec.arity()) throw error("tuple has wrong arity");
    std::vector<Digits> reps;
    std::size_t len = min_length;
    for (std::size_t t = 0; t < values.size(); ++t) {
        reps.push_back(spec[t].encode(values[t]));
        len = std::max(len, reps.back().size());
    }
    auto alpha = spec.alphabet();
    Word w(len);
    Digits letter(spec.arity());
    for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t t = 0; t < spec.arity(); ++t) {
            const auto& r = reps[t];
            auto pad = len - r.size();
            letter[t] = i < pad ? 0 : r[i - pad];
        }
        w[i] = alpha.encode(letter);
    }
    return w;
}

inline Digits track_digits(const TupleAlphabet& alpha, const Word& w, std::size_t track) {
    Digits d;
    d.reserve(w.size());
    for (auto l : w) d.push_back(alpha.digit(l, track));
    return d;
}

inline bool tuple_valid(const TrackSystemSpec& spec, const Word& w) {
    auto alpha = spec.alphabet();
    for (auto l : w)
        if (l >= alpha.size()) return false;
    for (std::size_t t = 0; t < spec.arity(); ++t)
        if (!spec[t].is_valid(track_digits(alpha, w, t))) return false;
    return true;
}

/// Decodes every track; throws invalid_representation on any invalid track.
inline std::vector<Natural> tuple_decode(const TrackSystemSpec& spec, const Word& w) {
    auto alpha = spec.alphabet();
    std::vector<Natural> out;
    for (std::size_t t = 0; t < spec.arity(); ++t) out.push_back(spec[t].decode(track_digits(alpha, w, t)));
    return out;
}

}  // namespace selfverify

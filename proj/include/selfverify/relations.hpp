#pragma once

#include <algorithm>
#include <vector>

#include "selfverify/numeration.hpp"
#include "selfverify/ops.hpp"

namespace selfverify {

/// Cylindrification: the result reads `spec.arity()` tracks and accepts a
/// word iff its projection onto the wired tracks (track i of `a` is read from
/// track wiring[i]) is accepted by `a`.
inline CompleteDfa embed(const CompleteDfa& a, const std::vector<std::size_t>& wiring, const TupleAlphabet& target) {
    if (wiring.size() != a.arity()) throw error("wiring must name one target track per input track");
    for (std::size_t i = 0; i < wiring.size(); ++i) {
        if (wiring[i] >= target.arity()) throw error("wiring targets a nonexistent track");
        for (std::size_t j = 0; j < i; ++j)
            if (wiring[i] == wiring[j]) throw error("wiring must be injective");
        if (target.radix(wiring[i]) != a.alphabet().radix(i))
            throw alphabet_mismatch("radix mismatch embedding track " + std::to_string(i) + " into track " +
                                    std::to_string(wiring[i]));
    }
    auto map = track_projection_map(target, wiring);
    const auto k = target.size();
    std::vector<State> delta(a.state_count() * k);
    for (State q = 0; q < a.state_count(); ++q)
        for (Letter l = 0; l < k; ++l) delta[q * k + l] = a.next(q, map[l]);
    return CompleteDfa(target, a.state_count(), a.initial(), std::move(delta),
                       std::vector<std::uint8_t>(a.accepting().begin(), a.accepting().end()));
}

inline CompleteDfa embed(const CompleteDfa& a, const std::vector<std::size_t>& wiring, const TrackSystemSpec& spec) {
    return embed(a, wiring, spec.alphabet());
}

/// Words over `spec` whose every track is a valid representation.
inline CompleteDfa validity_automaton(const TrackSystemSpec& spec) {
    auto alpha = spec.alphabet();
    auto result = CompleteDfa::accept_all(alpha);
    for (std::size_t t = 0; t < spec.arity(); ++t) {
        const auto& v = spec[t].validity();
        if (v.state_count() == 1 && v.is_accepting(0)) continue;
        result = minimize(product(result, embed(v, {t}, alpha), BoolOp::and_));
    }
    return result;
}

/// Accepts words whose `track` reads 0* followed by the canonical
/// representation of n0; other tracks are unconstrained.
inline CompleteDfa const_automaton(const TrackSystemSpec& spec, std::size_t track, Natural n0) {
    if (track >= spec.arity()) throw error("const_automaton: track out of range");
    auto rep = spec[track].encode(n0);
    TupleAlphabet one({spec[track].radix()});
    // states 0..len are positions in rep, len+1 is the sink
    const auto len = static_cast<State>(rep.size());
    const State dead = len + 1;
    std::vector<State> delta;
    std::vector<std::uint8_t> acc;
    for (State q = 0; q <= dead; ++q) {
        for (std::uint32_t d = 0; d < one.size(); ++d) {
            State r = dead;
            if (q == 0 && d == 0) r = 0;
            else if (q < len && d == rep[q]) r = q + 1;
            delta.push_back(r);
        }
        acc.push_back(q == len);
    }
    auto single = minimize(CompleteDfa(one, dead + 1, 0, std::move(delta), std::move(acc)));
    return embed(single, {track}, spec.alphabet());
}

/// Digit-wise equality of two tracks of the same radix.
inline CompleteDfa equality_relation(std::uint32_t radix) {
    TupleAlphabet alpha({radix, radix});
    std::vector<State> delta;
    for (State q = 0; q < 2; ++q)
        for (Letter l = 0; l < alpha.size(); ++l) {
            auto d = alpha.decode(l);
            delta.push_back(q == 0 && d[0] == d[1] ? 0 : 1);
        }
    return CompleteDfa(alpha, 2, 0, std::move(delta), {1, 0});
}

/// Strict lexicographic order on padded words: accepts (m, n) with m < n.
/// On valid representations of a greedy system this is numeric order.
inline CompleteDfa less_relation(std::uint32_t radix) {
    TupleAlphabet alpha({radix, radix});
    // 0: equal so far, 1: already less, 2: already greater
    std::vector<State> delta;
    for (State q = 0; q < 3; ++q)
        for (Letter l = 0; l < alpha.size(); ++l) {
            auto d = alpha.decode(l);
            if (q != 0) delta.push_back(q);
            else delta.push_back(d[0] == d[1] ? 0 : (d[0] < d[1] ? 1 : 2));
        }
    return CompleteDfa(alpha, 3, 0, std::move(delta), {0, 1, 0});
}

/// m <= n on padded words.
inline CompleteDfa less_equal_relation(std::uint32_t radix) {
    return complement(embed(less_relation(radix), {1, 0}, TupleAlphabet({radix, radix})));
}

/// Accepts valid pairs (n, x) with x = n + 1:
/// valid(n) & valid(x) & n < x & not exists y (valid(y) & n < y & y < x).
inline CompleteDfa incrementer(const NumerationSystem& ns) {
    auto spec3 = TrackSystemSpec::uniform(ns, 3);  // tracks n, y, x
    auto lt = less_relation(ns.radix());
    auto between = product(validity_automaton(spec3), embed(lt, {0, 1}, spec3), BoolOp::and_);
    between = minimize(product(between, embed(lt, {1, 2}, spec3), BoolOp::and_));
    auto gap = minimize(determinize(project(between, {0, 2}, Padding::leading_zeros)));
    auto spec2 = TrackSystemSpec::uniform(ns, 2);
    auto result = product(validity_automaton(spec2), lt, BoolOp::and_);
    return minimize(product(result, gap, BoolOp::and_not));
}

/// msd-first base-k addition x + y = z. State c is the carry the unread
/// lower part must deliver; state 2 is the sink.
inline CompleteDfa base_k_adder(std::uint32_t k) {
    TupleAlphabet alpha({k, k, k});
    std::vector<State> delta;
    for (State c = 0; c < 3; ++c)
        for (Letter l = 0; l < alpha.size(); ++l) {
            if (c == 2) {
                delta.push_back(2);
                continue;
            }
            auto d = alpha.decode(l);
            // x + y + carry_in = z + k * c
            long carry_in = static_cast<long>(d[2]) + static_cast<long>(k) * c - d[0] - d[1];
            delta.push_back(carry_in == 0 || carry_in == 1 ? static_cast<State>(carry_in) : 2);
        }
    return CompleteDfa(alpha, 3, 0, std::move(delta), {1, 0, 0});
}

}  // namespace selfverify

#pragma once

#include <bit>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "selfverify/io.hpp"
#include "selfverify/linrep.hpp"
#include "selfverify/teachers/adder.hpp"
#include "selfverify/teachers/eqfac.hpp"

namespace selfverify {

/// A synchronized integer sequence b, split into its positive and negative
/// parts: positive accepts (n, max(b(n), 0)) and negative, when present,
/// accepts (n, max(-b(n), 0)). Track 0 is the index, track 1 the value.
struct Summand {
    std::string name;
    TrackSystemSpec spec;
    CompleteDfa positive;
    std::optional<CompleteDfa> negative;
    /// Cheap evaluation of b(n), if known; otherwise the linear
    /// representation is used.
    std::function<std::int64_t(Natural)> direct;

    const NumerationSystem& index_system() const { return spec[0]; }
    const NumerationSystem& value_system() const { return spec[1]; }
};

/// (n, v) with v = X[n], symbols read as numbers in `value_system`.
inline CompleteDfa synchronized_from_dfao(const SequenceDfao& seq, const NumerationSystem& value_system) {
    TrackSystemSpec spec({seq.system(), value_system});
    auto alpha = spec.alphabet();
    auto any = CompleteDfa::reject_all(alpha);
    for (auto s : seq.symbols()) {
        auto at = product(embed(seq.symbol_automaton(s), {0}, alpha), const_automaton(spec, 1, s), BoolOp::and_);
        any = minimize(product(any, at, BoolOp::or_));
    }
    return minimize(product(any, validity_automaton(spec), BoolOp::and_));
}

/// Reads `power` digits of a one-track base-k automaton as one base-k^power
/// digit, most significant first. Words of the original whose length is
/// not a multiple of `power` are reached through leading zeros, so `a`
/// should be closed under them.
inline CompleteDfa regroup_digits(const CompleteDfa& a, std::uint32_t power) {
    if (a.arity() != 1) throw error("regroup_digits needs a one-track automaton");
    const auto k = a.alphabet().radix(0);
    std::uint32_t radix = 1;
    for (std::uint32_t i = 0; i < power; ++i) radix *= k;
    TupleAlphabet alpha({radix});
    std::vector<State> delta(a.state_count() * radix);
    for (State q = 0; q < a.state_count(); ++q)
        for (std::uint32_t d = 0; d < radix; ++d) {
            State r = q;
            for (std::uint32_t place = radix / k; place > 0; place /= k) r = a.next(r, (d / place) % k);
            delta[q * radix + d] = r;
        }
    return minimize(CompleteDfa(alpha, a.state_count(), a.initial(), std::move(delta),
                                std::vector<std::uint8_t>(a.accepting().begin(), a.accepting().end())));
}

namespace summands {

inline Summand from_sequence(const SequenceDfao& seq) {
    Summand s{seq.name(), TrackSystemSpec({seq.system(), seq.system()}), synchronized_from_dfao(seq, seq.system()),
              std::nullopt, nullptr};
    s.direct = [seq](Natural n) { return static_cast<std::int64_t>(seq.eval(n)); };
    return s;
}

/// (-1)^t(3n) with n in base 4 and values in base 3.
inline Summand rarefied_thue_morse() {
    auto base2 = NumerationSystem::base(2);
    auto spec2 = TrackSystemSpec::uniform(base2, 4);  // n c a m: c = n, a = 2n, m = 3n
    auto add2 = base_k_adder(2);
    ConjunctiveQuery q(spec2);
    q.add(equality_relation(2), {0, 1}).add(add2, {0, 1, 2}).add(add2, {2, 0, 3});
    q.add(sequences::thue_morse().symbol_automaton(0), {3});
    auto even = regroup_digits(exists_compile(q, {1, 2, 3}).dfa, 2);

    TrackSystemSpec spec({NumerationSystem::base(4), NumerationSystem::base(3)});
    auto alpha = spec.alphabet();
    auto on = embed(even, {0}, alpha);
    auto off = complement(on);
    auto one = const_automaton(spec, 1, 1);
    auto zero = const_automaton(spec, 1, 0);
    auto either = [&](const CompleteDfa& a, const CompleteDfa& b) {
        return minimize(product(product(a, one, BoolOp::and_), product(b, zero, BoolOp::and_), BoolOp::or_));
    };
    Summand s{"rarefied-thue-morse", spec, either(on, off), either(off, on), nullptr};
    s.direct = [](Natural n) { return std::popcount(3 * n) % 2 == 0 ? std::int64_t{1} : std::int64_t{-1}; };
    return s;
}

inline std::vector<std::string> builtin_names() {
    auto names = sequences::builtin_names();
    names.push_back("rarefied-thue-morse");
    return names;
}

inline Summand builtin(const std::string& name) {
    if (name == "rarefied-thue-morse") return rarefied_thue_morse();
    return from_sequence(sequences::builtin(name));
}

/// A two-track synchronized automaton from the canonical text format. Tracks
/// without a `system` line use `fallback`.
inline Summand from_file(const std::string& path, const NumerationSystem& fallback) {
    auto file = parse_automaton(read_text_file(path));
    if (file.dfa.arity() != 2) throw alphabet_mismatch(path + ": synchronized automaton must have two tracks");
    std::vector<NumerationSystem> systems;
    for (std::size_t t = 0; t < 2; ++t) {
        auto it = file.systems.find(t);
        systems.push_back(it == file.systems.end() ? fallback : NumerationSystem::by_name(it->second));
    }
    TrackSystemSpec spec(systems);
    if (file.dfa.alphabet() != spec.alphabet()) throw alphabet_mismatch(path + ": track radices disagree with the systems");
    auto b = minimize(product(file.dfa, validity_automaton(spec), BoolOp::and_));
    return Summand{path, spec, std::move(b), std::nullopt, nullptr};
}

}  // namespace summands

/// Teacher for C[n, x] <=> x = sum_{i<n} b(i). Induction on n:
///   C[0,x] <=> x = 0;
///   b(n) = t >= 0:  C[n,y] <=> C[n+1,y+t], and C[n+1,z] is false for z < t;
///   b(n) = -t <= 0: C[n,z+t] <=> C[n+1,z].
class PartialSumTeacher : public InductiveTeacher {
public:
    explicit PartialSumTeacher(Summand summand, MembershipStrategy strategy = {}, const LearnOptions& adder_opts = {})
        : InductiveTeacher(summand.spec), summand_(std::move(summand)), strategy_(strategy) {
        const auto& ns = summand_.index_system();
        const auto& xs = summand_.value_system();
        require_single_valued(summand_.positive, ns, 1000);
        lin_ = build_linear_rep(summand_.positive, xs);
        if (summand_.negative) {
            require_single_valued(*summand_.negative, ns, 1000);
            lin_ = LinearRepresentation::difference(lin_, build_linear_rep(*summand_.negative, xs));
        }
        prefix_lin_ = lin_.prefix_sum();

        {
            ConjunctiveQuery q(spec());
            q.add(const_automaton(spec(), 0, 0), {0, 1}).add_not(const_automaton(spec(), 1, 0), {0, 1});
            add_condition("base: C[0,x] with x != 0", q, {{{0, 1}, false}});
        }
        {
            ConjunctiveQuery q(spec());
            q.add(const_automaton(spec(), 0, 0), {0, 1}).add(const_automaton(spec(), 1, 0), {0, 1});
            add_condition("base: not C[0,0]", q, {{{0, 1}, true}});
        }

        auto incr = incrementer(ns);
        auto add = AdderRegistry::instance().get(xs, adder_opts);
        // zero-value indicator of the opposite part, restricting each part to
        // the indices where it carries the value
        auto zero_of = [&](const CompleteDfa& part) {
            ConjunctiveQuery q(summand_.spec);
            q.add(part, {0, 1}).add(const_automaton(summand_.spec, 1, 0), {0, 1});
            return exists_compile(q, {1}).dfa;
        };
        std::optional<CompleteDfa> pos_gate, neg_gate;
        if (summand_.negative) {
            pos_gate = zero_of(*summand_.negative);
            neg_gate = zero_of(summand_.positive);
        }

        TrackSystemSpec spec4({ns, xs, ns, xs});  // n t u z
        {
            ConjunctiveQuery q(spec4);
            q.add(incr, {0, 2}).add(summand_.positive, {0, 1}).add(less_relation(xs.radix()), {3, 1});
            if (pos_gate) q.add(*pos_gate, {0});
            add_condition("underflow: C[n+1,z] with z < b(n)", q, {{{2, 3}, false}});
        }

        TrackSystemSpec spec5({ns, xs, ns, xs, xs});  // n t u y z
        {
            ConjunctiveQuery q(spec5);
            q.add(incr, {0, 2}).add(summand_.positive, {0, 1}).add(add, {1, 3, 4});
            if (pos_gate) q.add(*pos_gate, {0});
            add_condition("step: C[n,y] & not C[n+1,y+b(n)]", q, {{{0, 3}, false}, {{2, 4}, true}});
            add_condition("step: not C[n,y] & C[n+1,y+b(n)]", q, {{{0, 3}, true}, {{2, 4}, false}});
        }
        if (summand_.negative) {
            ConjunctiveQuery q(spec5);
            q.add(incr, {0, 2}).add(*summand_.negative, {0, 1}).add(add, {1, 4, 3}).add(*neg_gate, {0});
            add_condition("step: C[n,z-b(n)] & not C[n+1,z]", q, {{{0, 3}, false}, {{2, 4}, true}});
            add_condition("step: not C[n,z-b(n)] & C[n+1,z]", q, {{{0, 3}, true}, {{2, 4}, false}});
        }
    }

    std::string predicate() const override { return "partial-sum"; }

    bool holds(const std::vector<Natural>& v) override {
        auto c = partial_sum(v[0]);
        return c >= 0 && static_cast<Natural>(c) == v[1];
    }

    /// b(n).
    std::int64_t value(Natural n) const {
        if (summand_.direct) return summand_.direct(n);
        return lin_.eval(summand_.index_system().encode(n));
    }

    /// sum_{i<n} b(i): running sums below the direct threshold, the
    /// prefix-sum linear representation above it.
    std::int64_t partial_sum(Natural n) {
        if (n >= strategy_.direct_threshold) return prefix_sum_by_linrep(n);
        if (sums_.empty()) sums_.push_back(0);
        if (n >= sums_.size()) {
            auto target = std::min<Natural>(std::max<Natural>(n + 1, sums_.size() * 2), strategy_.direct_threshold);
            sums_.reserve(target);
            for (Natural i = sums_.size(); i < target; ++i) sums_.push_back(sums_.back() + value(i - 1));
        }
        return sums_[n];
    }

    std::int64_t prefix_sum_by_linrep(Natural n) const { return prefix_lin_.eval(summand_.index_system().encode(n)); }

    const Summand& summand() const noexcept { return summand_; }
    const LinearRepresentation& linear_rep() const noexcept { return lin_; }
    const LinearRepresentation& prefix_linear_rep() const noexcept { return prefix_lin_; }

private:
    Summand summand_;
    MembershipStrategy strategy_;
    LinearRepresentation lin_;
    LinearRepresentation prefix_lin_;
    std::vector<std::int64_t> sums_;
};

}  // namespace selfverify

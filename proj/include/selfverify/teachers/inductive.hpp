#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "selfverify/lstar.hpp"
#include "selfverify/numeration.hpp"
#include "selfverify/query.hpp"
#include "selfverify/sequence.hpp"

namespace selfverify {

/// A use of the hypothesis inside a verification condition: the hypothesis
/// reads query tracks `wiring`, possibly negated.
struct Probe {
    std::vector<std::size_t> wiring;
    bool negated = false;
};

/// One existential check "exists tracks: fixed & probes". Any satisfying
/// tuple refutes the hypothesis.
struct Condition {
    std::string name;
    TrackSystemSpec spec;
    CompleteDfa fixed;  ///< compiled hypothesis-independent conjuncts, validity included
    std::vector<Probe> probes;
};

/// Membership oracle plus a self-verifying hypothesis checker. Derived
/// classes supply the predicate and the induction conditions; the base
/// class runs, in order: rejection of invalid representations, the
/// leading-zero self-loop, then every registered condition.
class InductiveTeacher {
public:
    explicit InductiveTeacher(TrackSystemSpec spec) : spec_(std::move(spec)), alphabet_(spec_.alphabet()) {}
    virtual ~InductiveTeacher() = default;
    InductiveTeacher(const InductiveTeacher&) = delete;
    InductiveTeacher& operator=(const InductiveTeacher&) = delete;

    virtual std::string predicate() const = 0;

    /// Truth of the predicate on a decoded tuple.
    virtual bool holds(const std::vector<Natural>& values) = 0;

    const TrackSystemSpec& spec() const noexcept { return spec_; }
    const TupleAlphabet& alphabet() const noexcept { return alphabet_; }
    const std::vector<Condition>& conditions() const noexcept { return conditions_; }

    /// Membership query on a raw tuple word; invalid representations are
    /// not members.
    bool query(const Word& w) {
        if (!tuple_valid(spec_, w)) return false;
        return holds(tuple_decode(spec_, w));
    }

    bool query_values(const std::vector<Natural>& values) { return holds(values); }

    Verdict verify(const CompleteDfa& hypothesis) {
        require_same_alphabet(hypothesis.alphabet(), alphabet_);
        const auto a = minimize(hypothesis);

        // invalid representations, checked over all digit strings
        {
            auto valid = validity_automaton(spec_);
            if (auto w = equivalent_subset(a, valid)) return Verdict::reject(*w, "validity");
        }

        // leading zeros: the initial state must loop on the all-zero letter
        if (auto q = a.next(a.initial(), TupleAlphabet::zero()); q != a.initial()) {
            auto shifted = CompleteDfa(a.alphabet(), a.state_count(), q,
                                       std::vector<State>(a.transitions().begin(), a.transitions().end()),
                                       std::vector<std::uint8_t>(a.accepting().begin(), a.accepting().end()));
            auto s = equivalent(a, shifted);
            if (!s) throw std::logic_error("minimal automaton has two equivalent states");
            Word zs{TupleAlphabet::zero()};
            zs.insert(zs.end(), s->begin(), s->end());
            if (query(*s) != a.accepts(*s)) return Verdict::reject(*s, "leading-zeros");
            return Verdict::reject(zs, "leading-zeros");
        }

        for (const auto& cond : conditions_) {
            ProductSearch search(cond.spec.alphabet());
            std::vector<std::size_t> identity(cond.spec.arity());
            std::iota(identity.begin(), identity.end(), 0);
            search.add(cond.fixed, identity, false);
            for (const auto& p : cond.probes) search.add(a, p.wiring, p.negated);
            auto w = search.search();
            if (!w) continue;
            auto values = tuple_decode(cond.spec, *w);
            std::optional<Word> best;
            for (const auto& p : cond.probes) {
                std::vector<Natural> tuple;
                for (auto t : p.wiring) tuple.push_back(values[t]);
                auto word = tuple_encode(spec_, tuple);
                if (holds(tuple) == a.accepts(word)) continue;
                if (!best || ShortlexLess{}(word, *best)) best = word;
            }
            if (!best)
                throw std::logic_error(predicate() + ": condition '" + cond.name +
                                       "' has a witness but no wrong hypothesis value");
            return Verdict::reject(*best, cond.name);
        }
        return Verdict::accept();
    }

protected:
    /// Registers a condition; `fixed` is compiled once here.
    void add_condition(std::string name, const ConjunctiveQuery& fixed, std::vector<Probe> probes) {
        for (const auto& p : probes) {
            if (p.wiring.size() != spec_.arity()) throw std::logic_error("probe wiring must cover every hypothesis track");
            for (std::size_t i = 0; i < p.wiring.size(); ++i)
                if (!(fixed.spec()[p.wiring[i]] == spec_[i])) throw std::logic_error("probe wiring crosses numeration systems");
        }
        conditions_.push_back({std::move(name), fixed.spec(), compile(fixed), std::move(probes)});
    }

private:
    // Shortlex-least word accepted by a but not by b.
    static std::optional<Word> equivalent_subset(const CompleteDfa& a, const CompleteDfa& b) {
        ProductSearch search(a.alphabet());
        std::vector<std::size_t> identity(a.arity());
        std::iota(identity.begin(), identity.end(), 0);
        search.add(a, identity, false);
        search.add(b, identity, true);
        return search.search();
    }

    TrackSystemSpec spec_;
    TupleAlphabet alphabet_;
    std::vector<Condition> conditions_;
};

/// Lazily extended table of sequence values X[0..].
class SequencePrefix {
public:
    explicit SequencePrefix(const SequenceDfao& seq) : seq_(&seq) {}

    Symbol operator[](Natural n) {
        if (n >= values_.size()) extend(n + 1);
        return values_[n];
    }

    void extend(Natural length) {
        if (length <= values_.size()) return;
        auto target = std::max<Natural>(length, values_.size() * 2);
        values_.reserve(target);
        for (Natural n = values_.size(); n < target; ++n) values_.push_back(static_cast<std::uint8_t>(seq_->eval(n)));
    }

    /// X[i..i+n-1] == Y[j..j+n-1] where Y is `other`.
    bool factors_equal(SequencePrefix& other, Natural i, Natural j, Natural n) {
        if (n == 0) return true;
        extend(i + n);
        other.extend(j + n);
        return std::equal(values_.begin() + static_cast<std::ptrdiff_t>(i),
                          values_.begin() + static_cast<std::ptrdiff_t>(i + n),
                          other.values_.begin() + static_cast<std::ptrdiff_t>(j));
    }

private:
    const SequenceDfao* seq_;
    std::vector<std::uint8_t> values_;
};

}  // namespace selfverify

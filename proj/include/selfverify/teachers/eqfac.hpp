#pragma once

#include <memory>
#include <optional>

#include "selfverify/sequence.hpp"
#include "selfverify/teachers/adder.hpp"
#include "selfverify/teachers/inductive.hpp"

namespace selfverify {

/// The query E(i,j,n,t,u,v) = (t<n) & (u=i+t) & (v=j+t) & X[u] != Y[v].
inline ConjunctiveQuery eqfac_mismatch_query(const SequenceDfao& x, const SequenceDfao& y) {
    const auto& ns = x.system();
    auto spec6 = TrackSystemSpec::uniform(ns, 6);
    auto add = adder(ns);
    ConjunctiveQuery q(spec6);
    q.add(less_relation(ns.radix()), {3, 2})
        .add(add, {0, 3, 4})
        .add(add, {1, 3, 5})
        .add(value_relation(x, y, ValueMode::neq), {4, 5});
    return q;
}

struct MembershipStrategy {
    /// Tuples whose length parameter is below this are answered by direct
    /// comparison of sequence values; larger ones by automaton intersection.
    Natural direct_threshold = 10'000'000;
};

/// eqfac(i,j,n): X[i..i+n-1] = Y[j..j+n-1] (Y = X unless a second sequence is
/// given). Hypotheses are checked by induction on n:
///   A[i,j,0];  A[i,j,n+1] <=> A[i,j,n] & X[i+n] = Y[j+n].
class EqFacTeacher : public InductiveTeacher {
public:
    explicit EqFacTeacher(SequenceDfao x, MembershipStrategy strategy = {})
        : EqFacTeacher(x, x, strategy) {}

    EqFacTeacher(SequenceDfao x, SequenceDfao y, MembershipStrategy strategy = {})
        : InductiveTeacher(TrackSystemSpec::uniform(x.system(), 3)),
          x_(std::move(x)),
          y_(std::move(y)),
          strategy_(strategy),
          xs_(x_),
          ys_(y_) {
        const auto& ns = x_.system();
        if (!(ns == y_.system())) throw alphabet_mismatch("eqfac needs both sequences over one numeration system");
        auto spec3 = TrackSystemSpec::uniform(ns, 3);
        auto spec4 = TrackSystemSpec::uniform(ns, 4);  // i j n t
        auto spec6 = TrackSystemSpec::uniform(ns, 6);  // i j n t u v
        auto incr = incrementer(ns);
        auto add = adder(ns);
        {
            ConjunctiveQuery q(spec3);
            q.add(const_automaton(spec3, 2, 0), {0, 1, 2});
            add_condition("base: not A[i,j,0]", q, {{{0, 1, 2}, true}});
        }
        // step conjuncts, most grounded first
        {
            ConjunctiveQuery q(spec6);
            q.add(incr, {2, 3}).add(add, {0, 2, 4}).add(add, {1, 2, 5}).add(value_relation(x_, y_, ValueMode::neq), {4, 5});
            add_condition("step: X[i+n] != Y[j+n] & A[i,j,n+1]", q, {{{0, 1, 3}, false}});
        }
        {
            ConjunctiveQuery q(spec6);
            q.add(incr, {2, 3}).add(add, {0, 2, 4}).add(add, {1, 2, 5}).add(value_relation(x_, y_, ValueMode::eq), {4, 5});
            add_condition("step: X[i+n] = Y[j+n] & A[i,j,n] & not A[i,j,n+1]", q,
                          {{{0, 1, 3}, true}, {{0, 1, 2}, false}});
        }
        {
            ConjunctiveQuery q(spec4);
            q.add(incr, {2, 3});
            add_condition("step: not A[i,j,n] & A[i,j,n+1]", q, {{{0, 1, 2}, true}, {{0, 1, 3}, false}});
        }
    }

    std::string predicate() const override { return "eqfac"; }

    bool holds(const std::vector<Natural>& v) override {
        if (v[2] < strategy_.direct_threshold) return holds_direct(v[0], v[1], v[2]);
        return holds_by_intersection(v[0], v[1], v[2]);
    }

    bool holds_direct(Natural i, Natural j, Natural n) { return xs_.factors_equal(ys_, i, j, n); }

    /// True iff E(i,j,n,t,u,v) = (t<n) & (u=i+t) & (v=j+t) & X[u] != Y[v],
    /// restricted to the given (i,j,n), accepts nothing.
    bool holds_by_intersection(Natural i, Natural j, Natural n) {
        const auto& e = mismatch_automaton();
        auto spec6 = TrackSystemSpec::uniform(x_.system(), 6);
        auto ci = const_automaton(spec6, 0, i);
        auto cj = const_automaton(spec6, 1, j);
        auto cn = const_automaton(spec6, 2, n);
        ProductSearch search(spec6.alphabet());
        std::vector<std::size_t> id{0, 1, 2, 3, 4, 5};
        search.add(e, id, false);
        search.add(ci, id, false);
        search.add(cj, id, false);
        search.add(cn, id, false);
        return !search.search().has_value();
    }

    /// The precompiled mismatch automaton E(i,j,n,t,u,v).
    const CompleteDfa& mismatch_automaton() {
        if (!mismatch_) mismatch_ = compile(eqfac_mismatch_query(x_, y_));
        return *mismatch_;
    }

    const SequenceDfao& sequence() const noexcept { return x_; }

private:
    SequenceDfao x_, y_;
    MembershipStrategy strategy_;
    SequencePrefix xs_, ys_;
    std::optional<CompleteDfa> mismatch_;
};

}  // namespace selfverify

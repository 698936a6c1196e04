#pragma once

#include "selfverify/sequence.hpp"
#include "selfverify/teachers/adder.hpp"
#include "selfverify/teachers/inductive.hpp"

namespace selfverify {

/// eqrevfac(i,j,n): X[i..i+n-1] is the reversal of X[j..j+n-1]. Induction on n:
///   A[i,j,0];  A[i,j,n+1] <=> A[i+1,j,n] & X[i] = X[j+n].
class EqRevFacTeacher : public InductiveTeacher {
public:
    explicit EqRevFacTeacher(SequenceDfao x)
        : InductiveTeacher(TrackSystemSpec::uniform(x.system(), 3)), x_(std::move(x)), xs_(x_) {
        const auto& ns = x_.system();
        auto spec3 = TrackSystemSpec::uniform(ns, 3);
        // tracks i j n t a v with t = n+1, a = i+1, v = j+n; the first step
        // check uses i j n t v
        auto spec5 = TrackSystemSpec::uniform(ns, 5);
        auto spec6 = TrackSystemSpec::uniform(ns, 6);
        auto incr = incrementer(ns);
        auto add = adder(ns);
        {
            ConjunctiveQuery q(spec3);
            q.add(const_automaton(spec3, 2, 0), {0, 1, 2});
            add_condition("base: not A[i,j,0]", q, {{{0, 1, 2}, true}});
        }
        {
            ConjunctiveQuery q(spec5);
            q.add(incr, {2, 3}).add(add, {1, 2, 4}).add(value_relation(x_, x_, ValueMode::neq), {0, 4});
            add_condition("step: X[i] != X[j+n] & A[i,j,n+1]", q, {{{0, 1, 3}, false}});
        }
        {
            ConjunctiveQuery q(spec6);
            q.add(incr, {2, 3}).add(incr, {0, 4}).add(add, {1, 2, 5}).add(value_relation(x_, x_, ValueMode::eq), {0, 5});
            add_condition("step: X[i] = X[j+n] & A[i+1,j,n] & not A[i,j,n+1]", q,
                          {{{0, 1, 3}, true}, {{4, 1, 2}, false}});
        }
        {
            ConjunctiveQuery q(spec5);
            q.add(incr, {2, 3}).add(incr, {0, 4});
            add_condition("step: not A[i+1,j,n] & A[i,j,n+1]", q, {{{4, 1, 2}, true}, {{0, 1, 3}, false}});
        }
    }

    std::string predicate() const override { return "eqrevfac"; }

    bool holds(const std::vector<Natural>& v) override {
        const auto i = v[0], j = v[1], n = v[2];
        if (n == 0) return true;
        xs_.extend(std::max(i, j) + n);
        for (Natural k = 0; k < n; ++k)
            if (xs_[i + k] != xs_[j + n - 1 - k]) return false;
        return true;
    }

    const SequenceDfao& sequence() const noexcept { return x_; }

private:
    SequenceDfao x_;
    SequencePrefix xs_;
};

}  // namespace selfverify

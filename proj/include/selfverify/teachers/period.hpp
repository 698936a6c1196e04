#pragma once

#include "selfverify/sequence.hpp"
#include "selfverify/teachers/adder.hpp"
#include "selfverify/teachers/inductive.hpp"

namespace selfverify {

/// per(i,n,p): p is a period of X[i..i+n-1]; 0 and every p >= n count.
/// Induction on n:
///   A[i,0,p];
///   A[i,n+1,p] <=> p >= n+1 | (p <= n & A[i,n,p] & X[i+n] = X[i+n-p]),
/// with i+n-p realized as the track s constrained by s + p = i + n.
class PeriodTeacher : public InductiveTeacher {
public:
    explicit PeriodTeacher(SequenceDfao x)
        : InductiveTeacher(TrackSystemSpec::uniform(x.system(), 3)), x_(std::move(x)), xs_(x_) {
        const auto& ns = x_.system();
        auto spec3 = TrackSystemSpec::uniform(ns, 3);
        auto spec4 = TrackSystemSpec::uniform(ns, 4);  // i n p m        (m = n+1)
        auto spec6 = TrackSystemSpec::uniform(ns, 6);  // i n p m u s    (u = i+n, s+p = u)
        auto incr = incrementer(ns);
        auto add = adder(ns);
        auto le = less_equal_relation(ns.radix());
        {
            ConjunctiveQuery q(spec3);
            q.add(const_automaton(spec3, 1, 0), {0, 1, 2});
            add_condition("base: not A[i,0,p]", q, {{{0, 1, 2}, true}});
        }
        auto shifted = [&](ValueMode mode) {
            ConjunctiveQuery q(spec6);
            q.add(incr, {1, 3}).add(le, {2, 1}).add(add, {0, 1, 4}).add(add, {5, 2, 4}).add(value_relation(x_, x_, mode), {4, 5});
            return q;
        };
        add_condition("step: X[i+n] != X[i+n-p] & A[i,n+1,p]", shifted(ValueMode::neq), {{{0, 3, 2}, false}});
        {
            ConjunctiveQuery q(spec4);
            q.add(incr, {1, 3}).add(le, {3, 2});
            add_condition("step: p >= n+1 & not A[i,n+1,p]", q, {{{0, 3, 2}, true}});
        }
        add_condition("step: X[i+n] = X[i+n-p] & A[i,n,p] & not A[i,n+1,p]", shifted(ValueMode::eq),
                      {{{0, 1, 2}, false}, {{0, 3, 2}, true}});
        {
            ConjunctiveQuery q(spec4);
            q.add(incr, {1, 3}).add(le, {2, 1});
            add_condition("step: p <= n & not A[i,n,p] & A[i,n+1,p]", q, {{{0, 1, 2}, true}, {{0, 3, 2}, false}});
        }
    }

    std::string predicate() const override { return "period"; }

    bool holds(const std::vector<Natural>& v) override {
        const auto i = v[0], n = v[1], p = v[2];
        if (p == 0 || p >= n) return true;
        return xs_.factors_equal(xs_, i, i + p, n - p);
    }

    const SequenceDfao& sequence() const noexcept { return x_; }

private:
    SequenceDfao x_;
    SequencePrefix xs_;
};

}  // namespace selfverify

#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "selfverify/io.hpp"
#include "selfverify/teachers/inductive.hpp"

namespace selfverify {

/// Teacher for the addition relation x + y = z. Induction on x:
///   A[0,y,z] <=> y = z;  A[x,y,0] is false for x >= 1;
///   incr(x,t) & incr(z,u) => (A[x,y,z] <=> A[t,y,u]).
class AdderTeacher : public InductiveTeacher {
public:
    explicit AdderTeacher(const NumerationSystem& ns) : InductiveTeacher(TrackSystemSpec::uniform(ns, 3)), ns_(ns) {
        auto spec3 = TrackSystemSpec::uniform(ns, 3);
        auto spec5 = TrackSystemSpec::uniform(ns, 5);  // x y z t u
        auto eq = equality_relation(ns.radix());
        auto incr = incrementer(ns);
        {
            ConjunctiveQuery q(spec3);
            q.add(const_automaton(spec3, 0, 0), {0, 1, 2}).add_not(eq, {1, 2});
            add_condition("base: A[0,y,z] with y != z", q, {{{0, 1, 2}, false}});
        }
        {
            ConjunctiveQuery q(spec3);
            q.add(const_automaton(spec3, 0, 0), {0, 1, 2}).add(eq, {1, 2});
            add_condition("base: not A[0,y,y]", q, {{{0, 1, 2}, true}});
        }
        {
            ConjunctiveQuery q(spec3);
            q.add(const_automaton(spec3, 2, 0), {0, 1, 2}).add_not(const_automaton(spec3, 0, 0), {0, 1, 2});
            add_condition("zero sum: A[x,y,0] with x >= 1", q, {{{0, 1, 2}, false}});
        }
        ConjunctiveQuery step(spec5);
        step.add(incr, {0, 3}).add(incr, {2, 4});
        add_condition("step: not A[x,y,z] & A[x+1,y,z+1]", step, {{{0, 1, 2}, true}, {{3, 1, 4}, false}});
        add_condition("step: A[x,y,z] & not A[x+1,y,z+1]", step, {{{0, 1, 2}, false}, {{3, 1, 4}, true}});
    }

    std::string predicate() const override { return "adder"; }

    bool holds(const std::vector<Natural>& v) override { return v[0] + v[1] == v[2] && v[2] >= v[0]; }

    const NumerationSystem& system() const noexcept { return ns_; }

private:
    NumerationSystem ns_;
};

/// Process-wide store of addition automata. Base-k adders are built
/// directly; other systems use a registered automaton (e.g. loaded from a
/// file) or one learned with AdderTeacher on first use.
class AdderRegistry {
public:
    static AdderRegistry& instance() {
        static AdderRegistry r;
        return r;
    }

    void register_adder(const NumerationSystem& ns, CompleteDfa adder) {
        if (adder.arity() != 3 || adder.alphabet() != TupleAlphabet::uniform(3, ns.radix()))
            throw alphabet_mismatch("adder must read three tracks of the system's radix");
        std::lock_guard lock(mutex_);
        adders_[ns.name()] = std::move(adder);
    }

    CompleteDfa get(const NumerationSystem& ns, const LearnOptions& opts = {}) {
        if (ns.kind() == SystemKind::base_k) return base_k_adder(ns.radix());
        {
            std::lock_guard lock(mutex_);
            if (auto it = adders_.find(ns.name()); it != adders_.end()) return it->second;
        }
        if (ns.kind() == SystemKind::custom)
            throw unsupported_system(ns.name() + ": no adder available; supply one with --adder");
        AdderTeacher teacher(ns);
        auto learned = learn(teacher, teacher, teacher.alphabet(), opts);
        std::lock_guard lock(mutex_);
        stats_[ns.name()] = learned.stats;
        return adders_.emplace(ns.name(), std::move(learned.dfa)).first->second;
    }

    std::optional<RunStats> learned_stats(const NumerationSystem& ns) const {
        std::lock_guard lock(mutex_);
        if (auto it = stats_.find(ns.name()); it != stats_.end()) return it->second;
        return std::nullopt;
    }

private:
    AdderRegistry() = default;
    mutable std::mutex mutex_;
    std::map<std::string, CompleteDfa> adders_;
    std::map<std::string, RunStats> stats_;
};

inline CompleteDfa adder(const NumerationSystem& ns) { return AdderRegistry::instance().get(ns); }

}  // namespace selfverify

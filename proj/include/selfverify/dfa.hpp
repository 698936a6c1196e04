#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "selfverify/alphabet.hpp"
#include "selfverify/error.hpp"

namespace selfverify {

using State = std::uint32_t;
inline constexpr State no_state = std::numeric_limits<State>::max();

/// Deterministic automaton with a total transition function over a tuple
/// alphabet. Immutable once built; every construction returns a new value.
class CompleteDfa {
public:
    CompleteDfa() = default;

    CompleteDfa(TupleAlphabet alphabet, std::size_t states, State initial, std::vector<State> delta,
                std::vector<std::uint8_t> accepting)
        : alphabet_(std::move(alphabet)),
          states_(states),
          initial_(initial),
          delta_(std::move(delta)),
          accepting_(std::move(accepting)) {
        if (states_ == 0) throw error("automaton needs at least one state");
        if (initial_ >= states_) throw error("initial state out of range");
        if (delta_.size() != states_ * alphabet_.size()) throw error("transition table is not total");
        if (accepting_.size() != states_) throw error("accepting vector has wrong size");
        for (auto t : delta_)
            if (t >= states_) throw error("transition target out of range");
    }

    static CompleteDfa accept_all(const TupleAlphabet& alphabet) {
        return CompleteDfa(alphabet, 1, 0, std::vector<State>(alphabet.size(), 0), {1});
    }

    static CompleteDfa reject_all(const TupleAlphabet& alphabet) {
        return CompleteDfa(alphabet, 1, 0, std::vector<State>(alphabet.size(), 0), {0});
    }

    const TupleAlphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t arity() const noexcept { return alphabet_.arity(); }
    std::size_t state_count() const noexcept { return states_; }
    State initial() const noexcept { return initial_; }
    State next(State q, Letter a) const noexcept { return delta_[q * alphabet_.size() + a]; }
    bool is_accepting(State q) const noexcept { return accepting_[q] != 0; }
    std::span<const State> transitions() const noexcept { return delta_; }
    std::span<const std::uint8_t> accepting() const noexcept { return accepting_; }

    State run(const Word& w) const { return run_from(initial_, w); }

    State run_from(State q, const Word& w) const {
        for (auto a : w) {
            if (a >= alphabet_.size()) throw error("letter out of range");
            q = next(q, a);
        }
        return q;
    }

    bool accepts(const Word& w) const { return is_accepting(run(w)); }

    std::size_t accepting_count() const noexcept {
        std::size_t n = 0;
        for (auto b : accepting_) n += b != 0;
        return n;
    }

    /// Same transition structure with the acceptance of state q inverted.
    CompleteDfa with_flipped(State q) const {
        auto acc = accepting_;
        acc.at(q) ^= 1;
        return CompleteDfa(alphabet_, states_, initial_, delta_, std::move(acc));
    }

    /// States from which some accepting state is reachable.
    std::vector<bool> live_states() const {
        const auto k = alphabet_.size();
        std::vector<std::vector<State>> preds(states_);
        for (State q = 0; q < states_; ++q)
            for (Letter a = 0; a < k; ++a) preds[next(q, a)].push_back(q);
        std::vector<bool> live(states_, false);
        std::deque<State> queue;
        for (State q = 0; q < states_; ++q)
            if (is_accepting(q)) {
                live[q] = true;
                queue.push_back(q);
            }
        while (!queue.empty()) {
            auto q = queue.front();
            queue.pop_front();
            for (auto p : preds[q])
                if (!live[p]) {
                    live[p] = true;
                    queue.push_back(p);
                }
        }
        return live;
    }

    std::vector<bool> reachable_states() const {
        std::vector<bool> seen(states_, false);
        std::deque<State> queue{initial_};
        seen[initial_] = true;
        while (!queue.empty()) {
            auto q = queue.front();
            queue.pop_front();
            for (Letter a = 0; a < alphabet_.size(); ++a) {
                auto r = next(q, a);
                if (!seen[r]) {
                    seen[r] = true;
                    queue.push_back(r);
                }
            }
        }
        return seen;
    }

    /// Drops unreachable states and renumbers the rest in BFS order.
    CompleteDfa reachable_part() const {
        const auto k = alphabet_.size();
        std::vector<State> id(states_, no_state);
        std::vector<State> order{initial_};
        id[initial_] = 0;
        for (std::size_t i = 0; i < order.size(); ++i)
            for (Letter a = 0; a < k; ++a) {
                auto r = next(order[i], a);
                if (id[r] == no_state) {
                    id[r] = static_cast<State>(order.size());
                    order.push_back(r);
                }
            }
        std::vector<State> delta(order.size() * k);
        std::vector<std::uint8_t> acc(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            acc[i] = accepting_[order[i]];
            for (Letter a = 0; a < k; ++a) delta[i * k + a] = id[next(order[i], a)];
        }
        return CompleteDfa(alphabet_, order.size(), 0, std::move(delta), std::move(acc));
    }

private:
    TupleAlphabet alphabet_;
    std::size_t states_ = 0;
    State initial_ = 0;
    std::vector<State> delta_;
    std::vector<std::uint8_t> accepting_;
};

/// A complete DFA with its dead states removed; missing transitions are
/// `no_state`. Used for reporting state counts the way trimmed tools do and
/// for export.
struct TrimmedDfa {
    TupleAlphabet alphabet;
    std::size_t states = 0;
    State initial = no_state;  // no_state when the language is empty
    std::vector<State> delta;
    std::vector<std::uint8_t> accepting;
    std::size_t removed = 0;
};

inline TrimmedDfa trim(const CompleteDfa& a) {
    const auto k = a.alphabet().size();
    auto live = a.live_states();
    std::vector<State> id(a.state_count(), no_state);
    TrimmedDfa out;
    out.alphabet = a.alphabet();
    std::size_t kept = 0;
    for (State q = 0; q < a.state_count(); ++q)
        if (live[q]) id[q] = static_cast<State>(kept++);
    out.states = kept;
    out.removed = a.state_count() - kept;
    out.initial = id[a.initial()];
    out.delta.assign(kept * k, no_state);
    out.accepting.assign(kept, 0);
    for (State q = 0; q < a.state_count(); ++q) {
        if (id[q] == no_state) continue;
        out.accepting[id[q]] = a.is_accepting(q);
        for (Letter l = 0; l < k; ++l) out.delta[id[q] * k + l] = id[a.next(q, l)];
    }
    return out;
}

}  // namespace selfverify

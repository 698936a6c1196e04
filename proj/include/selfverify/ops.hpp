#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "selfverify/dfa.hpp"

namespace selfverify {

enum class BoolOp { and_, or_, xor_, and_not };

inline bool apply(BoolOp op, bool x, bool y) noexcept {
    switch (op) {
        case BoolOp::and_: return x && y;
        case BoolOp::or_: return x || y;
        case BoolOp::xor_: return x != y;
        case BoolOp::and_not: return x && !y;
    }
    return false;
}

/// Synchronous product; only reachable pairs are built.
inline CompleteDfa product(const CompleteDfa& a, const CompleteDfa& b, BoolOp op) {
    require_same_alphabet(a.alphabet(), b.alphabet());
    const auto k = a.alphabet().size();
    const std::uint64_t nb = b.state_count();
    std::unordered_map<std::uint64_t, State> id;
    std::vector<std::pair<State, State>> order;
    auto intern = [&](State p, State q) {
        auto key = p * nb + q;
        auto [it, fresh] = id.try_emplace(key, static_cast<State>(order.size()));
        if (fresh) order.emplace_back(p, q);
        return it->second;
    };
    intern(a.initial(), b.initial());
    std::vector<State> delta;
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto [p, q] = order[i];
        for (Letter l = 0; l < k; ++l) delta.push_back(intern(a.next(p, l), b.next(q, l)));
    }
    std::vector<std::uint8_t> acc(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        acc[i] = apply(op, a.is_accepting(order[i].first), b.is_accepting(order[i].second));
    return CompleteDfa(a.alphabet(), order.size(), 0, std::move(delta), std::move(acc));
}

inline CompleteDfa complement(const CompleteDfa& a) {
    std::vector<std::uint8_t> acc(a.accepting().begin(), a.accepting().end());
    for (auto& b : acc) b = !b;
    return CompleteDfa(a.alphabet(), a.state_count(), a.initial(),
                       std::vector<State>(a.transitions().begin(), a.transitions().end()), std::move(acc));
}

namespace detail {

// Refinable partition over states 0..n-1. Marked elements of a block are
// kept at the front of its segment.
struct Partition {
    std::vector<State> elems, loc, block_of;
    std::vector<std::uint32_t> first, end, marked;
    std::vector<std::uint32_t> touched;

    explicit Partition(std::size_t n) : elems(n), loc(n), block_of(n, 0) {
        for (State i = 0; i < n; ++i) elems[i] = loc[i] = i;
        first.push_back(0);
        end.push_back(static_cast<std::uint32_t>(n));
        marked.push_back(0);
    }

    std::size_t blocks() const noexcept { return first.size(); }
    std::uint32_t size(std::uint32_t b) const noexcept { return end[b] - first[b]; }

    void mark(State s) {
        auto b = block_of[s];
        auto i = loc[s];
        auto m = first[b] + marked[b];
        if (i < m) return;
        std::swap(elems[i], elems[m]);
        loc[elems[i]] = i;
        loc[elems[m]] = m;
        if (marked[b]++ == 0) touched.push_back(b);
    }

    // Splits every touched block into marked / unmarked halves. The new block
    // always receives the smaller half; new block ids are returned.
    std::vector<std::uint32_t> split() {
        std::vector<std::uint32_t> fresh;
        for (auto b : touched) {
            auto m = marked[b];
            marked[b] = 0;
            if (m == size(b)) continue;
            auto nb = static_cast<std::uint32_t>(blocks());
            if (m <= size(b) - m) {
                first.push_back(first[b]);
                end.push_back(first[b] + m);
                first[b] += m;
            } else {
                first.push_back(first[b] + m);
                end.push_back(end[b]);
                end[b] = first[b] + m;
            }
            marked.push_back(0);
            for (auto i = first[nb]; i < end[nb]; ++i) block_of[elems[i]] = nb;
            fresh.push_back(nb);
        }
        touched.clear();
        return fresh;
    }
};

}  // namespace detail

/// Hopcroft partition refinement. The result is the unique minimal complete
/// DFA for L(a), with states numbered in BFS order from the initial state.
inline CompleteDfa minimize(const CompleteDfa& input) {
    const auto a = input.reachable_part();
    const auto n = a.state_count();
    const auto k = a.alphabet().size();

    // Inverse transitions in CSR form, indexed by letter * n + target.
    std::vector<std::uint32_t> start(n * k + 1, 0);
    for (State q = 0; q < n; ++q)
        for (Letter l = 0; l < k; ++l) ++start[l * n + a.next(q, l) + 1];
    for (std::size_t i = 1; i < start.size(); ++i) start[i] += start[i - 1];
    std::vector<State> preds(n * k);
    {
        auto fill = start;
        for (State q = 0; q < n; ++q)
            for (Letter l = 0; l < k; ++l) preds[fill[l * n + a.next(q, l)]++] = q;
    }

    detail::Partition part(n);
    for (State q = 0; q < n; ++q)
        if (a.is_accepting(q)) part.mark(q);
    std::vector<std::uint32_t> work = part.split();

    std::vector<State> splitter;
    while (!work.empty()) {
        auto b = work.back();
        work.pop_back();
        splitter.assign(part.elems.begin() + part.first[b], part.elems.begin() + part.end[b]);
        for (Letter l = 0; l < k; ++l) {
            for (auto q : splitter)
                for (auto i = start[l * n + q]; i < start[l * n + q + 1]; ++i) part.mark(preds[i]);
            for (auto nb : part.split()) work.push_back(nb);
        }
    }

    const auto blocks = part.blocks();
    std::vector<State> id(blocks, no_state);
    std::vector<std::uint32_t> order;
    auto visit = [&](std::uint32_t b) {
        if (id[b] == no_state) {
            id[b] = static_cast<State>(order.size());
            order.push_back(b);
        }
        return id[b];
    };
    visit(part.block_of[a.initial()]);
    std::vector<State> delta;
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto rep = part.elems[part.first[order[i]]];
        for (Letter l = 0; l < k; ++l) delta.push_back(visit(part.block_of[a.next(rep, l)]));
    }
    std::vector<std::uint8_t> acc(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) acc[i] = a.is_accepting(part.elems[part.first[order[i]]]);
    return CompleteDfa(a.alphabet(), order.size(), 0, std::move(delta), std::move(acc));
}

/// Shortlex-least accepted word, found by BFS with letters tried in canonical
/// order. Returns nullopt iff the language is empty.
inline std::optional<Word> shortest_accepted(const CompleteDfa& a) {
    const auto n = a.state_count();
    const auto k = a.alphabet().size();
    if (a.is_accepting(a.initial())) return Word{};
    std::vector<State> parent(n, no_state);
    std::vector<Letter> via(n, 0);
    std::vector<bool> seen(n, false);
    std::deque<State> queue{a.initial()};
    seen[a.initial()] = true;
    while (!queue.empty()) {
        auto q = queue.front();
        queue.pop_front();
        for (Letter l = 0; l < k; ++l) {
            auto r = a.next(q, l);
            if (seen[r]) continue;
            seen[r] = true;
            parent[r] = q;
            via[r] = l;
            if (a.is_accepting(r)) {
                Word w;
                for (auto s = r; s != a.initial(); s = parent[s]) w.push_back(via[s]);
                std::reverse(w.begin(), w.end());
                return w;
            }
            queue.push_back(r);
        }
    }
    return std::nullopt;
}

/// nullopt when L(a) = L(b); otherwise the shortlex-least word of the
/// symmetric difference.
inline std::optional<Word> equivalent(const CompleteDfa& a, const CompleteDfa& b) {
    require_same_alphabet(a.alphabet(), b.alphabet());
    const auto k = a.alphabet().size();
    const std::uint64_t nb = b.state_count();
    auto differs = [&](State p, State q) { return a.is_accepting(p) != b.is_accepting(q); };
    if (differs(a.initial(), b.initial())) return Word{};
    struct Node {
        State p, q;
        std::uint32_t parent;
        Letter via;
    };
    std::vector<Node> nodes{{a.initial(), b.initial(), 0, 0}};
    std::unordered_map<std::uint64_t, std::uint32_t> seen{{a.initial() * nb + b.initial(), 0}};
    for (std::uint32_t i = 0; i < nodes.size(); ++i) {
        for (Letter l = 0; l < k; ++l) {
            auto p = a.next(nodes[i].p, l);
            auto q = b.next(nodes[i].q, l);
            if (!seen.try_emplace(p * nb + q, static_cast<std::uint32_t>(nodes.size())).second) continue;
            nodes.push_back({p, q, i, l});
            if (differs(p, q)) {
                Word w;
                for (auto j = static_cast<std::uint32_t>(nodes.size() - 1); j != 0; j = nodes[j].parent)
                    w.push_back(nodes[j].via);
                std::reverse(w.begin(), w.end());
                return w;
            }
        }
    }
    return std::nullopt;
}

/// Nondeterministic automaton; only produced by projection.
struct Nfa {
    TupleAlphabet alphabet;
    std::size_t states = 0;
    std::vector<State> initial;
    std::vector<std::vector<State>> delta;  // indexed by state * |alphabet| + letter
    std::vector<std::uint8_t> accepting;

    const std::vector<State>& next(State q, Letter l) const { return delta[q * alphabet.size() + l]; }
};

/// For each letter of `from`, the letter of the sub-alphabet formed by the
/// listed tracks.
inline std::vector<Letter> track_projection_map(const TupleAlphabet& from, const std::vector<std::size_t>& tracks) {
    std::vector<std::uint32_t> radices;
    for (auto t : tracks) radices.push_back(from.radix(t));
    TupleAlphabet to(radices);
    std::vector<Letter> map(from.size());
    Digits sub(tracks.size());
    for (Letter l = 0; l < from.size(); ++l) {
        auto d = from.decode(l);
        for (std::size_t i = 0; i < tracks.size(); ++i) sub[i] = d[tracks[i]];
        map[l] = to.encode(sub);
    }
    return map;
}

enum class Padding {
    exact,           ///< plain image: words keep their length
    leading_zeros,   ///< also accept w when 0^k w has a preimage (existential semantics)
};

/// Erases every track not listed in `keep` (strictly increasing track ids).
inline Nfa project(const CompleteDfa& a, const std::vector<std::size_t>& keep, Padding padding = Padding::exact) {
    if (keep.empty()) throw error("projection must keep at least one track");
    if (keep.size() >= a.arity()) throw error("projection must drop at least one track");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= a.arity()) throw error("projection keeps a nonexistent track");
        if (i && keep[i] <= keep[i - 1]) throw error("projection tracks must be strictly increasing");
    }
    auto map = track_projection_map(a.alphabet(), keep);
    std::vector<std::uint32_t> radices;
    for (auto t : keep) radices.push_back(a.alphabet().radix(t));
    Nfa n;
    n.alphabet = TupleAlphabet(radices);
    n.states = a.state_count();
    const auto k = n.alphabet.size();
    n.delta.assign(n.states * k, {});
    for (State q = 0; q < a.state_count(); ++q)
        for (Letter l = 0; l < a.alphabet().size(); ++l) {
            auto& cell = n.delta[q * k + map[l]];
            auto r = a.next(q, l);
            if (std::find(cell.begin(), cell.end(), r) == cell.end()) cell.push_back(r);
        }
    for (auto& cell : n.delta) std::sort(cell.begin(), cell.end());
    n.accepting.assign(a.accepting().begin(), a.accepting().end());
    n.initial = {a.initial()};
    if (padding == Padding::leading_zeros) {
        std::vector<bool> seen(n.states, false);
        seen[a.initial()] = true;
        for (std::size_t i = 0; i < n.initial.size(); ++i)
            for (auto r : n.next(n.initial[i], TupleAlphabet::zero()))
                if (!seen[r]) {
                    seen[r] = true;
                    n.initial.push_back(r);
                }
        std::sort(n.initial.begin(), n.initial.end());
    }
    return n;
}

/// Subset construction; the empty subset becomes the sink, so the result is
/// complete.
inline CompleteDfa determinize(const Nfa& n) {
    const auto k = n.alphabet.size();
    std::map<std::vector<State>, State> id;
    std::vector<const std::vector<State>*> order;
    auto intern = [&](std::vector<State> set) {
        auto [it, fresh] = id.try_emplace(std::move(set), static_cast<State>(order.size()));
        if (fresh) order.push_back(&it->first);
        return it->second;
    };
    auto init = n.initial;
    std::sort(init.begin(), init.end());
    init.erase(std::unique(init.begin(), init.end()), init.end());
    intern(std::move(init));
    std::vector<State> delta;
    std::vector<std::uint8_t> acc;
    std::vector<bool> mark(n.states, false);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& set = *order[i];
        bool accepting = false;
        for (auto q : set) accepting = accepting || n.accepting[q];
        acc.push_back(accepting);
        for (Letter l = 0; l < k; ++l) {
            std::vector<State> next;
            for (auto q : set)
                for (auto r : n.next(q, l))
                    if (!mark[r]) {
                        mark[r] = true;
                        next.push_back(r);
                    }
            for (auto r : next) mark[r] = false;
            std::sort(next.begin(), next.end());
            delta.push_back(intern(std::move(next)));
        }
    }
    return CompleteDfa(n.alphabet, order.size(), 0, std::move(delta), std::move(acc));
}

}  // namespace selfverify

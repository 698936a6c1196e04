#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "selfverify/numeration.hpp"
#include "selfverify/ops.hpp"
#include "selfverify/relations.hpp"

namespace selfverify {

/// An automaton read through a track wiring, optionally negated.
struct Literal {
    CompleteDfa payload;
    std::vector<std::size_t> wiring;
    bool negated = false;
};

/// Quantifier-free conjunction of literals over a fixed set of tracks. Every
/// track is implicitly required to hold a valid representation.
class ConjunctiveQuery {
public:
    explicit ConjunctiveQuery(TrackSystemSpec spec) : spec_(std::move(spec)) {}

    ConjunctiveQuery& add(CompleteDfa payload, std::vector<std::size_t> wiring, bool negated = false) {
        if (wiring.size() != payload.arity()) throw error("literal wiring must match payload arity");
        // validate now so errors surface at construction
        embed(CompleteDfa::accept_all(payload.alphabet()), wiring, spec_.alphabet());
        literals_.push_back({std::move(payload), std::move(wiring), negated});
        return *this;
    }
    ConjunctiveQuery& add_not(CompleteDfa payload, std::vector<std::size_t> wiring) {
        return add(std::move(payload), std::move(wiring), true);
    }

    const TrackSystemSpec& spec() const noexcept { return spec_; }
    std::size_t arity() const noexcept { return spec_.arity(); }
    const std::vector<Literal>& literals() const noexcept { return literals_; }

private:
    TrackSystemSpec spec_;
    std::vector<Literal> literals_;
};

struct CompileOptions {
    /// Intermediate products above this size are minimized before the next
    /// conjunct.
    std::size_t minimize_threshold = 10000;
};

struct CompileResult {
    CompleteDfa dfa;
    std::size_t peak_states = 0;
};

/// Embedded automata of every conjunct, validity first.
inline std::vector<CompleteDfa> embedded_conjuncts(const ConjunctiveQuery& q) {
    auto alpha = q.spec().alphabet();
    std::vector<CompleteDfa> parts{validity_automaton(q.spec())};
    for (const auto& lit : q.literals()) {
        const auto& p = lit.negated ? complement(lit.payload) : lit.payload;
        parts.push_back(embed(p, lit.wiring, alpha));
    }
    return parts;
}

/// Product of all conjuncts, smallest first, minimizing large intermediates.
inline CompileResult compile_with_stats(const ConjunctiveQuery& q, const CompileOptions& opts = {}) {
    auto parts = embedded_conjuncts(q);
    std::stable_sort(parts.begin(), parts.end(),
                     [](const CompleteDfa& a, const CompleteDfa& b) { return a.state_count() < b.state_count(); });
    CompileResult r{parts.front(), parts.front().state_count()};
    for (std::size_t i = 1; i < parts.size(); ++i) {
        r.dfa = product(r.dfa, parts[i], BoolOp::and_);
        r.peak_states = std::max(r.peak_states, r.dfa.state_count());
        if (r.dfa.state_count() > opts.minimize_threshold) r.dfa = minimize(r.dfa);
    }
    r.dfa = minimize(r.dfa);
    return r;
}

inline CompleteDfa compile(const ConjunctiveQuery& q, const CompileOptions& opts = {}) {
    return compile_with_stats(q, opts).dfa;
}

struct Witness {
    Word word;
    std::vector<Natural> values;
};

/// Breadth-first search over the synchronous product of several wired
/// automata without building it. Finds the shortlex-least word accepted by
/// every component (negated components must reject).
class ProductSearch {
public:
    explicit ProductSearch(TupleAlphabet alphabet) : alphabet_(std::move(alphabet)) {}

    void add(const CompleteDfa& dfa, const std::vector<std::size_t>& wiring, bool negated) {
        Component c;
        c.dfa = &dfa;
        c.negated = negated;
        bool identity = wiring.size() == alphabet_.arity();
        for (std::size_t i = 0; identity && i < wiring.size(); ++i) identity = wiring[i] == i;
        if (identity) {
            require_same_alphabet(dfa.alphabet(), alphabet_);
        } else {
            for (std::size_t i = 0; i < wiring.size(); ++i)
                if (wiring[i] >= alphabet_.arity() || alphabet_.radix(wiring[i]) != dfa.alphabet().radix(i))
                    throw alphabet_mismatch("component wiring does not fit the search alphabet");
            c.map = track_projection_map(alphabet_, wiring);
        }
        auto live = dfa.live_states();
        if (negated) live = complement(dfa).live_states();
        c.live = std::move(live);
        components_.push_back(std::move(c));
    }

    /// Explored-state cap; exceeding it throws budget_exceeded.
    void set_limit(std::size_t limit) { limit_ = limit; }
    std::size_t explored() const noexcept { return explored_; }

    std::optional<Word> search() {
        const auto m = components_.size();
        const auto k = alphabet_.size();
        explored_ = 0;
        if (m == 0) return Word{};
        pool_.clear();
        parent_.clear();
        via_.clear();
        table_.assign(1024, empty_slot);
        std::vector<State> cur(m), nxt(m);
        for (std::size_t c = 0; c < m; ++c) cur[c] = components_[c].dfa->initial();
        if (!alive(cur)) return std::nullopt;
        insert(cur, empty_slot, 0);
        if (accepting(cur)) return Word{};
        for (std::uint32_t i = 0; i < parent_.size(); ++i) {
            std::copy_n(pool_.begin() + static_cast<std::ptrdiff_t>(i * m), m, cur.begin());
            for (Letter l = 0; l < k; ++l) {
                bool ok = true;
                for (std::size_t c = 0; c < m && ok; ++c) {
                    const auto& comp = components_[c];
                    auto sub = comp.map.empty() ? l : comp.map[l];
                    nxt[c] = comp.dfa->next(cur[c], sub);
                    ok = comp.live[nxt[c]];
                }
                if (!ok) continue;
                if (!insert(nxt, i, l)) continue;
                if (accepting(nxt)) {
                    Word w;
                    for (auto j = static_cast<std::uint32_t>(parent_.size() - 1); parent_[j] != empty_slot; j = parent_[j])
                        w.push_back(via_[j]);
                    std::reverse(w.begin(), w.end());
                    return w;
                }
            }
        }
        return std::nullopt;
    }

private:
    struct Component {
        const CompleteDfa* dfa = nullptr;
        std::vector<Letter> map;
        std::vector<bool> live;
        bool negated = false;
    };
    static constexpr std::uint32_t empty_slot = 0xffffffffu;

    bool alive(const std::vector<State>& s) const {
        for (std::size_t c = 0; c < s.size(); ++c)
            if (!components_[c].live[s[c]]) return false;
        return true;
    }

    bool accepting(const std::vector<State>& s) const {
        for (std::size_t c = 0; c < s.size(); ++c)
            if (components_[c].dfa->is_accepting(s[c]) == components_[c].negated) return false;
        return true;
    }

    std::size_t hash(const State* s) const {
        std::size_t h = 1469598103934665603ull;
        for (std::size_t c = 0; c < components_.size(); ++c) h = (h ^ s[c]) * 1099511628211ull;
        return h ^ (h >> 29);
    }

    // Inserts a product state; false if it was already present.
    bool insert(const std::vector<State>& s, std::uint32_t parent, Letter via) {
        const auto m = components_.size();
        if ((parent_.size() + 1) * 2 > table_.size()) rehash();
        auto mask = table_.size() - 1;
        for (auto slot = hash(s.data()) & mask;; slot = (slot + 1) & mask) {
            auto idx = table_[slot];
            if (idx == empty_slot) {
                table_[slot] = static_cast<std::uint32_t>(parent_.size());
                pool_.insert(pool_.end(), s.begin(), s.end());
                parent_.push_back(parent);
                via_.push_back(via);
                if (++explored_ > limit_) throw budget_exceeded("product search exceeded its state limit");
                return true;
            }
            if (std::equal(s.begin(), s.end(), pool_.begin() + static_cast<std::ptrdiff_t>(idx * m))) return false;
        }
    }

    void rehash() {
        const auto m = components_.size();
        std::vector<std::uint32_t> t(table_.size() * 2, empty_slot);
        auto mask = t.size() - 1;
        for (std::uint32_t i = 0; i < parent_.size(); ++i) {
            auto slot = hash(pool_.data() + i * m) & mask;
            while (t[slot] != empty_slot) slot = (slot + 1) & mask;
            t[slot] = i;
        }
        table_ = std::move(t);
    }

    TupleAlphabet alphabet_;
    std::vector<Component> components_;
    std::vector<State> pool_;
    std::vector<std::uint32_t> parent_;
    std::vector<Letter> via_;
    std::vector<std::uint32_t> table_;
    std::size_t limit_ = std::size_t(1) << 31;
    std::size_t explored_ = 0;
};

/// Shortlex-least word satisfying the query, decoded per track; nullopt iff
/// the compiled query accepts nothing.
inline std::optional<Witness> witness(const ConjunctiveQuery& q) {
    auto alpha = q.spec().alphabet();
    auto valid = validity_automaton(q.spec());
    std::vector<std::size_t> identity(q.arity());
    std::iota(identity.begin(), identity.end(), 0);
    ProductSearch search(alpha);
    search.add(valid, identity, false);
    for (const auto& lit : q.literals()) search.add(lit.payload, lit.wiring, lit.negated);
    auto w = search.search();
    if (!w) return std::nullopt;
    return Witness{*w, tuple_decode(q.spec(), *w)};
}

struct ExistsResult {
    CompleteDfa dfa;
    std::size_t peak_states = 0;
};

/// exists <drop> . q, as a minimal DFA over the remaining tracks. Padding on
/// the remaining tracks is closed under leading zeros, so witnesses for the
/// dropped tracks may be longer than the free variables' representations.
inline ExistsResult exists_compile(const ConjunctiveQuery& q, std::vector<std::size_t> drop, const CompileOptions& opts = {}) {
    std::sort(drop.begin(), drop.end());
    drop.erase(std::unique(drop.begin(), drop.end()), drop.end());
    if (drop.empty() || drop.size() >= q.arity()) throw error("exists_compile: drop set must be nonempty and proper");
    std::vector<std::size_t> keep;
    for (std::size_t t = 0; t < q.arity(); ++t)
        if (!std::binary_search(drop.begin(), drop.end(), t)) keep.push_back(t);
    auto compiled = compile_with_stats(q, opts);
    auto det = determinize(project(compiled.dfa, keep, Padding::leading_zeros));
    ExistsResult r{minimize(det), std::max(compiled.peak_states, det.state_count())};
    return r;
}

}  // namespace selfverify

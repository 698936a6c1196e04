#include <random>

#include <gtest/gtest.h>

#include "selfverify/io.hpp"
#include "selfverify/ops.hpp"
#include "selfverify/relations.hpp"
#include "support/oracles.hpp"

using namespace selfverify;

namespace {

const TupleAlphabet bin({2});

// 0*1
CompleteDfa zeros_then_one() { return CompleteDfa(bin, 3, 0, {0, 1, 2, 2, 2, 2}, {0, 1, 0}); }

CompleteDfa even_length() { return CompleteDfa(bin, 2, 0, {1, 1, 0, 0}, {1, 0}); }

bool is_zeros_then_one(const Word& w) {
    if (w.empty() || w.back() != 1) return false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] != 0) return false;
    return true;
}

CompleteDfa random_dfa(std::mt19937& rng, const TupleAlphabet& alpha, std::size_t states) {
    std::uniform_int_distribution<State> pick(0, static_cast<State>(states - 1));
    std::vector<State> delta(states * alpha.size());
    for (auto& d : delta) d = pick(rng);
    std::vector<std::uint8_t> acc(states);
    for (auto& a : acc) a = rng() % 2;
    return CompleteDfa(alpha, states, pick(rng), std::move(delta), std::move(acc));
}

}  // namespace

TEST(TupleAlphabet, TrackZeroIsMostSignificant) {
    TupleAlphabet a({4, 3});
    EXPECT_EQ(a.size(), 12u);
    EXPECT_EQ(a.encode({1, 2}), 5u);
    EXPECT_EQ(a.decode(5), (Digits{1, 2}));
    EXPECT_EQ(a.digit(11, 0), 3u);
    EXPECT_EQ(a.digit(11, 1), 2u);
    EXPECT_THROW(TupleAlphabet({1}), error);
    EXPECT_THROW(TupleAlphabet(std::vector<std::uint32_t>{}), error);
}

TEST(CompleteDfa, RejectsMalformedInput) {
    EXPECT_THROW(CompleteDfa(bin, 2, 0, {0, 1, 5, 0}, {0, 1}), error);
    EXPECT_THROW(CompleteDfa(bin, 2, 2, {0, 1, 1, 0}, {0, 1}), error);
    EXPECT_THROW(CompleteDfa(bin, 2, 0, {0, 1, 1}, {0, 1}), error);
}

TEST(Product, AcceptAllIdentity) {
    auto r = minimize(product(CompleteDfa::accept_all(bin), CompleteDfa::accept_all(bin), BoolOp::and_));
    EXPECT_EQ(r.state_count(), 1u);
    EXPECT_TRUE(r.accepts({0, 1, 1}));
}

TEST(Product, XorWithItselfIsEmpty) {
    auto a = zeros_then_one();
    EXPECT_FALSE(shortest_accepted(product(a, a, BoolOp::xor_)).has_value());
}

TEST(Product, ZerosThenOneOfEvenLength) {
    auto r = product(zeros_then_one(), even_length(), BoolOp::and_);
    for (const auto& w : oracle::all_words(2, 6))
        EXPECT_EQ(r.accepts(w), is_zeros_then_one(w) && w.size() % 2 == 0);
    EXPECT_TRUE(r.accepts({0, 1}));
    EXPECT_TRUE(r.accepts({0, 0, 0, 1}));
    EXPECT_FALSE(r.accepts({0, 0, 1}));
}

TEST(Product, AlphabetMismatchIsRejected) {
    EXPECT_THROW(product(zeros_then_one(), CompleteDfa::accept_all(TupleAlphabet({3})), BoolOp::and_), alphabet_mismatch);
}

TEST(Product, ExploresReachablePairsOnly) {
    // both automata stay in their initial state forever
    auto r = product(CompleteDfa::accept_all(bin), CompleteDfa(bin, 3, 0, {0, 0, 1, 2, 2, 1}, {1, 0, 0}), BoolOp::and_);
    EXPECT_EQ(r.state_count(), 1u);
}

TEST(Product, RandomAutomataMatchBooleanCombination) {
    std::mt19937 rng(7);
    TupleAlphabet alpha({2, 2});
    auto words = oracle::all_words(4, 4);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_dfa(rng, alpha, 1 + rng() % 5);
        auto b = random_dfa(rng, alpha, 1 + rng() % 5);
        for (auto op : {BoolOp::and_, BoolOp::or_, BoolOp::xor_, BoolOp::and_not}) {
            auto p = product(a, b, op);
            for (const auto& w : words) ASSERT_EQ(p.accepts(w), apply(op, a.accepts(w), b.accepts(w)));
        }
    }
}

TEST(Complement, Basics) {
    EXPECT_FALSE(shortest_accepted(complement(CompleteDfa::accept_all(bin))).has_value());
    auto a = zeros_then_one();
    EXPECT_FALSE(equivalent(complement(complement(a)), a).has_value());
    auto c = complement(a);
    for (const auto& w : oracle::all_words(2, 6)) EXPECT_EQ(c.accepts(w), !is_zeros_then_one(w));
}

TEST(Minimize, Basics) {
    auto a = zeros_then_one();
    EXPECT_EQ(minimize(a).state_count(), 3u);
    EXPECT_EQ(minimize(CompleteDfa(bin, 2, 0, {1, 0, 0, 1}, {1, 1})).state_count(), 1u);
}

// Reference minimization: iterate the Moore equivalence to a fixed point.
static std::size_t moore_state_count(const CompleteDfa& a) {
    auto reach = a.reachable_states();
    std::vector<std::uint32_t> cls(a.state_count());
    for (State q = 0; q < a.state_count(); ++q) cls[q] = a.is_accepting(q);
    std::size_t count = 0;
    while (true) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> sig;
        std::vector<std::uint32_t> next(a.state_count());
        for (State q = 0; q < a.state_count(); ++q) {
            if (!reach[q]) continue;
            std::vector<std::uint32_t> s{cls[q]};
            for (Letter l = 0; l < a.alphabet().size(); ++l) s.push_back(cls[a.next(q, l)]);
            next[q] = sig.try_emplace(s, static_cast<std::uint32_t>(sig.size())).first->second;
        }
        cls = next;
        if (sig.size() == count) return count;
        count = sig.size();
    }
}

TEST(Minimize, AgreesWithMooreRefinementOnRandomAutomata) {
    std::mt19937 rng(11);
    TupleAlphabet alpha({3});
    auto words = oracle::all_words(3, 6);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_dfa(rng, alpha, 1 + rng() % 12);
        auto m = minimize(a);
        ASSERT_EQ(m.state_count(), moore_state_count(a));
        ASSERT_EQ(minimize(m).state_count(), m.state_count());
        ASSERT_FALSE(equivalent(a, m).has_value());
        for (const auto& w : words) ASSERT_EQ(a.accepts(w), m.accepts(w));
    }
}

TEST(ShortestAccepted, Basics) {
    EXPECT_FALSE(shortest_accepted(CompleteDfa::reject_all(bin)).has_value());
    EXPECT_EQ(shortest_accepted(CompleteDfa::accept_all(bin)), Word{});
    EXPECT_EQ(shortest_accepted(zeros_then_one()), (Word{1}));
}

TEST(ShortestAccepted, IsShortlexLeastOnRandomAutomata) {
    std::mt19937 rng(3);
    TupleAlphabet alpha({2});
    auto words = oracle::all_words(2, 8);  // already in shortlex order
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_dfa(rng, alpha, 1 + rng() % 6);
        auto w = shortest_accepted(a);
        std::optional<Word> expected;
        for (const auto& x : words)
            if (a.accepts(x)) {
                expected = x;
                break;
            }
        ASSERT_EQ(w, expected);
        ASSERT_EQ(shortest_accepted(a), w);
    }
}

TEST(Equivalent, Basics) {
    auto a = zeros_then_one();
    EXPECT_FALSE(equivalent(a, a).has_value());
    EXPECT_EQ(equivalent(CompleteDfa::accept_all(bin), CompleteDfa::reject_all(bin)), Word{});
    // 0*1 plus the word 00
    CompleteDfa b(bin, 6, 0, {3, 1, 2, 2, 2, 2, 4, 1, 5, 1, 5, 1}, {0, 1, 0, 0, 1, 0});
    for (const auto& w : oracle::all_words(2, 6)) ASSERT_EQ(b.accepts(w), is_zeros_then_one(w) || w == (Word{0, 0}));
    EXPECT_EQ(equivalent(a, b), (Word{0, 0}));
}

TEST(Project, DropsTracks) {
    // accepts words whose two tracks agree; projecting keeps everything
    auto eq = equality_relation(2);
    auto p = determinize(project(eq, {0}));
    EXPECT_FALSE(equivalent(minimize(p), CompleteDfa::accept_all(bin)).has_value());
    EXPECT_THROW(project(eq, {}), error);
    EXPECT_THROW(project(eq, {0, 1}), error);
}

TEST(Project, AdderImageIsEverything) {
    auto p = minimize(determinize(project(base_k_adder(2), {0})));
    EXPECT_FALSE(equivalent(p, CompleteDfa::accept_all(bin)).has_value());
}

TEST(Project, MatchesBruteForceImage) {
    std::mt19937 rng(5);
    TupleAlphabet alpha({2, 3});
    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_dfa(rng, alpha, 1 + rng() % 6);
        for (std::size_t keep : {0u, 1u}) {
            auto p = determinize(project(a, {keep}));
            const auto other = alpha.radix(1 - keep);
            const auto mine = alpha.radix(keep);
            for (const auto& w : oracle::all_words(mine, 5)) {
                // any word on the dropped track of the same length
                bool any = false;
                for (const auto& v : oracle::all_words(other, w.size())) {
                    if (v.size() != w.size()) continue;
                    Word full;
                    for (std::size_t i = 0; i < w.size(); ++i)
                        full.push_back(keep == 0 ? alpha.encode({w[i], v[i]}) : alpha.encode({v[i], w[i]}));
                    if (a.accepts(full)) {
                        any = true;
                        break;
                    }
                }
                ASSERT_EQ(p.accepts(w), any);
            }
        }
    }
}

TEST(Trim, RemovesDeadStatesOnly) {
    auto t = trim(CompleteDfa::accept_all(bin));
    EXPECT_EQ(t.states, 1u);
    EXPECT_EQ(t.removed, 0u);
    auto z = trim(zeros_then_one());
    EXPECT_EQ(z.states, 2u);
    EXPECT_EQ(z.removed, 1u);
    EXPECT_EQ(z.delta[1 * 2 + 0], no_state);
}

TEST(CanonicalText, RoundTrips) {
    std::mt19937 rng(9);
    TupleAlphabet alpha({4, 3});
    for (int trial = 0; trial < 10; ++trial) {
        auto a = random_dfa(rng, alpha, 1 + rng() % 8);
        auto text = to_canonical_text(a);
        auto back = parse_automaton(text).dfa;
        EXPECT_EQ(to_canonical_text(back), text);
    }
}

TEST(CanonicalText, ExactLayout) {
    EXPECT_EQ(to_canonical_text(zeros_then_one()),
              "dfa 1 2 3 0\n"
              "accepting 1\n"
              "0 0 0\n0 1 1\n1 0 2\n1 1 2\n2 0 2\n2 1 2\n");
}

TEST(CanonicalText, ParseErrors) {
    EXPECT_THROW(parse_automaton(""), parse_error);
    EXPECT_THROW(parse_automaton("dfa 1 2 1 0\naccepting 0\n0 0 0\n"), parse_error);
    EXPECT_THROW(parse_automaton("dfa 1 2 1 0\naccepting 3\n0 0 0\n0 1 0\n"), parse_error);
    EXPECT_THROW(parse_automaton("dfa 1 2 1 0\naccepting 0\n0 0 0\n0 1 7\n"), parse_error);
    EXPECT_THROW(parse_automaton("dfa x\n"), parse_error);
}

TEST(CanonicalText, ExtensionLines) {
    auto f = parse_automaton("dfa 1 2 1 0\naccepting 0\noutputs 0:3\nsystem 0 zeckendorf\nplaces 1 2 3\n0 0 0\n0 1 0\n");
    ASSERT_TRUE(f.outputs);
    EXPECT_EQ(f.outputs->at(0), 3u);
    EXPECT_EQ(f.systems.at(0), "zeckendorf");
    ASSERT_TRUE(f.places);
    EXPECT_EQ(f.places->size(), 3u);
}

TEST(Dot, MentionsEveryState) {
    auto dot = to_dot(zeros_then_one());
    EXPECT_NE(dot.find("digraph"), std::string::npos);
    EXPECT_NE(dot.find("doublecircle"), std::string::npos);
}

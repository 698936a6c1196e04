#include <cstdio>
#include <random>

#include <gtest/gtest.h>

#include "selfverify/relations.hpp"
#include "selfverify/teachers/adder.hpp"
#include "support/oracles.hpp"

using namespace selfverify;

namespace {

std::vector<std::pair<NumerationSystem, oracle::System>> systems() {
    return {{NumerationSystem::base(2), oracle::System::base(2)},
            {NumerationSystem::base(3), oracle::System::base(3)},
            {NumerationSystem::zeckendorf(), oracle::System::zeckendorf()},
            {NumerationSystem::tribonacci(), oracle::System::tribonacci()}};
}

Word pair_word(const NumerationSystem& ns, Natural a, Natural b) {
    return tuple_encode(TrackSystemSpec::uniform(ns, 2), {a, b});
}

}  // namespace

TEST(Encode, Examples) {
    EXPECT_EQ(NumerationSystem::base(2).encode(4), (Digits{1, 0, 0}));
    EXPECT_EQ(NumerationSystem::zeckendorf().encode(4), (Digits{1, 0, 1}));
    EXPECT_EQ(NumerationSystem::tribonacci().encode(5), (Digits{1, 0, 1}));
    EXPECT_TRUE(NumerationSystem::base(2).encode(0).empty());
}

TEST(Encode, MatchesExhaustiveEnumeration) {
    for (auto& [ns, ref] : systems())
        for (Natural n = 0; n <= 100; ++n) ASSERT_EQ(ns.encode(n), ref.canonical(n)) << ns.name() << " " << n;
}

TEST(Decode, Examples) {
    EXPECT_EQ(NumerationSystem::base(2).decode({0, 1, 0, 0}), 4u);
    EXPECT_EQ(NumerationSystem::zeckendorf().decode({1, 0, 1}), 4u);
    EXPECT_THROW(NumerationSystem::zeckendorf().decode({1, 1, 0}), invalid_representation);
    EXPECT_THROW(NumerationSystem::tribonacci().decode({1, 1, 1}), invalid_representation);
    EXPECT_THROW(NumerationSystem::base(2).decode({2}), invalid_representation);
}

TEST(Decode, RoundTripAndCanonicity) {
    for (auto& [ns, ref] : systems()) {
        for (Natural n = 0; n <= 10000; ++n) {
            auto rep = ns.encode(n);
            ASSERT_TRUE(rep.empty() || rep.front() != 0);
            ASSERT_TRUE(ref.valid(rep));
            ASSERT_EQ(ns.decode(rep), n);
            ASSERT_EQ(ref.value(rep), n);
        }
        // every valid word of a given length is the padded encoding of its value
        for (std::size_t len = 0; len <= 12; ++len)
            for (auto& [v, digits] : ref.all_of_length(len)) {
                ASSERT_TRUE(ns.is_valid(digits));
                Digits padded(len - ns.encode(v).size(), 0);
                auto rep = ns.encode(v);
                padded.insert(padded.end(), rep.begin(), rep.end());
                ASSERT_EQ(padded, digits);
            }
    }
}

TEST(Validity, AcceptsLeadingZeros) {
    for (auto& [ns, ref] : systems())
        for (Natural n = 0; n <= 200; ++n) {
            auto rep = ns.encode(n);
            rep.insert(rep.begin(), 3, 0);
            ASSERT_TRUE(ns.validity().accepts(rep));
        }
}

TEST(TupleEncode, Examples) {
    auto b2 = TrackSystemSpec::uniform(NumerationSystem::base(2), 3);
    auto a3 = b2.alphabet();
    EXPECT_EQ(tuple_encode(b2, {1, 2, 0}), (Word{a3.encode({0, 1, 0}), a3.encode({1, 0, 0})}));
    auto z = TrackSystemSpec::uniform(NumerationSystem::zeckendorf(), 2);
    auto a2 = z.alphabet();
    EXPECT_EQ(tuple_encode(z, {4, 1}), (Word{a2.encode({1, 0}), a2.encode({0, 0}), a2.encode({1, 1})}));
    TrackSystemSpec mixed({NumerationSystem::base(4), NumerationSystem::base(3)});
    auto am = mixed.alphabet();
    EXPECT_EQ(tuple_encode(mixed, {5, 2}), (Word{am.encode({1, 0}), am.encode({1, 2})}));
    EXPECT_TRUE(tuple_encode(b2, {0, 0, 0}).empty());
    EXPECT_EQ(tuple_decode(mixed, tuple_encode(mixed, {5, 2})), (std::vector<Natural>{5, 2}));
}

TEST(ConstAutomaton, Examples) {
    auto spec1 = TrackSystemSpec::uniform(NumerationSystem::base(2), 1);
    auto c0 = const_automaton(spec1, 0, 0);
    auto c5 = const_automaton(spec1, 0, 5);
    for (const auto& w : oracle::all_words(2, 5)) {
        bool zeros = std::all_of(w.begin(), w.end(), [](auto d) { return d == 0; });
        ASSERT_EQ(c0.accepts(w), zeros);
        bool is5 = w.size() >= 3 && std::equal(w.end() - 3, w.end(), Word{1, 0, 1}.begin()) &&
                   std::all_of(w.begin(), w.end() - 3, [](auto d) { return d == 0; });
        ASSERT_EQ(c5.accepts(w), is5);
    }
    auto spec3 = TrackSystemSpec::uniform(NumerationSystem::zeckendorf(), 3);
    auto c = product(const_automaton(spec3, 2, 4), validity_automaton(spec3), BoolOp::and_);
    auto alpha = spec3.alphabet();
    for (const auto& w : oracle::all_words(static_cast<std::uint32_t>(alpha.size()), 4)) {
        if (!tuple_valid(spec3, w)) {
            ASSERT_FALSE(c.accepts(w));
            continue;
        }
        ASSERT_EQ(c.accepts(w), tuple_decode(spec3, w)[2] == 4);
    }
}

TEST(Relations, EqualityAndOrder) {
    auto ns = NumerationSystem::base(2);
    auto eq = equality_relation(2);
    EXPECT_TRUE(eq.accepts(pair_word(ns, 7, 7)));
    EXPECT_FALSE(eq.accepts(pair_word(ns, 7, 8)));
    for (auto& [sys, ref] : systems()) {
        auto lt = less_relation(sys.radix());
        auto le = less_equal_relation(sys.radix());
        for (Natural m = 0; m <= 500; m += (sys.radix() == 2 ? 1 : 3))
            for (Natural n = 0; n <= 500; ++n) {
                auto w = pair_word(sys, m, n);
                ASSERT_EQ(lt.accepts(w), m < n);
                ASSERT_EQ(le.accepts(w), m <= n);
            }
    }
}

TEST(Relations, Incrementer) {
    auto inc2 = incrementer(NumerationSystem::base(2));
    auto a = inc2.alphabet();
    EXPECT_TRUE(inc2.accepts({a.encode({0, 1}), a.encode({1, 0}), a.encode({1, 0})}));
    for (auto& [ns, ref] : systems()) {
        auto inc = incrementer(ns);
        for (Natural n = 0; n <= 500; ++n)
            for (Natural x = n > 3 ? n - 3 : 0; x <= n + 3; ++x) ASSERT_EQ(inc.accepts(pair_word(ns, n, x)), x == n + 1);
    }
    auto z = NumerationSystem::zeckendorf();
    EXPECT_EQ(z.encode(5), (Digits{1, 0, 0, 0}));
    EXPECT_TRUE(incrementer(z).accepts(pair_word(z, 4, 5)));
}

TEST(Relations, IncrementerRejectsEverythingElse) {
    auto ns = NumerationSystem::zeckendorf();
    auto inc = incrementer(ns);
    for (const auto& w : oracle::all_words(4, 7)) {
        auto spec = TrackSystemSpec::uniform(ns, 2);
        if (!tuple_valid(spec, w)) {
            ASSERT_FALSE(inc.accepts(w));
            continue;
        }
        auto v = tuple_decode(spec, w);
        ASSERT_EQ(inc.accepts(w), v[1] == v[0] + 1);
    }
}

TEST(Relations, LeadingZeroClosure) {
    for (auto& [ns, ref] : systems()) {
        for (const auto& a : {equality_relation(ns.radix()), less_relation(ns.radix()), incrementer(ns)})
            EXPECT_EQ(a.next(a.initial(), 0), a.initial());
    }
    auto add = base_k_adder(2);
    EXPECT_EQ(add.next(add.initial(), 0), add.initial());
}

TEST(Adder, BaseK) {
    for (std::uint32_t k : {2u, 3u, 4u}) {
        auto ns = NumerationSystem::base(k);
        auto spec = TrackSystemSpec::uniform(ns, 3);
        auto add = adder(ns);
        EXPECT_EQ(add.state_count(), 3u);
        for (Natural x = 0; x <= 40; ++x)
            for (Natural y = 0; y <= 40; ++y)
                for (Natural z = 0; z <= 80; ++z) ASSERT_EQ(add.accepts(tuple_encode(spec, {x, y, z})), x + y == z);
    }
    auto spec = TrackSystemSpec::uniform(NumerationSystem::base(2), 3);
    EXPECT_TRUE(base_k_adder(2).accepts(tuple_encode(spec, {3, 5, 8})));
    EXPECT_FALSE(base_k_adder(2).accepts(tuple_encode(spec, {3, 5, 9})));
}

TEST(Adder, CustomSystemWithoutAdderIsUnsupported) {
    auto valid = CompleteDfa::accept_all(TupleAlphabet({2}));
    auto ns = NumerationSystem::custom("odd", valid, {1, 3, 7, 15, 31});
    EXPECT_THROW(adder(ns), unsupported_system);
}

TEST(Embed, Wiring) {
    auto eq = equality_relation(2);
    EXPECT_FALSE(equivalent(embed(eq, {0, 1}, TupleAlphabet({2, 2})), eq).has_value());
    TupleAlphabet a3({2, 2, 2});
    auto e = embed(eq, {0, 2}, a3);
    for (const auto& w : oracle::all_words(8, 4)) {
        bool same = true;
        for (auto l : w) same = same && a3.digit(l, 0) == a3.digit(l, 2);
        ASSERT_EQ(e.accepts(w), same);
    }
    EXPECT_THROW(embed(eq, {0, 0}, a3), error);
    EXPECT_THROW(embed(eq, {0, 3}, a3), error);
    EXPECT_THROW(embed(eq, {0, 1}, TupleAlphabet({2, 3})), alphabet_mismatch);
}

TEST(Embed, AdderInsideSixTracks) {
    auto spec6 = TrackSystemSpec::uniform(NumerationSystem::base(2), 6);
    auto e = embed(base_k_adder(2), {1, 3, 4}, spec6);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
        std::vector<Natural> v(6);
        for (auto& x : v) x = rng() % 1000;
        v[4] = v[1] + v[3];
        EXPECT_TRUE(e.accepts(tuple_encode(spec6, v)));
        v[4] += 1 + rng() % 5;
        EXPECT_FALSE(e.accepts(tuple_encode(spec6, v)));
    }
}

TEST(Systems, ByNameAndFromFile) {
    EXPECT_EQ(NumerationSystem::by_name("base3").radix(), 3u);
    EXPECT_EQ(NumerationSystem::by_name("msd_fib").kind(), SystemKind::zeckendorf);
    EXPECT_EQ(NumerationSystem::by_name("trib").kind(), SystemKind::tribonacci);
    EXPECT_THROW(NumerationSystem::by_name("nonsense"), unsupported_system);

    // the Zeckendorf system, described by hand
    auto path = testing::TempDir() + "zeck_system.txt";
    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        std::fputs("dfa 1 2 3 0\naccepting 0 1\nplaces 1 2 3 5 8 13 21 34 55 89\n0 0 0\n0 1 1\n1 0 0\n1 1 2\n2 0 2\n2 1 2\n",
                   f);
        std::fclose(f);
    }
    auto ns = NumerationSystem::from_file(path);
    EXPECT_EQ(ns.kind(), SystemKind::custom);
    auto z = NumerationSystem::zeckendorf();
    for (Natural n = 0; n < 100; ++n) ASSERT_EQ(ns.encode(n), z.encode(n));
    EXPECT_THROW(ns.decode({1, 1}), invalid_representation);
    EXPECT_THROW(ns.encode(1000), unsupported_system);
}

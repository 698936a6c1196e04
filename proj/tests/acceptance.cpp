// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
// on any failure.

#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "selfverify.hpp"
#include "support/oracles.hpp"

using namespace selfverify;

namespace {

using Pred = std::function<bool(const std::vector<oracle::u64>&)>;

struct Run {
    std::string label;
    std::unique_ptr<InductiveTeacher> teacher;
    LearnResult result;
    Pred reference;
    oracle::u64 bound = 64;
};

int failures = 0;

void report(int n, bool ok, const std::string& what) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << what << std::endl;
    if (!ok) ++failures;
}

std::vector<oracle::System> ref_tracks(const TrackSystemSpec& spec) {
    std::vector<oracle::System> out;
    for (std::size_t t = 0; t < spec.arity(); ++t) {
        switch (spec[t].kind()) {
            case SystemKind::zeckendorf: out.push_back(oracle::System::zeckendorf()); break;
            case SystemKind::tribonacci: out.push_back(oracle::System::tribonacci()); break;
            default: out.push_back(oracle::System::base(spec[t].radix()));
        }
    }
    return out;
}

bool uses_tribonacci(const TrackSystemSpec& spec) {
    for (std::size_t t = 0; t < spec.arity(); ++t)
        if (spec[t].kind() == SystemKind::tribonacci) return true;
    return false;
}

std::vector<std::int64_t> running_sums(const std::function<std::int64_t(oracle::u64)>& b, std::size_t n) {
    std::vector<std::int64_t> out{0};
    for (oracle::u64 i = 0; i < n; ++i) out.push_back(out.back() + b(i));
    return out;
}

std::int64_t rarefied(oracle::u64 n) { return oracle::thue_morse(3 * n) == 0 ? 1 : -1; }

std::function<std::int64_t(oracle::u64)> summand_oracle(const std::string& name) {
    if (name == "rarefied-thue-morse") return rarefied;
    auto x = std::make_shared<std::vector<int>>(oracle::prefix(name, 20000));
    return [x](oracle::u64 n) { return static_cast<std::int64_t>(x->at(n)); };
}

Run make_run(const std::string& label, std::unique_ptr<InductiveTeacher> t, Pred reference) {
    Run r{label, std::move(t), {}, std::move(reference)};
    r.result = learn(*r.teacher, *r.teacher, r.teacher->alphabet());
    if (uses_tribonacci(r.teacher->spec())) r.bound = 40;
    return r;
}

Pred sum_pred(const std::string& name) {
    auto sums = std::make_shared<std::vector<std::int64_t>>(running_sums(summand_oracle(name), 200));
    return [sums](const std::vector<oracle::u64>& v) { return static_cast<std::int64_t>(v[1]) == sums->at(v[0]); };
}

std::string join(const std::vector<std::string>& parts) {
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : ", ") + p;
    return s;
}

std::size_t trimmed(const CompleteDfa& a) { return trim(a).states; }

}  // namespace

int main() {
    try {
        std::map<std::string, Run> runs;
        auto add = [&](Run r) {
            auto label = r.label;
            runs.emplace(label, std::move(r));
        };

        for (const auto& name : sequences::builtin_names()) {
            auto x = std::make_shared<std::vector<int>>(oracle::prefix(name, 512));
            add(make_run("eqfac " + name, std::make_unique<EqFacTeacher>(sequences::builtin(name)),
                         [x](const auto& v) { return oracle::eqfac(*x, v[0], v[1], v[2]); }));
        }
        {
            auto x = std::make_shared<std::vector<int>>(oracle::prefix("thue-morse", 512));
            add(make_run("eqrevfac thue-morse", std::make_unique<EqRevFacTeacher>(sequences::thue_morse()),
                         [x](const auto& v) { return oracle::eqrevfac(*x, v[0], v[1], v[2]); }));
            add(make_run("period thue-morse", std::make_unique<PeriodTeacher>(sequences::thue_morse()),
                         [x](const auto& v) { return oracle::period(*x, v[0], v[1], v[2]); }));
        }
        auto sum3 = [](const auto& v) { return v[0] + v[1] == v[2]; };
        add(make_run("adder zeckendorf", std::make_unique<AdderTeacher>(NumerationSystem::zeckendorf()), sum3));
        add(make_run("adder tribonacci", std::make_unique<AdderTeacher>(NumerationSystem::tribonacci()), sum3));
        for (const auto& name : {"thue-morse", "fibonacci-word", "tribonacci-word", "rarefied-thue-morse"})
            add(make_run(std::string("partial-sum ") + name,
                         std::make_unique<PartialSumTeacher>(summands::builtin(name)), sum_pred(name)));

        auto states = [&](const std::string& l) { return runs.at(l).result.dfa.state_count(); };
        auto states_trimmed = [&](const std::string& l) { return trimmed(runs.at(l).result.dfa); };

        // 1
        report(1, states("eqfac thue-morse") == 15 && states_trimmed("eqfac thue-morse") == 14,
               "eqfac thue-morse has " + std::to_string(states("eqfac thue-morse")) + " states, " +
                   std::to_string(states_trimmed("eqfac thue-morse")) + " trimmed (want 15/14)");

        // 2
        {
            auto f = states("eqfac fibonacci-word"), t = states("eqfac tribonacci-word"),
                 tt = states_trimmed("eqfac tribonacci-word"), b = states("eqfac baum-sweet");
            std::ostringstream s;
            s << "eqfac fibonacci-word " << f << " (want 12), tribonacci-word " << t << "/" << tt
              << " (want 27/26), baum-sweet " << b << " (want 130)";
            report(2, f == 12 && t == 27 && tt == 26 && b == 130, s.str());
        }

        // 3
        {
            std::vector<std::pair<std::string, std::size_t>> want{{"thue-morse", 7},
                                                                  {"fibonacci-word", 7},
                                                                  {"tribonacci-word", 89},
                                                                  {"rarefied-thue-morse", 17}};
            bool ok = true;
            std::vector<std::string> parts;
            for (const auto& [name, n] : want) {
                auto got = states("partial-sum " + name);
                ok = ok && got == n;
                parts.push_back(name + " " + std::to_string(got) + " (want " + std::to_string(n) + ")");
            }
            report(3, ok, "partial sums: " + join(parts));
        }

        // 4
        {
            bool ok = true;
            std::vector<std::string> bad;
            for (auto& [label, r] : runs) {
                const auto& spec = r.teacher->spec();
                auto ref = oracle::truncated_target(ref_tracks(spec), r.bound, r.reference);
                auto restricted = product(r.result.dfa, ref.domain, BoolOp::and_);
                if (auto diff = equivalent(restricted, ref.target)) {
                    ok = false;
                    bad.push_back(label + " at " + format_word(spec.alphabet(), *diff));
                }
            }
            report(4, ok,
                   ok ? std::to_string(runs.size()) + " learned automata agree with brute force on values <= 64 (<= 40 "
                                                      "for tribonacci)"
                      : "mismatches: " + join(bad));
        }

        // 5
        {
            auto& r = runs.at("adder zeckendorf");
            auto spec = r.teacher->spec();
            std::size_t wrong = 0;
            for (Natural x = 0; x <= 500; ++x)
                for (Natural y = 0; y <= 500; ++y) {
                    auto z = x + y;
                    auto w = tuple_encode(spec, {x, y, z});
                    if (!r.result.dfa.accepts(w)) ++wrong;
                    // one wrong sum per pair
                    if (r.result.dfa.accepts(tuple_encode(spec, {x, y, z + 1 + (x * 7 + y) % 5}))) ++wrong;
                }
            bool verified = r.teacher->verify(r.result.dfa).correct;
            report(5, wrong == 0 && verified,
                   "zeckendorf adder: " + std::to_string(wrong) + " errors over x, y <= 500; verifier " +
                       (verified ? "accepts" : "rejects"));
        }

        // 6
        {
            std::mt19937_64 rng(20240601);
            bool ok = true;
            std::vector<std::string> parts;
            for (const auto* label : {"eqfac thue-morse", "eqrevfac thue-morse", "period thue-morse", "adder zeckendorf",
                                      "partial-sum thue-morse"}) {
                auto& r = runs.at(label);
                const auto& spec = r.teacher->spec();
                std::uniform_int_distribution<State> pick(0, static_cast<State>(r.result.dfa.state_count() - 1));
                std::size_t caught = 0;
                for (int k = 0; k < 100; ++k) {
                    auto mutant = r.result.dfa.with_flipped(pick(rng));
                    auto v = r.teacher->verify(mutant);
                    if (v.correct) continue;
                    bool member = r.teacher->query(v.counterexample);
                    if (member == mutant.accepts(v.counterexample)) continue;
                    bool reference = tuple_valid(spec, v.counterexample) &&
                                     r.reference(tuple_decode(spec, v.counterexample));
                    if (reference == member) ++caught;
                }
                ok = ok && caught == 100;
                parts.push_back(std::string(label) + " " + std::to_string(caught) + "/100");
            }
            report(6, ok, "confirmed counterexamples for single accepting-bit mutations: " + join(parts));
        }

        // 7
        {
            const auto& cached = runs.at("eqfac thue-morse").result.stats;
            EqFacTeacher t(sequences::thue_morse());
            LearnOptions no_cache;
            no_cache.use_cache = false;
            auto uncached = learn(t, t, t.alphabet(), no_cache);
            bool ok = cached.oracle_calls < cached.table_lookups &&
                      uncached.stats.oracle_calls >= 2 * cached.oracle_calls &&
                      !equivalent(uncached.dfa, runs.at("eqfac thue-morse").result.dfa);
            std::ostringstream s;
            s << "with cache " << cached.oracle_calls << " oracle calls for " << cached.table_lookups
              << " lookups; without cache " << uncached.stats.oracle_calls << " calls ("
              << static_cast<double>(uncached.stats.oracle_calls) / static_cast<double>(cached.oracle_calls) << "x)";
            report(7, ok, s.str());
        }

        // 8
        {
            auto seq = sequences::thue_morse();
            auto spec = TrackSystemSpec::uniform(seq.system(), 3);
            auto mismatch = exists_compile(eqfac_mismatch_query(seq, seq), {3, 4, 5});
            auto direct = minimize(product(validity_automaton(spec), mismatch.dfa, BoolOp::and_not));
            const auto& learned = runs.at("eqfac thue-morse").result.dfa;
            bool same = !equivalent(direct, learned);
            std::ostringstream s;
            s << "direct route: peak intermediate " << mismatch.peak_states << " states, final "
              << direct.state_count() << "; languages " << (same ? "agree" : "differ");
            report(8, same && mismatch.peak_states >= direct.state_count(), s.str());
        }

        // 9
        {
            struct Reference {
                std::string label;
                std::vector<std::size_t> values;  // queries, wrong hyps, longest cex, longest query, |S|, |E|
            };
            std::vector<Reference> reference{
                {"eqfac thue-morse", {1672, 7, 4, 8, 26, 9}},
                {"eqfac baum-sweet", {75243, 43, 8, 15, 210, 51}},
                {"eqfac fibonacci-word", {1032, 6, 3, 6, 16, 9}},
                {"eqfac tribonacci-word", {4816, 11, 7, 11, 40, 17}},
                {"partial-sum thue-morse", {132, 3, 3, 6, 8, 5}},
                {"partial-sum fibonacci-word", {146, 3, 4, 7, 11, 4}},
                {"partial-sum tribonacci-word", {12932, 23, 11, 18, 133, 32}},
                {"partial-sum rarefied-thue-morse", {3548, 9, 4, 9, 29, 11}},
            };
            bool ok = true;
            std::vector<std::pair<std::string, RunStats>> table;
            std::vector<std::string> off;
            for (const auto& p : reference) {
                const auto& s = runs.at(p.label).result.stats;
                table.emplace_back(p.label, s);
                std::vector<std::size_t> got{s.unique_queries,         s.incorrect_hypotheses, s.longest_counterexample,
                                             s.longest_queried_string, s.final_s,              s.final_e};
                for (std::size_t i = 0; i < got.size(); ++i)
                    if (got[i] * 10 < p.values[i] || got[i] > p.values[i] * 10) {
                        ok = false;
                        off.push_back(p.label + " metric " + std::to_string(i));
                    }
            }
            std::cout << format_stats_table(table);
            report(9, ok, ok ? "all soft metrics within 10x of the reference values" : "out of range: " + join(off));
        }

        // 10
        {
            bool ok = true;
            std::vector<std::string> parts;
            for (const auto& name : summands::builtin_names()) {
                PartialSumTeacher t(summands::builtin(name));
                const auto& index = t.summand().index_system();
                auto b = summand_oracle(name);
                auto sums = running_sums(b, 10001);
                std::size_t wrong = 0;
                for (Natural n = 0; n <= 10000; ++n) {
                    auto rep = index.encode(n);
                    for (int zeros = 0; zeros <= 3; ++zeros) {
                        if (t.linear_rep().eval(rep) != b(n)) ++wrong;
                        if (t.prefix_linear_rep().eval(rep) != sums[n]) ++wrong;
                        rep.insert(rep.begin(), 0);
                    }
                }
                ok = ok && wrong == 0;
                parts.push_back(name + " rank " + std::to_string(t.linear_rep().rank()) + " " +
                                std::to_string(wrong) + " errors");
            }
            report(10, ok, "linear representations for n <= 10000 with 0-3 leading zeros: " + join(parts));
        }
    } catch (const std::exception& e) {
        std::cout << "FAIL acceptance run aborted: " << e.what() << std::endl;
        return 1;
    }
    return failures == 0 ? 0 : 1;
}

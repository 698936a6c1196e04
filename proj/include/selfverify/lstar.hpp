#pragma once

#include <chrono>
#include <concepts>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "selfverify/dfa.hpp"
#include "selfverify/error.hpp"

namespace selfverify {

/// Outcome of a hypothesis query.
struct Verdict {
    bool correct = true;
    Word counterexample;
    std::string check;  ///< name of the failing condition

    static Verdict accept() { return {}; }
    static Verdict reject(Word w, std::string check) { return {false, std::move(w), std::move(check)}; }
};

template <class O>
concept MembershipOracle = requires(O& o, const Word& w) {
    { o.query(w) } -> std::convertible_to<bool>;
};

template <class V>
concept HypothesisVerifier = requires(V& v, const CompleteDfa& a) {
    { v.verify(a) } -> std::same_as<Verdict>;
};

struct RunStats {
    std::size_t unique_queries = 0;
    std::size_t oracle_calls = 0;
    std::size_t table_lookups = 0;
    std::size_t incorrect_hypotheses = 0;
    std::size_t longest_counterexample = 0;
    std::size_t longest_queried_string = 0;
    std::size_t final_states = 0;
    std::size_t final_s = 0;
    std::size_t final_e = 0;
    std::size_t iterations = 0;
    double seconds = 0.0;

    /// One `key=value` per line, keys named after the table rows. Wall time
    /// is omitted unless asked for, so the record is reproducible.
    std::string to_key_values(bool with_time = false) const {
        std::ostringstream out;
        out << "unique_queries=" << unique_queries << "\n"
            << "incorrect_hypotheses=" << incorrect_hypotheses << "\n"
            << "longest_counterexample=" << longest_counterexample << "\n"
            << "longest_queried_string=" << longest_queried_string << "\n"
            << "final_states=" << final_states << "\n"
            << "final_s=" << final_s << "\n"
            << "final_e=" << final_e << "\n";
        if (with_time) out << "total_time=" << seconds << "\n";
        return out.str();
    }

    std::string to_record(bool with_time = false) const {
        auto kv = to_key_values(with_time);
        for (auto& c : kv)
            if (c == '\n') c = ' ';
        if (!kv.empty()) kv.pop_back();
        return kv;
    }
};

/// Formats several runs side by side, one labelled row per metric.
inline std::string format_stats_table(const std::vector<std::pair<std::string, RunStats>>& runs) {
    const std::vector<std::pair<std::string, std::size_t RunStats::*>> rows{
        {"# of unique queries", &RunStats::unique_queries},
        {"# of incorrect hypotheses", &RunStats::incorrect_hypotheses},
        {"Longest counterexample", &RunStats::longest_counterexample},
        {"Longest queried string", &RunStats::longest_queried_string},
        {"Final # of states", &RunStats::final_states},
        {"Final |S|", &RunStats::final_s},
        {"Final |E|", &RunStats::final_e},
    };
    std::ostringstream out;
    auto pad = [](std::string s, std::size_t w) {
        if (s.size() < w) s.append(w - s.size(), ' ');
        return s;
    };
    out << pad("Metric", 28);
    for (const auto& [name, _] : runs) out << " " << pad(name, 16);
    out << "\n";
    for (const auto& [label, field] : rows) {
        out << pad(label, 28);
        for (const auto& [_, s] : runs) out << " " << pad(std::to_string(s.*field), 16);
        out << "\n";
    }
    return out.str();
}

/// Per-run memo of membership answers keyed on the raw word.
class QueryCache {
public:
    std::optional<bool> find(const Word& w) {
        auto it = map_.find(w);
        if (it == map_.end()) {
            ++misses_;
            return std::nullopt;
        }
        ++hits_;
        return it->second;
    }
    void store(const Word& w, bool v) { map_.emplace(w, v); }
    std::size_t size() const noexcept { return map_.size(); }
    std::size_t hits() const noexcept { return hits_; }
    std::size_t misses() const noexcept { return misses_; }

private:
    std::unordered_map<Word, bool, WordHash> map_;
    std::size_t hits_ = 0;
    std::size_t misses_ = 0;
};

struct ConsistencyViolation {
    Word s1, s2;
    Letter letter;
    Word column;
};

/// Angluin's observation table. S is kept in shortlex order, E in insertion
/// order starting with the empty word. T is not stored per cell: every cell
/// is a lookup of s.e through the query cache (or straight to the oracle
/// when the cache is disabled).
class ObservationTable {
public:
    using Oracle = std::function<bool(const Word&)>;

    ObservationTable(std::size_t alphabet_size, Oracle oracle, bool use_cache = true)
        : k_(alphabet_size), oracle_(std::move(oracle)), use_cache_(use_cache) {
        s_.insert(Word{});
        e_.push_back(Word{});
        e_set_.insert(Word{});
    }

    const std::set<Word, ShortlexLess>& s() const noexcept { return s_; }
    const std::vector<Word>& e() const noexcept { return e_; }
    std::size_t alphabet_size() const noexcept { return k_; }

    bool lookup(const Word& w) {
        ++lookups_;
        if (use_cache_) {
            if (auto v = cache_.find(w)) return *v;
        }
        bool v = call(w);
        if (use_cache_) cache_.store(w, v);
        return v;
    }

    /// Computes every row of S and S.Sigma; the rows stay valid until S or E
    /// changes.
    void fill() {
        rows_.clear();
        for (const auto& s : s_) {
            compute_row(s);
            auto ext = s;
            ext.push_back(0);
            for (Letter a = 0; a < k_; ++a) {
                ext.back() = a;
                compute_row(ext);
            }
        }
        filled_ = true;
    }

    const std::string& row(const Word& w) const {
        auto it = rows_.find(w);
        if (it == rows_.end()) throw std::logic_error("row requested before fill()");
        return it->second;
    }

    /// First S.Sigma label (canonical order) whose row matches no S row.
    std::optional<Word> check_closed() const {
        require_filled();
        std::unordered_set<std::string> srows;
        for (const auto& s : s_) srows.insert(row(s));
        for (const auto& s : s_) {
            auto ext = s;
            ext.push_back(0);
            for (Letter a = 0; a < k_; ++a) {
                ext.back() = a;
                if (s_.count(ext)) continue;
                if (!srows.count(row(ext))) return ext;
            }
        }
        return std::nullopt;
    }

    std::optional<ConsistencyViolation> check_consistent() const {
        require_filled();
        std::map<std::string, std::vector<const Word*>> groups;
        for (const auto& s : s_) {
            auto [it, fresh] = groups.try_emplace(row(s));
            it->second.push_back(&s);
        }
        // scan groups in order of their first member
        std::vector<const std::vector<const Word*>*> scan;
        for (const auto& [sig, members] : groups)
            if (members.size() > 1) scan.push_back(&members);
        std::sort(scan.begin(), scan.end(),
                  [](auto* a, auto* b) { return ShortlexLess{}(*a->front(), *b->front()); });
        for (auto* members : scan) {
            const auto& s1 = *members->front();
            for (std::size_t i = 1; i < members->size(); ++i) {
                const auto& s2 = *(*members)[i];
                for (Letter a = 0; a < k_; ++a) {
                    auto r1 = row(append(s1, a));
                    auto r2 = row(append(s2, a));
                    if (r1 == r2) continue;
                    for (std::size_t c = 0; c < e_.size(); ++c)
                        if (r1[c] != r2[c]) return ConsistencyViolation{s1, s2, a, e_[c]};
                }
            }
        }
        return std::nullopt;
    }

    void add_row(const Word& s) {
        // keep S prefix-closed
        for (std::size_t n = 0; n <= s.size(); ++n) s_.insert(Word(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n)));
        filled_ = false;
    }

    void add_column(const Word& e) {
        if (e_set_.insert(e).second) {
            // keep E suffix-closed
            for (std::size_t n = 1; n < e.size(); ++n) add_column(Word(e.begin() + static_cast<std::ptrdiff_t>(n), e.end()));
            e_.push_back(e);
        }
        filled_ = false;
    }

    /// Adds every prefix of the counterexample to S.
    void add_counterexample(const Word& w) { add_row(w); }

    /// States are the distinct S rows, numbered by first occurrence in S.
    CompleteDfa build_hypothesis(const TupleAlphabet& alphabet) const {
        if (alphabet.size() != k_) throw std::logic_error("hypothesis alphabet size mismatch");
        if (check_closed() || check_consistent())
            throw std::logic_error("build_hypothesis needs a closed and consistent table");
        std::unordered_map<std::string, State> id;
        std::vector<const Word*> reps;
        for (const auto& s : s_)
            if (id.try_emplace(row(s), static_cast<State>(reps.size())).second) reps.push_back(&s);
        std::vector<State> delta;
        std::vector<std::uint8_t> acc;
        for (auto* s : reps) {
            acc.push_back(row(*s)[0] == '1');
            for (Letter a = 0; a < k_; ++a) delta.push_back(id.at(row(append(*s, a))));
        }
        return CompleteDfa(alphabet, reps.size(), 0, std::move(delta), std::move(acc));
    }

    std::size_t distinct_s_rows() const {
        require_filled();
        std::unordered_set<std::string> srows;
        for (const auto& s : s_) srows.insert(row(s));
        return srows.size();
    }

    std::size_t lookups() const noexcept { return lookups_; }
    std::size_t oracle_calls() const noexcept { return calls_; }
    std::size_t unique_queries() const noexcept { return use_cache_ ? cache_.size() : calls_; }
    std::size_t longest_queried() const noexcept { return longest_queried_; }
    const QueryCache& cache() const noexcept { return cache_; }

private:
    static Word append(const Word& w, Letter a) {
        auto r = w;
        r.push_back(a);
        return r;
    }

    void require_filled() const {
        if (!filled_) throw std::logic_error("observation table must be filled first");
    }

    bool call(const Word& w) {
        ++calls_;
        longest_queried_ = std::max(longest_queried_, w.size());
        return oracle_(w);
    }

    void compute_row(const Word& label) {
        if (rows_.count(label)) return;
        std::string sig(e_.size(), '0');
        for (std::size_t c = 0; c < e_.size(); ++c) sig[c] = lookup(concat(label, e_[c])) ? '1' : '0';
        rows_.emplace(label, std::move(sig));
    }

    std::size_t k_;
    Oracle oracle_;
    bool use_cache_;
    QueryCache cache_;
    std::set<Word, ShortlexLess> s_;
    std::vector<Word> e_;
    std::set<Word> e_set_;
    std::map<Word, std::string, ShortlexLess> rows_;
    bool filled_ = false;
    std::size_t lookups_ = 0;
    std::size_t calls_ = 0;
    std::size_t longest_queried_ = 0;
};

struct LearnOptions {
    std::size_t max_unique_queries = 1'000'000;
    std::size_t max_states = 10'000;
    bool use_cache = true;
    std::function<void(const std::string&)> log;
};

struct LearnResult {
    CompleteDfa dfa;
    RunStats stats;
};

/// L*: fill, close, make consistent, hypothesize, verify, and fold the
/// counterexample's prefixes into S until the verifier accepts.
template <MembershipOracle O, HypothesisVerifier V>
LearnResult learn(O& oracle, V& verifier, const TupleAlphabet& alphabet, const LearnOptions& opts = {}) {
    const auto start = std::chrono::steady_clock::now();
    RunStats stats;
    ObservationTable table(
        alphabet.size(), [&](const Word& w) -> bool { return oracle.query(w); }, opts.use_cache);
    auto check_budget = [&] {
        if (table.unique_queries() > opts.max_unique_queries)
            throw budget_exceeded("query budget of " + std::to_string(opts.max_unique_queries) + " exceeded");
    };
    while (true) {
        ++stats.iterations;
        table.fill();
        check_budget();
        if (auto t = table.check_closed()) {
            table.add_row(*t);
            continue;
        }
        if (auto v = table.check_consistent()) {
            Word col{v->letter};
            col.insert(col.end(), v->column.begin(), v->column.end());
            table.add_column(col);
            continue;
        }
        auto hypothesis = table.build_hypothesis(alphabet);
        if (hypothesis.state_count() > opts.max_states)
            throw budget_exceeded("hypothesis exceeded " + std::to_string(opts.max_states) + " states");
        auto verdict = verifier.verify(hypothesis);
        if (opts.log) {
            std::ostringstream line;
            line << "hypothesis " << stats.incorrect_hypotheses + 1 << ": " << hypothesis.state_count() << " states, "
                 << table.unique_queries() << " queries, ";
            if (verdict.correct) line << "correct";
            else line << "counterexample " << format_word(alphabet, verdict.counterexample) << " (" << verdict.check << ")";
            opts.log(line.str());
        }
        if (verdict.correct) {
            stats.final_states = hypothesis.state_count();
            stats.final_s = table.s().size();
            stats.final_e = table.e().size();
            stats.unique_queries = table.unique_queries();
            stats.oracle_calls = table.oracle_calls();
            stats.table_lookups = table.lookups();
            stats.longest_queried_string = table.longest_queried();
            stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return {std::move(hypothesis), stats};
        }
        ++stats.incorrect_hypotheses;
        stats.longest_counterexample = std::max(stats.longest_counterexample, verdict.counterexample.size());
        const auto& cex = verdict.counterexample;
        if (table.s().count(cex) && hypothesis.accepts(cex) == (table.row(cex)[0] == '1'))
            throw std::logic_error("verifier returned a word the table already classifies like the hypothesis");
        table.add_counterexample(verdict.counterexample);
    }
}

}  // namespace selfverify

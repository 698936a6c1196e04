#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "selfverify/teachers/adder.hpp"
#include "selfverify/teachers/eqfac.hpp"
#include "selfverify/teachers/eqrevfac.hpp"
#include "selfverify/teachers/partial_sum.hpp"
#include "selfverify/teachers/period.hpp"

namespace selfverify {

enum class Predicate { eqfac, eqrevfac, period, adder, partial_sum };

inline Predicate parse_predicate(const std::string& s) {
    if (s == "eqfac") return Predicate::eqfac;
    if (s == "eqrevfac") return Predicate::eqrevfac;
    if (s == "period") return Predicate::period;
    if (s == "adder") return Predicate::adder;
    if (s == "partial-sum") return Predicate::partial_sum;
    throw error("unknown predicate '" + s + "' (expected eqfac, eqrevfac, period, adder or partial-sum)");
}

inline std::string predicate_name(Predicate p) {
    switch (p) {
        case Predicate::eqfac: return "eqfac";
        case Predicate::eqrevfac: return "eqrevfac";
        case Predicate::period: return "period";
        case Predicate::adder: return "adder";
        case Predicate::partial_sum: return "partial-sum";
    }
    return "?";
}

/// Everything one CLI job needs. `sequence` and `system` accept either a
/// built-in name or a file path.
struct JobConfig {
    Predicate predicate = Predicate::eqfac;
    std::string sequence;
    std::string system;
    std::string adder_file;
    Natural threshold_direct = 10'000'000;
    std::size_t max_queries = 1'000'000;
    std::size_t max_states = 10'000;
    bool use_cache = true;
    std::string out_dir = ".";
    std::vector<std::string> formats{"canonical", "dot"};
    std::uint64_t seed = 0;  // reserved

    LearnOptions learn_options() const {
        LearnOptions o;
        o.max_unique_queries = max_queries;
        o.max_states = max_states;
        o.use_cache = use_cache;
        return o;
    }
};

inline NumerationSystem resolve_system(const std::string& s) {
    if (std::filesystem::is_regular_file(s)) return NumerationSystem::from_file(s);
    return NumerationSystem::by_name(s);
}

inline bool is_builtin_sequence(const std::string& s) {
    for (const auto& n : sequences::builtin_names())
        if (n == s) return true;
    return false;
}

inline SequenceDfao resolve_sequence(const JobConfig& cfg) {
    if (cfg.sequence.empty()) throw error(predicate_name(cfg.predicate) + " needs --sequence");
    if (is_builtin_sequence(cfg.sequence)) {
        auto seq = sequences::builtin(cfg.sequence);
        if (!cfg.system.empty() && !(resolve_system(cfg.system) == seq.system()))
            throw error("sequence '" + cfg.sequence + "' is defined over " + seq.system().name());
        return seq;
    }
    if (!std::filesystem::is_regular_file(cfg.sequence)) throw error("unknown sequence '" + cfg.sequence + "'");
    if (cfg.system.empty()) throw error("a sequence file needs --system");
    return SequenceDfao::from_file(cfg.sequence, resolve_system(cfg.system));
}

/// Installs a user-supplied adder after checking it with the adder teacher.
inline void install_adder(const JobConfig& cfg, const NumerationSystem& ns) {
    if (cfg.adder_file.empty()) return;
    auto file = parse_automaton(read_text_file(cfg.adder_file));
    AdderTeacher teacher(ns);
    require_same_alphabet(file.dfa.alphabet(), teacher.alphabet());
    auto v = teacher.verify(file.dfa);
    if (!v.correct) {
        auto values = tuple_decode(teacher.spec(), v.counterexample);
        throw error(cfg.adder_file + " is not an adder: wrong on (" + std::to_string(values[0]) + "," +
                    std::to_string(values[1]) + "," + std::to_string(values[2]) + ") [" + v.check + "]");
    }
    AdderRegistry::instance().register_adder(ns, file.dfa);
}

/// Checks predicate/system compatibility and builds the teacher.
inline std::unique_ptr<InductiveTeacher> make_teacher(const JobConfig& cfg) {
    MembershipStrategy strategy{cfg.threshold_direct};
    switch (cfg.predicate) {
        case Predicate::adder: {
            if (cfg.system.empty()) throw error("adder needs --system");
            auto ns = resolve_system(cfg.system);
            install_adder(cfg, ns);
            return std::make_unique<AdderTeacher>(ns);
        }
        case Predicate::partial_sum: {
            if (cfg.sequence.empty()) throw error("partial-sum needs --sequence");
            Summand s = [&] {
                for (const auto& n : summands::builtin_names())
                    if (n == cfg.sequence) return summands::builtin(n);
                if (!std::filesystem::is_regular_file(cfg.sequence))
                    throw error("unknown summand '" + cfg.sequence + "'");
                return summands::from_file(cfg.sequence,
                                           cfg.system.empty() ? NumerationSystem::base(2) : resolve_system(cfg.system));
            }();
            install_adder(cfg, s.value_system());
            return std::make_unique<PartialSumTeacher>(std::move(s), strategy, cfg.learn_options());
        }
        default: break;
    }
    auto seq = resolve_sequence(cfg);
    install_adder(cfg, seq.system());
    switch (cfg.predicate) {
        case Predicate::eqfac: return std::make_unique<EqFacTeacher>(std::move(seq), strategy);
        case Predicate::eqrevfac: return std::make_unique<EqRevFacTeacher>(std::move(seq));
        default: return std::make_unique<PeriodTeacher>(std::move(seq));
    }
}

/// File stem for a job's outputs, e.g. "eqfac-thue-morse".
inline std::string job_stem(const JobConfig& cfg) {
    auto subject = cfg.predicate == Predicate::adder ? cfg.system : cfg.sequence;
    subject = std::filesystem::path(subject).stem().string();
    return predicate_name(cfg.predicate) + "-" + subject;
}

}  // namespace selfverify

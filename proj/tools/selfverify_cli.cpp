// Command-line driver: learn, verify, eval, compare, table.
//
// Exit codes: 0 success, 1 usage/configuration/parse error, 2 budget
// exceeded, 3 the verified automaton is wrong.

#include <charconv>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "selfverify/job.hpp"

using namespace selfverify;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_budget = 2;
constexpr int exit_wrong = 3;

struct Options {
    JobConfig cfg;
    std::string predicate;
    std::string automaton_file;
    std::string subject;
    std::vector<std::string> numbers;
    std::vector<std::string> table_sequences;
    bool quiet = false;
    bool force = false;
};

void add_job_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--sequence", o.cfg.sequence, "built-in sequence name or DFAO file");
    cmd->add_option("--system", o.cfg.system, "numeration system name (base2, zeckendorf, tribonacci, ...) or file");
    cmd->add_option("--adder", o.cfg.adder_file, "adder automaton for the system, canonical format");
    cmd->add_option("--threshold-direct", o.cfg.threshold_direct, "answer membership directly below this size");
    cmd->add_option("--max-queries", o.cfg.max_queries, "unique membership query budget");
    cmd->add_option("--max-states", o.cfg.max_states, "hypothesis size budget");
    cmd->add_flag("--no-cache", [&o](std::int64_t) { o.cfg.use_cache = false; }, "disable the membership cache");
    cmd->add_option("--seed", o.cfg.seed, "reserved");
    cmd->add_flag("--quiet", o.quiet, "no per-iteration log on stderr");
}

std::string tuple_text(const std::vector<Natural>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

LearnResult run_learn(InductiveTeacher& teacher, const Options& o) {
    auto opts = o.cfg.learn_options();
    if (!o.quiet) opts.log = [](const std::string& line) { std::cerr << line << std::endl; };
    return learn(teacher, teacher, teacher.alphabet(), opts);
}

std::vector<std::string> walnut_systems(const TrackSystemSpec& spec) {
    std::vector<std::string> out;
    for (std::size_t t = 0; t < spec.arity(); ++t) out.push_back(spec[t].walnut_name());
    return out;
}

int cmd_learn(Options& o) {
    o.cfg.predicate = parse_predicate(o.predicate);
    auto teacher = make_teacher(o.cfg);
    auto r = run_learn(*teacher, o);
    const auto stem = job_stem(o.cfg);
    std::filesystem::create_directories(o.cfg.out_dir);
    auto base = (std::filesystem::path(o.cfg.out_dir) / stem).string();
    for (const auto& f : o.cfg.formats) {
        if (f == "canonical") write_text_file(base + ".dfa", to_canonical_text(r.dfa));
        else if (f == "dot") write_text_file(base + ".dot", to_dot(r.dfa, stem));
        else if (f == "walnut") write_text_file(base + ".walnut", to_walnut_text(r.dfa, walnut_systems(teacher->spec())));
    }
    write_text_file(base + ".stats", r.stats.to_key_values());
    std::cout << stem << ": " << r.dfa.state_count() << " states (" << trim(r.dfa).states << " trimmed)\n"
              << format_stats_table({{stem, r.stats}}) << "total time " << r.stats.seconds << " s\n"
              << "wrote " << base << ".*\n";
    return exit_ok;
}

int cmd_verify(Options& o) {
    o.cfg.predicate = parse_predicate(o.predicate);
    auto file = parse_automaton(read_text_file(o.automaton_file));
    auto teacher = make_teacher(o.cfg);
    require_same_alphabet(file.dfa.alphabet(), teacher->alphabet());
    auto v = teacher->verify(file.dfa);
    if (v.correct) {
        std::cout << "correct\n";
        return exit_ok;
    }
    std::string values = "(invalid representation)";
    if (tuple_valid(teacher->spec(), v.counterexample)) values = tuple_text(tuple_decode(teacher->spec(), v.counterexample));
    std::cout << "counterexample " << values << " word " << format_word(teacher->alphabet(), v.counterexample)
              << ": automaton says " << (file.dfa.accepts(v.counterexample) ? "true" : "false") << " [" << v.check
              << "]\n";
    return exit_wrong;
}

int cmd_eval(Options& o) {
    o.cfg.predicate = parse_predicate(o.predicate);
    if (o.cfg.predicate == Predicate::adder) o.cfg.system = o.subject;
    else o.cfg.sequence = o.subject;
    auto teacher = make_teacher(o.cfg);
    std::vector<Natural> values;
    for (const auto& s : o.numbers) {
        Natural v = 0;
        auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || end != s.data() + s.size()) throw error("not a natural number: '" + s + "'");
        values.push_back(v);
    }
    if (values.size() != teacher->spec().arity())
        throw error(o.predicate + " takes " + std::to_string(teacher->spec().arity()) + " numbers");
    std::cout << (teacher->query_values(values) ? "true" : "false") << "\n";
    return exit_ok;
}

int cmd_compare(Options& o) {
    o.cfg.predicate = Predicate::eqfac;
    auto seq = resolve_sequence(o.cfg);
    if (seq.system().kind() == SystemKind::tribonacci && !o.force)
        throw error("refusing the direct method over the Tribonacci system: its intermediate automata are known to "
                    "reach hundreds of millions of states (use --force to try anyway)");
    install_adder(o.cfg, seq.system());
    auto spec = TrackSystemSpec::uniform(seq.system(), 3);
    auto mismatch = exists_compile(eqfac_mismatch_query(seq, seq), {3, 4, 5});
    auto direct = minimize(product(validity_automaton(spec), mismatch.dfa, BoolOp::and_not));
    EqFacTeacher teacher(seq, MembershipStrategy{o.cfg.threshold_direct});
    auto r = run_learn(teacher, o);
    auto diff = equivalent(direct, r.dfa);
    std::cout << "direct: peak intermediate " << mismatch.peak_states << " states, final " << direct.state_count()
              << " states (" << trim(direct).states << " trimmed)\n"
              << "lstar:  final " << r.dfa.state_count() << " states (" << trim(r.dfa).states << " trimmed)\n"
              << format_stats_table({{seq.name(), r.stats}})
              << "languages " << (diff ? "differ on " + format_word(spec.alphabet(), *diff) : std::string("agree")) << "\n";
    return diff ? exit_wrong : exit_ok;
}

int cmd_table(Options& o) {
    o.cfg.predicate = parse_predicate(o.predicate);
    std::vector<std::pair<std::string, RunStats>> runs;
    auto subjects = o.table_sequences;
    if (subjects.empty()) subjects = o.cfg.predicate == Predicate::partial_sum ? summands::builtin_names() : sequences::builtin_names();
    for (const auto& s : subjects) {
        auto cfg = o.cfg;
        if (cfg.predicate == Predicate::adder) cfg.system = s;
        else cfg.sequence = s;
        auto teacher = make_teacher(cfg);
        auto r = run_learn(*teacher, o);
        runs.emplace_back(s, r.stats);
    }
    std::cout << format_stats_table(runs);
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Learn and verify automata for self-verifying predicates over automatic sequences"};
    app.require_subcommand(1);
    Options o;

    auto* learn_cmd = app.add_subcommand("learn", "learn the automaton for a predicate");
    learn_cmd->add_option("predicate", o.predicate, "eqfac | eqrevfac | period | adder | partial-sum")->required();
    add_job_flags(learn_cmd, o);
    learn_cmd->add_option("--out", o.cfg.out_dir, "output directory");
    learn_cmd->add_option("--format", o.cfg.formats, "canonical, dot, walnut (repeatable)")
        ->check(CLI::IsMember({"canonical", "dot", "walnut"}));

    auto* verify_cmd = app.add_subcommand("verify", "check a given automaton with the predicate's induction");
    verify_cmd->add_option("predicate", o.predicate)->required();
    verify_cmd->add_option("automaton", o.automaton_file, "canonical-format file")->required();
    add_job_flags(verify_cmd, o);

    auto* eval_cmd = app.add_subcommand("eval", "answer one membership query");
    eval_cmd->add_option("predicate", o.predicate)->required();
    eval_cmd->add_option("subject", o.subject, "sequence (system for adder)")->required();
    eval_cmd->add_option("numbers", o.numbers, "the tuple")->required();
    add_job_flags(eval_cmd, o);

    auto* compare_cmd = app.add_subcommand("compare", "direct quantifier pipeline against L* for eqfac");
    add_job_flags(compare_cmd, o);
    compare_cmd->add_flag("--force", o.force, "run even where the direct method is known to blow up");

    auto* table_cmd = app.add_subcommand("table", "learn several targets and print run statistics side by side");
    table_cmd->add_option("predicate", o.predicate)->required();
    table_cmd->add_option("subjects", o.table_sequences, "sequences (systems for adder); default: all built-ins");
    add_job_flags(table_cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        auto code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        if (*learn_cmd) return cmd_learn(o);
        if (*verify_cmd) return cmd_verify(o);
        if (*eval_cmd) return cmd_eval(o);
        if (*compare_cmd) return cmd_compare(o);
        if (*table_cmd) return cmd_table(o);
    } catch (const budget_exceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return exit_budget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
    return exit_config;
}

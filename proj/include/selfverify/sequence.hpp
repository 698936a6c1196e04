#pragma once

#include <string>
#include <vector>

#include "selfverify/io.hpp"
#include "selfverify/numeration.hpp"
#include "selfverify/ops.hpp"

namespace selfverify {

using Symbol = std::uint32_t;

/// Automatic sequence: a one-track DFA over a numeration system with an
/// output symbol per state. X[n] is the output of the state reached on the
/// canonical representation of n.
class SequenceDfao {
public:
    SequenceDfao(std::string name, NumerationSystem system, CompleteDfa skeleton, std::vector<Symbol> outputs)
        : name_(std::move(name)), system_(std::move(system)), skeleton_(std::move(skeleton)), outputs_(std::move(outputs)) {
        if (skeleton_.arity() != 1 || skeleton_.alphabet().radix(0) != system_.radix())
            throw alphabet_mismatch("sequence skeleton must read one track of the system's radix");
        if (outputs_.size() != skeleton_.state_count()) throw error("one output per state required");
    }

    const std::string& name() const noexcept { return name_; }
    const NumerationSystem& system() const noexcept { return system_; }
    const CompleteDfa& skeleton() const noexcept { return skeleton_; }
    Symbol output(State q) const { return outputs_.at(q); }
    const std::vector<Symbol>& outputs() const noexcept { return outputs_; }

    Symbol eval(Natural n) const { return outputs_[skeleton_.run(system_.encode(n))]; }
    Symbol eval_word(const Digits& rep) const { return outputs_[skeleton_.run(rep)]; }

    std::vector<Symbol> prefix(std::size_t length) const {
        std::vector<Symbol> out;
        out.reserve(length);
        for (std::size_t n = 0; n < length; ++n) out.push_back(eval(n));
        return out;
    }

    /// One-track automaton accepting the representations n with X[n] = s.
    CompleteDfa symbol_automaton(Symbol s) const {
        std::vector<std::uint8_t> acc(outputs_.size());
        for (std::size_t q = 0; q < outputs_.size(); ++q) acc[q] = outputs_[q] == s;
        return minimize(CompleteDfa(skeleton_.alphabet(), skeleton_.state_count(), skeleton_.initial(),
                                    std::vector<State>(skeleton_.transitions().begin(), skeleton_.transitions().end()),
                                    std::move(acc)));
    }

    std::vector<Symbol> symbols() const {
        std::vector<Symbol> s(outputs_.begin(), outputs_.end());
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
    }

    static SequenceDfao from_file(const std::string& path, const NumerationSystem& system) {
        auto file = parse_automaton(read_text_file(path));
        if (!file.outputs) throw parse_error(path + ": missing 'outputs' line");
        auto name = path;
        if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
        return SequenceDfao(name, system, std::move(file.dfa), std::move(*file.outputs));
    }

    std::string to_text() const {
        auto text = to_canonical_text(skeleton_);
        auto eol = text.find('\n', text.find('\n') + 1);
        std::string outputs = "outputs";
        for (std::size_t q = 0; q < outputs_.size(); ++q) outputs += " " + std::to_string(q) + ":" + std::to_string(outputs_[q]);
        return text.substr(0, eol + 1) + outputs + "\n" + text.substr(eol + 1);
    }

private:
    std::string name_;
    NumerationSystem system_;
    CompleteDfa skeleton_;
    std::vector<Symbol> outputs_;
};

enum class ValueMode { eq, neq };

/// Two-track automaton accepting padded (u, v) with X[u] = Y[v] (eq) or
/// X[u] != Y[v] (neq). Validity is not imposed.
inline CompleteDfa value_relation(const SequenceDfao& x, const SequenceDfao& y, ValueMode mode) {
    if (!(x.system() == y.system())) throw alphabet_mismatch("value_relation needs sequences over one numeration system");
    const auto& a = x.skeleton();
    const auto& b = y.skeleton();
    const auto r = x.system().radix();
    TupleAlphabet alpha({r, r});
    const std::uint64_t nb = b.state_count();
    std::vector<State> delta(a.state_count() * nb * alpha.size());
    std::vector<std::uint8_t> acc(a.state_count() * nb);
    for (State p = 0; p < a.state_count(); ++p)
        for (State q = 0; q < nb; ++q) {
            auto s = p * nb + q;
            bool same = x.output(p) == y.output(q);
            acc[s] = mode == ValueMode::eq ? same : !same;
            for (Letter l = 0; l < alpha.size(); ++l) {
                auto d = alpha.decode(l);
                delta[s * alpha.size() + l] = static_cast<State>(a.next(p, d[0]) * nb + b.next(q, d[1]));
            }
        }
    return minimize(CompleteDfa(alpha, a.state_count() * nb, static_cast<State>(a.initial() * nb + b.initial()),
                                std::move(delta), std::move(acc)));
}

namespace sequences {

/// t(n) = parity of the number of 1 bits of n.
inline SequenceDfao thue_morse() {
    return SequenceDfao("thue-morse", NumerationSystem::base(2), CompleteDfa(TupleAlphabet({2}), 2, 0, {0, 1, 1, 0}, {1, 1}),
                        {0, 1});
}

/// b(n) = 1 iff the binary representation of n has no maximal block of 0s of
/// odd length (b(0) = 1).
inline SequenceDfao baum_sweet() {
    // 0: only leading zeros read, 1: even zero run, 2: odd zero run, 3: failed
    CompleteDfa skel(TupleAlphabet({2}), 4, 0, {0, 1, 2, 1, 1, 3, 3, 3}, {1, 1, 1, 1});
    return SequenceDfao("baum-sweet", NumerationSystem::base(2), std::move(skel), {1, 1, 0, 0});
}

/// Fibonacci word 0100101001001...: the last Zeckendorf digit of n.
inline SequenceDfao fibonacci_word() {
    // 0: last digit 0 (or empty), 1: last digit 1, 2: invalid
    CompleteDfa skel(TupleAlphabet({2}), 3, 0, {0, 1, 0, 2, 2, 2}, {1, 1, 1});
    return SequenceDfao("fibonacci-word", NumerationSystem::zeckendorf(), std::move(skel), {0, 1, 0});
}

/// Tribonacci word 0102010010201...: number of trailing 1 digits of the
/// Tribonacci representation of n.
inline SequenceDfao tribonacci_word() {
    // q = trailing ones (0..2), 3: invalid
    CompleteDfa skel(TupleAlphabet({2}), 4, 0, {0, 1, 0, 2, 0, 3, 3, 3}, {1, 1, 1, 1});
    return SequenceDfao("tribonacci-word", NumerationSystem::tribonacci(), std::move(skel), {0, 1, 2, 0});
}

inline std::vector<std::string> builtin_names() {
    return {"thue-morse", "baum-sweet", "fibonacci-word", "tribonacci-word"};
}

inline SequenceDfao builtin(const std::string& name) {
    if (name == "thue-morse") return thue_morse();
    if (name == "baum-sweet") return baum_sweet();
    if (name == "fibonacci-word") return fibonacci_word();
    if (name == "tribonacci-word") return tribonacci_word();
    throw error("unknown sequence '" + name + "'");
}

}  // namespace sequences

}  // namespace selfverify

#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "selfverify/dfa.hpp"
#include "selfverify/error.hpp"

namespace selfverify {

// Canonical text format:
//   dfa <arity> <radix_0> ... <radix_{arity-1}> <num_states> <initial_state>
//   accepting <state ids>
//   <state> <digit_0> ... <digit_{arity-1}> <target>     one line per (state, letter)
// Optional extension lines (any position after the header):
//   outputs <state>:<symbol> ...      output map of a DFAO
//   system <track> <name>             numeration system of a track
//   places <p_0> <p_1> ...            place values of a custom numeration system

inline std::string to_canonical_text(const CompleteDfa& a) {
    std::ostringstream out;
    out << "dfa " << a.arity();
    for (auto r : a.alphabet().radices()) out << ' ' << r;
    out << ' ' << a.state_count() << ' ' << a.initial() << '\n';
    out << "accepting";
    for (State q = 0; q < a.state_count(); ++q)
        if (a.is_accepting(q)) out << ' ' << q;
    out << '\n';
    const auto& alpha = a.alphabet();
    for (State q = 0; q < a.state_count(); ++q)
        for (Letter l = 0; l < alpha.size(); ++l) {
            out << q;
            for (auto d : alpha.decode(l)) out << ' ' << d;
            out << ' ' << a.next(q, l) << '\n';
        }
    return out.str();
}

/// Everything a canonical file can carry.
struct AutomatonFile {
    CompleteDfa dfa;
    std::optional<std::vector<std::uint32_t>> outputs;
    std::map<std::size_t, std::string> systems;
    std::optional<std::vector<std::uint64_t>> places;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

inline std::uint64_t parse_uint(const std::string& tok, std::size_t line_no) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw parse_error("line " + std::to_string(line_no) + ": expected a natural number, got '" + tok + "'");
    try {
        return std::stoull(tok);
    } catch (const std::exception&) {
        throw parse_error("line " + std::to_string(line_no) + ": number out of range '" + tok + "'");
    }
}

}  // namespace detail

inline AutomatonFile parse_automaton(const std::string& text) {
    using detail::parse_uint;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (header.empty() && std::getline(in, line)) {
        ++line_no;
        header = detail::split_ws(line);
    }
    if (header.empty() || header[0] != "dfa") throw parse_error("missing 'dfa' header line");
    if (header.size() < 2) throw parse_error("header lacks arity");
    auto arity = parse_uint(header[1], line_no);
    if (arity == 0 || header.size() != arity + 4) throw parse_error("header has wrong field count");
    std::vector<std::uint32_t> radices;
    for (std::size_t t = 0; t < arity; ++t) radices.push_back(static_cast<std::uint32_t>(parse_uint(header[2 + t], line_no)));
    auto states = parse_uint(header[2 + arity], line_no);
    auto initial = parse_uint(header[3 + arity], line_no);
    TupleAlphabet alpha = [&] {
        try {
            return TupleAlphabet(radices);
        } catch (const error& e) {
            throw parse_error(e.what());
        }
    }();
    if (states == 0 || states > (1ull << 28) || initial >= states) throw parse_error("bad state count or initial state");

    AutomatonFile file;
    std::vector<State> delta(states * alpha.size(), no_state);
    std::vector<std::uint8_t> acc(states, 0);
    bool saw_accepting = false;
    while (std::getline(in, line)) {
        ++line_no;
        auto tok = detail::split_ws(line);
        if (tok.empty()) continue;
        if (tok[0] == "accepting") {
            if (saw_accepting) throw parse_error("duplicate 'accepting' line");
            saw_accepting = true;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                auto q = parse_uint(tok[i], line_no);
                if (q >= states) throw parse_error("accepting state out of range");
                acc[q] = 1;
            }
        } else if (tok[0] == "outputs") {
            std::vector<std::uint32_t> out(states, 0);
            std::vector<bool> seen(states, false);
            for (std::size_t i = 1; i < tok.size(); ++i) {
                auto colon = tok[i].find(':');
                if (colon == std::string::npos) throw parse_error("output entry must be state:symbol");
                auto q = parse_uint(tok[i].substr(0, colon), line_no);
                auto v = parse_uint(tok[i].substr(colon + 1), line_no);
                if (q >= states) throw parse_error("output state out of range");
                out[q] = static_cast<std::uint32_t>(v);
                seen[q] = true;
            }
            for (bool s : seen)
                if (!s) throw parse_error("outputs line must cover every state");
            file.outputs = std::move(out);
        } else if (tok[0] == "system") {
            if (tok.size() != 3) throw parse_error("system line must be 'system <track> <name>'");
            auto t = parse_uint(tok[1], line_no);
            if (t >= arity) throw parse_error("system line names a nonexistent track");
            file.systems[t] = tok[2];
        } else if (tok[0] == "places") {
            std::vector<std::uint64_t> places;
            for (std::size_t i = 1; i < tok.size(); ++i) places.push_back(parse_uint(tok[i], line_no));
            file.places = std::move(places);
        } else {
            if (tok.size() != arity + 2)
                throw parse_error("line " + std::to_string(line_no) + ": transition line has wrong field count");
            auto q = parse_uint(tok[0], line_no);
            Digits d;
            for (std::size_t t = 0; t < arity; ++t) {
                auto digit = parse_uint(tok[1 + t], line_no);
                if (digit >= radices[t]) throw parse_error("line " + std::to_string(line_no) + ": digit out of range");
                d.push_back(static_cast<std::uint32_t>(digit));
            }
            auto target = parse_uint(tok[1 + arity], line_no);
            if (q >= states || target >= states) throw parse_error("line " + std::to_string(line_no) + ": state out of range");
            auto& slot = delta[q * alpha.size() + alpha.encode(d)];
            if (slot != no_state) throw parse_error("line " + std::to_string(line_no) + ": duplicate transition");
            slot = static_cast<State>(target);
        }
    }
    if (!saw_accepting) throw parse_error("missing 'accepting' line");
    for (auto t : delta)
        if (t == no_state) throw parse_error("transition function is not total");
    file.dfa = CompleteDfa(alpha, states, static_cast<State>(initial), std::move(delta), std::move(acc));
    return file;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write " + path);
    out << text;
}

inline std::string to_dot(const CompleteDfa& a, const std::string& name = "A") {
    std::ostringstream out;
    out << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
    out << "  init [shape=point];\n  init -> " << a.initial() << ";\n";
    for (State q = 0; q < a.state_count(); ++q)
        if (a.is_accepting(q)) out << "  " << q << " [shape=doublecircle];\n";
    const auto& alpha = a.alphabet();
    // one edge per (source, target) labelled with every letter taking it
    for (State q = 0; q < a.state_count(); ++q) {
        std::map<State, std::string> labels;
        for (Letter l = 0; l < alpha.size(); ++l) {
            auto& s = labels[a.next(q, l)];
            if (!s.empty()) s += "\\n";
            auto d = alpha.decode(l);
            if (d.size() == 1) {
                s += std::to_string(d[0]);
            } else {
                s += "[";
                for (std::size_t t = 0; t < d.size(); ++t) s += (t ? "," : "") + std::to_string(d[t]);
                s += "]";
            }
        }
        for (auto& [r, s] : labels) out << "  " << q << " -> " << r << " [label=\"" << s << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

/// Walnut-style listing of the trimmed automaton. `systems` holds one Walnut
/// system name per track (e.g. "msd_2", "msd_fib").
inline std::string to_walnut_text(const CompleteDfa& a, const std::vector<std::string>& systems) {
    auto t = trim(a);
    std::ostringstream out;
    for (std::size_t i = 0; i < systems.size(); ++i) out << (i ? " " : "") << systems[i];
    out << "\n";
    if (t.initial == no_state) return out.str();
    // Walnut expects the initial state to be state 0.
    std::vector<State> order{t.initial}, id(t.states, no_state);
    id[t.initial] = 0;
    const auto k = t.alphabet.size();
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Letter l = 0; l < k; ++l) {
            auto r = t.delta[order[i] * k + l];
            if (r != no_state && id[r] == no_state) {
                id[r] = static_cast<State>(order.size());
                order.push_back(r);
            }
        }
    for (std::size_t i = 0; i < order.size(); ++i) {
        out << "\n" << i << " " << int(t.accepting[order[i]]) << "\n";
        for (Letter l = 0; l < k; ++l) {
            auto r = t.delta[order[i] * k + l];
            if (r == no_state) continue;
            auto d = t.alphabet.decode(l);
            for (std::size_t j = 0; j < d.size(); ++j) out << (j ? " " : "") << d[j];
            out << " -> " << id[r] << "\n";
        }
    }
    return out.str();
}

}  // namespace selfverify

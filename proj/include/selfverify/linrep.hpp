#pragma once

#include <cstdint>
#include <vector>

#include "selfverify/error.hpp"
#include "selfverify/numeration.hpp"
#include "selfverify/ops.hpp"

namespace selfverify {

/// Square integer matrix stored by rows as (column, value) pairs.
class SparseMatrix {
public:
    explicit SparseMatrix(std::size_t n = 0) : rows_(n) {}

    std::size_t size() const noexcept { return rows_.size(); }

    void add(std::size_t row, std::size_t col, std::int64_t value) {
        if (value == 0) return;
        for (auto& [c, v] : rows_[row])
            if (c == col) {
                v += value;
                return;
            }
        rows_[row].emplace_back(col, value);
    }

    /// Row vector times this matrix.
    std::vector<std::int64_t> left_multiply(const std::vector<std::int64_t>& x) const {
        std::vector<std::int64_t> y(rows_.size(), 0);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (x[r] == 0) continue;
            for (const auto& [c, v] : rows_[r]) y[c] += x[r] * v;
        }
        return y;
    }

    const std::vector<std::pair<std::size_t, std::int64_t>>& row(std::size_t r) const { return rows_[r]; }

    SparseMatrix& operator+=(const SparseMatrix& o) {
        for (std::size_t r = 0; r < o.size(); ++r)
            for (const auto& [c, v] : o.rows_[r]) add(r, c, v);
        return *this;
    }

private:
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> rows_;
};

/// (v, gamma, w) with f(n) = v . gamma(y_1) ... gamma(y_m) . w for every
/// representation y of n, leading zeros included.
struct LinearRepresentation {
    std::vector<std::int64_t> v;
    std::vector<SparseMatrix> gamma;  ///< one matrix per digit
    std::vector<std::int64_t> w;

    std::size_t rank() const noexcept { return v.size(); }

    std::int64_t eval(const Digits& rep) const {
        auto x = v;
        for (auto d : rep) x = gamma.at(d).left_multiply(x);
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * w[i];
        return sum;
    }

    /// f - g, as a block-diagonal representation.
    static LinearRepresentation difference(const LinearRepresentation& f, const LinearRepresentation& g) {
        if (f.gamma.size() != g.gamma.size()) throw error("linear representations over different digit sets");
        const auto r1 = f.rank(), r2 = g.rank();
        LinearRepresentation out;
        out.v = f.v;
        out.v.insert(out.v.end(), g.v.begin(), g.v.end());
        out.w = f.w;
        for (auto x : g.w) out.w.push_back(-x);
        for (std::size_t d = 0; d < f.gamma.size(); ++d) {
            SparseMatrix m(r1 + r2);
            for (std::size_t r = 0; r < r1; ++r)
                for (const auto& [c, val] : f.gamma[d].row(r)) m.add(r, c, val);
            for (std::size_t r = 0; r < r2; ++r)
                for (const auto& [c, val] : g.gamma[d].row(r)) m.add(r1 + r, r1 + c, val);
            out.gamma.push_back(std::move(m));
        }
        return out;
    }

    /// Representation of c(n) = sum_{i<n} f(i). Over words of one length,
    /// the words below y are y_1..y_{p-1} a s with a < y_p and s arbitrary,
    /// so with L(d) = sum_{a<d} gamma(a) and M = sum_a gamma(a):
    ///   gamma'(d) = [[gamma(d), L(d)], [0, M]],  v' = [v, 0],  w' = [0, w].
    /// Relies on the numeration system ordering valid words of equal length
    /// like their values.
    LinearRepresentation prefix_sum() const {
        const auto r = rank();
        LinearRepresentation out;
        out.v = v;
        out.v.resize(2 * r, 0);
        out.w.assign(r, 0);
        out.w.insert(out.w.end(), w.begin(), w.end());
        SparseMatrix all(r);
        for (const auto& g : gamma) all += g;
        SparseMatrix below(r);
        for (std::size_t d = 0; d < gamma.size(); ++d) {
            SparseMatrix m(2 * r);
            for (std::size_t i = 0; i < r; ++i) {
                for (const auto& [c, val] : gamma[d].row(i)) m.add(i, c, val);
                for (const auto& [c, val] : below.row(i)) m.add(i, r + c, val);
                for (const auto& [c, val] : all.row(i)) m.add(r + i, r + c, val);
            }
            out.gamma.push_back(std::move(m));
            below += gamma[d];
        }
        return out;
    }
};

/// Linear representation of a synchronized function b, given the automaton
/// B accepting exactly the valid pairs (n, b(n)) with n on track 0 and the
/// value on track 1 in `value_system`.
///
/// Per B-state s the vector carries the number of paths reaching s and the
/// partial values U_0..U_{d-1} of the value track, where U_m reads every
/// digit shifted up by m places and d is the order of the place-value
/// recurrence (d = 1 for base k: U_0' = k U_0 + e). The initial vector
/// already consumes |B| leading zeros of n so that values needing more
/// digits than n (b(0) > 0, say) are counted.
inline LinearRepresentation build_linear_rep(const CompleteDfa& b, const NumerationSystem& value_system) {
    if (b.arity() != 2) throw error("synchronized automaton must have two tracks");
    if (b.alphabet().radix(1) != value_system.radix()) throw alphabet_mismatch("value track radix mismatch");
    const auto& rec = value_system.recurrence();
    if (rec.empty()) throw unsupported_system(value_system.name() + ": value track needs a place-value recurrence");
    const auto d = rec.size();
    const auto& places = value_system.places();
    const auto block = 1 + d;
    const auto n = b.state_count();
    const auto r = n * block;
    const auto radix_n = b.alphabet().radix(0);

    LinearRepresentation lr;
    lr.gamma.assign(radix_n, SparseMatrix(r));
    for (State s = 0; s < n; ++s)
        for (Letter l = 0; l < b.alphabet().size(); ++l) {
            auto digits = b.alphabet().decode(l);
            auto& g = lr.gamma[digits[0]];
            const auto e = static_cast<std::int64_t>(digits[1]);
            const auto t = b.next(s, l);
            const auto src = s * block, dst = t * block;
            g.add(src, dst, 1);
            for (std::size_t m = 0; m < d; ++m) {
                if (m + 1 < d) {
                    g.add(src + 1 + m + 1, dst + 1 + m, 1);
                } else {
                    for (std::size_t j = 0; j < d; ++j) g.add(src + 1 + j, dst + 1 + m, rec[j]);
                }
                g.add(src, dst + 1 + m, e * static_cast<std::int64_t>(places[m]));
            }
        }
    lr.w.assign(r, 0);
    for (State s = 0; s < n; ++s)
        if (b.is_accepting(s)) lr.w[s * block + 1] = 1;
    lr.v.assign(r, 0);
    lr.v[b.initial() * block] = 1;
    for (std::size_t i = 0; i < n; ++i) lr.v = lr.gamma[0].left_multiply(lr.v);
    return lr;
}

/// Throws not_synchronized unless every n <= up_to has exactly one accepted
/// value at the padded length used by build_linear_rep.
inline void require_single_valued(const CompleteDfa& b, const NumerationSystem& index_system, Natural up_to) {
    const auto radix_n = b.alphabet().radix(0);
    const auto n = b.state_count();
    std::vector<SparseMatrix> count(radix_n, SparseMatrix(n));
    for (State s = 0; s < n; ++s)
        for (Letter l = 0; l < b.alphabet().size(); ++l) count[b.alphabet().digit(l, 0)].add(s, b.next(s, l), 1);
    std::vector<std::int64_t> v0(n, 0);
    v0[b.initial()] = 1;
    for (std::size_t i = 0; i < n; ++i) v0 = count[0].left_multiply(v0);
    for (Natural m = 0; m <= up_to; ++m) {
        auto x = v0;
        for (auto digit : index_system.encode(m)) x = count[digit].left_multiply(x);
        std::int64_t paths = 0;
        for (State s = 0; s < n; ++s)
            if (b.is_accepting(s)) paths += x[s];
        if (paths != 1)
            throw not_synchronized("automaton has " + std::to_string(paths) + " values at n = " + std::to_string(m));
    }
}

}  // namespace selfverify

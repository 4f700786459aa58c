#pragma once

// Test-side reference computations. These deliberately avoid the library's
// linear-algebra and Frobenius-table paths so they can act as oracles.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "rankdec/code.hpp"
#include "rankdec/decoder.hpp"
#include "rankdec/rng.hpp"

namespace testsupport {

using rankdec::Elem;
using rankdec::GaloisField;

/// a^{q^j} by plain exponentiation.
inline Elem frob_pow(const GaloisField& F, Elem a, std::uint64_t q, unsigned j) {
    for (unsigned i = 0; i < j; ++i) a = F.pow(a, q);
    return a;
}

inline Elem horner(const GaloisField& F, const std::vector<Elem>& c, Elem x) {
    Elem acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
    return acc;
}

/// Entry (i, j) = sum_v f_v(gamma^j) alpha_i^{q^v}, with alpha_i = beta^i and
/// beta the integer q inside F_{q^n}.
inline rankdec::FoldedMatrix reference_encode(const rankdec::CodeParams& p, const rankdec::MessagePoly& f) {
    const rankdec::Tower& T = *p.tower;
    const GaloisField& F = T.fqn();
    const Elem beta = T.n() > 1 ? static_cast<Elem>(T.q()) : 1;
    rankdec::FoldedMatrix M(p.n(), p.folds());
    for (unsigned i = 0; i < p.n(); ++i) {
        const Elem alpha = F.pow(beta, i);
        for (unsigned j = 0; j < p.folds(); ++j) {
            const Elem x0 = T.fr().pow(T.gamma(), j);
            Elem acc = 0;
            for (unsigned v = 0; v < p.m; ++v) {
                std::vector<Elem> c(f.blocks[v].coeffs);
                acc = F.add(acc, F.mul(horner(F, c, x0), frob_pow(F, alpha, T.q(), v)));
            }
            M.at(i, j) = acc;
        }
    }
    return M;
}

/// Rank by straightforward Gaussian elimination on a copy.
inline std::size_t reference_rank(const GaloisField& F, std::vector<std::vector<Elem>> a) {
    std::size_t rank = 0;
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[rank]);
        const Elem inv = F.inv(a[rank][c]);
        for (auto& x : a[rank]) x = F.mul(x, inv);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == rank || a[i][c] == 0) continue;
            const Elem f = a[i][c];
            for (std::size_t t = 0; t < cols; ++t) a[i][t] = F.sub(a[i][t], F.mul(f, a[rank][t]));
        }
        ++rank;
    }
    return rank;
}

/// Rank over F_q of a folded matrix, expanding entries by base-q digits.
inline std::size_t reference_rank_fq(const rankdec::Tower& T, const rankdec::FoldedMatrix& M) {
    std::vector<std::vector<Elem>> rows(M.rows());
    for (unsigned i = 0; i < M.rows(); ++i)
        for (unsigned j = 0; j < M.folds(); ++j) {
            Elem x = M.at(i, j);
            for (unsigned t = 0; t < T.n(); ++t) {
                rows[i].push_back(x % T.q());
                x /= T.q();
            }
        }
    return reference_rank(T.fq(), rows);
}

/// Every element of a span over F_r given by generators (small spans only).
inline std::set<std::vector<Elem>> enumerate_span(const GaloisField& F, const std::vector<std::vector<Elem>>& gens,
                                                  std::size_t dim) {
    std::set<std::vector<Elem>> out{std::vector<Elem>(dim, 0)};
    for (const auto& g : gens) {
        std::set<std::vector<Elem>> next;
        for (const auto& v : out)
            for (Elem c = 0; c < F.order(); ++c) {
                auto w = v;
                for (std::size_t i = 0; i < dim; ++i) w[i] = F.add(w[i], F.mul(c, g[i]));
                next.insert(std::move(w));
            }
        out.swap(next);
    }
    return out;
}

/// Q(x0, y, z_1..z_s) from the coefficient lists by Horner and plain powers.
inline Elem reference_eval_q(const rankdec::Tower& T, const rankdec::InterpolationPoly& Q, Elem x0, Elem y,
                             const std::vector<Elem>& z) {
    const GaloisField& F = T.fqn();
    Elem acc = 0;
    for (unsigned u = 0; u < Q.a0.size(); ++u)
        acc = F.add(acc, F.mul(horner(F, Q.a0[u].coeffs, x0), frob_pow(F, y, T.q(), u)));
    for (unsigned w = 0; w < Q.aw.size(); ++w)
        for (unsigned i = 0; i < Q.aw[w].size(); ++i)
            acc = F.add(acc, F.mul(horner(F, Q.aw[w][i].coeffs, x0), frob_pow(F, z[w], T.q(), i)));
    return acc;
}

}  // namespace testsupport

#include "rankdec/oracle.hpp"

#include <algorithm>
#include <limits>

#include "rankdec/decoder.hpp"
#include "rankdec/error.hpp"

namespace rankdec {

namespace {

/// Walks every message in mixed-radix order of its F_r coordinates and hands
/// the message coordinates and codeword to `visit`. The codeword is updated
/// incrementally: F_r sits inside F_{q^n} with the same encoding, so moving
/// coordinate j from a to b adds (b - a) times the j-th basis codeword.
template <class Visit>
void for_each_codeword(const CodeParams& p, const OracleBudget& budget, Visit&& visit) {
    const std::uint64_t total = code_size(p);
    if (total > budget.max_codewords)
        throw Error(ErrorCode::BudgetExceeded, "code has " + std::to_string(total) + " codewords; budget is " +
                                                   std::to_string(budget.max_codewords));
    const Tower& T = *p.tower;
    const GaloisField& Fqn = T.fqn();
    const std::uint64_t r = p.r();
    const unsigned dim = p.message_dim();
    const unsigned n = p.n(), folds = p.folds();

    std::vector<Codeword> basis;
    std::vector<Elem> unit(dim, 0);
    for (unsigned j = 0; j < dim; ++j) {
        unit[j] = 1;
        basis.push_back(encode(p, from_coordinates(p, unit)));
        unit[j] = 0;
    }

    std::vector<Elem> coords(dim, 0);
    Codeword cw(n, folds);
    for (;;) {
        visit(static_cast<const std::vector<Elem>&>(coords), static_cast<const Codeword&>(cw));
        unsigned j = 0;
        for (; j < dim; ++j) {
            const Elem before = coords[j];
            const Elem after = before + 1 == r ? 0 : before + 1;
            coords[j] = after;
            const Elem delta = Fqn.sub(after, before);
            for (unsigned i = 0; i < n; ++i)
                for (unsigned c = 0; c < folds; ++c)
                    if (basis[j].at(i, c) != 0) cw.at(i, c) = Fqn.add(cw.at(i, c), Fqn.mul(delta, basis[j].at(i, c)));
            if (after != 0) break;
        }
        if (j == dim) break;
    }
}

}  // namespace

std::uint64_t code_size(const CodeParams& p) {
    std::uint64_t out = 1;
    for (unsigned i = 0; i < p.message_dim(); ++i) {
        if (out > std::numeric_limits<std::uint64_t>::max() / p.r()) return std::numeric_limits<std::uint64_t>::max();
        out *= p.r();
    }
    return out;
}

std::vector<MessagePoly> brute_force_list(const ReceivedWord& y, unsigned e, const CodeParams& p,
                                          const OracleBudget& budget) {
    if (y.rows() != p.n() || y.folds() != p.folds()) throw Error(ErrorCode::ShapeMismatch, "received word shape");
    std::vector<MessagePoly> out;
    for_each_codeword(p, budget, [&](const std::vector<Elem>& coords, const Codeword& cw) {
        if (rank_distance(*p.tower, cw, y) <= e) out.push_back(from_coordinates(p, coords));
    });
    std::sort(out.begin(), out.end());
    return out;
}

unsigned brute_force_min_distance(const CodeParams& p, const OracleBudget& budget) {
    unsigned best = std::numeric_limits<unsigned>::max();
    bool first = true;
    for_each_codeword(p, budget, [&](const std::vector<Elem>&, const Codeword& cw) {
        if (first) {  // the zero message comes first
            first = false;
            return;
        }
        best = std::min(best, rank_fq(*p.tower, cw));
    });
    return best;
}

}  // namespace rankdec

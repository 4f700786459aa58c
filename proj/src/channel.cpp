#include "rankdec/channel.hpp"

#include "rankdec/error.hpp"
#include "rankdec/rng.hpp"

namespace rankdec {

namespace {

Matrix full_rank_sample(const GaloisField& F, std::size_t rows, std::size_t cols, std::size_t want, Rng& rng) {
    for (;;) {
        Matrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = F.random(rng);
        if (linalg::rank(F, m) == want) return m;
    }
}

}  // namespace

FoldedMatrix sample_rank_error(const Tower& T, unsigned folds, const RankErrorSpec& spec) {
    const unsigned n = T.n();
    const unsigned t = folds * n;
    if (spec.e > n) throw Error(ErrorCode::RankTooLarge, "e = " + std::to_string(spec.e) + " exceeds n");
    if (spec.e == 0) return FoldedMatrix(n, folds);
    Rng rng(spec.seed);
    const GaloisField& Fq = T.fq();
    const Matrix u = full_rank_sample(Fq, n, spec.e, spec.e, rng);
    const Matrix v = full_rank_sample(Fq, spec.e, t, spec.e, rng);
    return FoldedMatrix::from_fq(T, linalg::multiply(Fq, u, v));
}

ReceivedWord add_rank_errors(const Tower& T, const Codeword& m, const RankErrorSpec& spec) {
    return sum(T, m, sample_rank_error(T, m.folds(), spec));
}

}  // namespace rankdec

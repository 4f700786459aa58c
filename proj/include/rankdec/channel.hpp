#pragma once

#include <cstdint>

#include "rankdec/code.hpp"

namespace rankdec {

struct RankErrorSpec {
    unsigned e = 0;
    std::uint64_t seed = 0;
};

/// E = U V with U (n x e) of full column rank and V (e x t) of full row
/// rank over F_q, both drawn by rejection from the seeded generator, so
/// rank(E) = e exactly.
FoldedMatrix sample_rank_error(const Tower& T, unsigned folds, const RankErrorSpec& spec);

/// M + E for E from sample_rank_error. Throws RankTooLarge when e > n.
ReceivedWord add_rank_errors(const Tower& T, const Codeword& m, const RankErrorSpec& spec);

}  // namespace rankdec

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rankdec/code.hpp"

namespace rankdec {

struct OracleBudget {
    std::uint64_t max_codewords = 1000000;
};

/// Every message whose codeword lies within rank distance e of y, sorted by
/// flattened coefficients. Throws BudgetExceeded when the code is larger
/// than the budget.
std::vector<MessagePoly> brute_force_list(const ReceivedWord& y, unsigned e, const CodeParams& p,
                                          const OracleBudget& budget = {});

/// Minimum rank of a nonzero codeword, by exhaustive enumeration.
unsigned brute_force_min_distance(const CodeParams& p, const OracleBudget& budget = {});

/// r^{message_dim}, saturating at UINT64_MAX.
std::uint64_t code_size(const CodeParams& p);

}  // namespace rankdec

#pragma once

#include <cstdint>

namespace wodot {

// Budgets shared by the enumeration and DP kernels.
struct Limits {
    // Largest |G| accepted by exhaustive campaigns and subset searches.
    std::uint64_t exhaustive_order_cap = 64;
    // log2 of the largest DP state space (weight-usage states, residue masks).
    int mask_bits = 24;
    // Largest number of sub-multiplicity vectors a subsequence scan may visit.
    std::uint64_t enum_budget = std::uint64_t{1} << 20;
    // Largest matched length r for the permutation oracle.
    int perm_oracle_r = 8;
};

inline constexpr Limits default_limits{};

} // namespace wodot

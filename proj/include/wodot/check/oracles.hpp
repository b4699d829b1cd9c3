#pragma once

// Brute-force reference computations for tests and the acceptance suite.
// Each works from first definitions (index subsets, explicit permutations,
// raw coordinate arithmetic) and shares no code path with the kernels it is
// used to check.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "wodot/error.hpp"
#include "wodot/group.hpp"
#include "wodot/sequence.hpp"

namespace wodot::check {

using Coords = std::vector<std::int64_t>;

inline Coords coord_add(const Coords& a, const Coords& b, const std::vector<std::int64_t>& mod) {
    Coords c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % mod[i];
    return c;
}

inline bool coord_zero(const Coords& a) {
    return std::all_of(a.begin(), a.end(), [](auto v) { return v == 0; });
}

// Bit alpha of the result is set iff some permutation x of [0, n-1] has
// sum a_i x_i = alpha (mod n).
inline std::uint64_t congruence_sums(const std::vector<std::int64_t>& a, std::int64_t n) {
    std::vector<std::int64_t> x(static_cast<std::size_t>(n));
    std::iota(x.begin(), x.end(), 0);
    std::vector<std::int64_t> red(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) red[i] = ((a[i] % n) + n) % n;
    std::uint64_t seen = 0;
    do {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < red.size(); ++i) s += red[i] * x[i];
        seen |= std::uint64_t{1} << (s % n);
    } while (std::next_permutation(x.begin(), x.end()));
    return seen;
}

// Sigma_n(S) over index subsets of the term list.
inline std::vector<Coords> sigma_n_by_subsets(const Sequence& s, std::uint64_t n) {
    std::vector<Coords> terms;
    for (const auto& e : s.terms()) terms.push_back(e.coords());
    const auto& mod = s.group().moduli();
    if (terms.size() > 24) throw BudgetExceeded("index-subset oracle limited to 24 terms");
    std::vector<Coords> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << terms.size()); ++mask) {
        if (static_cast<std::uint64_t>(std::popcount(mask)) != n) continue;
        Coords acc(mod.size(), 0);
        for (std::size_t i = 0; i < terms.size(); ++i)
            if (mask >> i & 1u) acc = coord_add(acc, terms[i], mod);
        out.push_back(acc);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Minimal zero-sum test over index subsets of the term list.
inline bool minimal_zero_sum_by_subsets(const Sequence& s) {
    std::vector<Coords> terms;
    for (const auto& e : s.terms()) terms.push_back(e.coords());
    const auto& mod = s.group().moduli();
    const auto len = terms.size();
    if (len == 0) return false;
    if (len > 24) throw BudgetExceeded("index-subset oracle limited to 24 terms");
    const std::uint64_t full = (std::uint64_t{1} << len) - 1;
    for (std::uint64_t mask = 1; mask <= full; ++mask) {
        Coords acc(mod.size(), 0);
        for (std::size_t i = 0; i < len; ++i)
            if (mask >> i & 1u) acc = coord_add(acc, terms[i], mod);
        const bool zero = coord_zero(acc);
        if (mask == full) return zero;
        if (zero) return false;
    }
    return false;
}

// Longest minimal zero-sum sequence of length <= max_len, by exhaustion over
// nondecreasing index tuples.
inline std::uint64_t longest_minimal_zero_sum(const Group& g, std::uint64_t max_len) {
    std::uint64_t best = 0;
    const auto n = g.order();
    for (std::uint64_t len = 1; len <= max_len; ++len) {
        std::vector<std::uint64_t> pick(len, 0);
        bool found = false;
        while (!found) {
            std::vector<Element> terms;
            for (auto i : pick) terms.push_back(g.at(i));
            if (minimal_zero_sum_by_subsets(Sequence::from_terms(g, terms))) found = true;
            std::size_t i = len;
            while (i > 0 && pick[i - 1] == n - 1) --i;
            if (i == 0) break;
            const auto v = pick[i - 1] + 1;
            for (std::size_t j = i - 1; j < len; ++j) pick[j] = v;
        }
        if (found) best = len;
    }
    return best;
}

} // namespace wodot::check

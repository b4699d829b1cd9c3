#pragma once

// Distinct-residue solutions of a_1 x_1 + ... + a_n x_n = alpha (mod n):
// (x_1, ..., x_n) must be a permutation of [0, n-1]. Solvability is decided
// by the closed-form characterization (gcd coset, or the special
// three-index family); witnesses come from a subset DP over residues.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wodot/error.hpp"
#include "wodot/group.hpp"
#include "wodot/limits.hpp"

namespace wodot {

struct CongruenceInstance {
    std::int64_t modulus = 0;
    std::vector<std::int64_t> coefficients;  // as given, zero-padded to length n
    std::vector<std::int64_t> reduced;       // coefficients mod n
    std::size_t original_length = 0;         // r before padding
    std::int64_t alpha = 0;

    CongruenceInstance with_alpha(std::int64_t a) const {
        auto c = *this;
        c.alpha = a;
        return c;
    }
};

// Pads a_1..a_r with n - r zero coefficients.
inline CongruenceInstance normalize(std::span<const std::int64_t> a, std::int64_t n, std::int64_t alpha = 0) {
    if (n < 2) throw PreconditionError("modulus must be >= 2");
    const auto r = a.size();
    if (r < 2) throw PreconditionError("need at least 2 coefficients");
    if (r > static_cast<std::size_t>(n))
        throw PreconditionError(std::to_string(r) + " distinct residues cannot exist modulo " + std::to_string(n));
    CongruenceInstance inst;
    inst.modulus = n;
    inst.coefficients.assign(a.begin(), a.end());
    inst.coefficients.resize(static_cast<std::size_t>(n), 0);
    for (auto c : inst.coefficients) inst.reduced.push_back(detail::mod(c, n));
    inst.original_length = r;
    inst.alpha = alpha;
    return inst;
}

inline CongruenceInstance normalize(std::initializer_list<std::int64_t> a, std::int64_t n, std::int64_t alpha = 0) {
    return normalize(std::span<const std::int64_t>(a.begin(), a.size()), n, alpha);
}

struct SpecialTriple {
    std::size_t j = 0, k = 0, l = 0;  // 0-based coefficient positions
    friend bool operator==(const SpecialTriple&, const SpecialTriple&) = default;
};

enum class Branch { GeneralGcd, SpecialFamily, TwoTable };

inline const char* to_string(Branch b) {
    switch (b) {
    case Branch::GeneralGcd: return "general-gcd";
    case Branch::SpecialFamily: return "special-family";
    case Branch::TwoTable: return "n2-table";
    }
    return "?";
}

struct CongruenceVerdict {
    bool solvable = false;
    Branch branch = Branch::GeneralGcd;
    std::optional<SpecialTriple> triple;
    std::int64_t gcd = 0;           // gcd(a_2-a_1, ..., a_n-a_1, n)
    std::int64_t excluded_or_offset = 0;  // n(n-1)/2 * a_1 (general) or * a_l (special), mod n
    std::optional<std::vector<std::int64_t>> witness;

    std::vector<std::int64_t> projected_witness(std::size_t r) const {
        if (!witness) return {};
        return {witness->begin(), witness->begin() + static_cast<std::ptrdiff_t>(r)};
    }
};

// n(n-1)/2 * a mod n, computed from the exact triangular number.
inline std::int64_t triangular_term(std::int64_t n, std::int64_t a) {
    const auto tri = static_cast<__int128>(n) * (n - 1) / 2;
    return static_cast<std::int64_t>(tri % n * detail::mod(a, n) % n);
}

// gcd(a_1 - a_i, ..., a_n - a_i, n); the same for every i.
inline std::int64_t difference_gcd(const CongruenceInstance& inst, std::size_t base = 0) {
    std::int64_t d = inst.modulus;
    for (auto c : inst.reduced) d = std::gcd(d, detail::mod(c - inst.reduced[base], inst.modulus));
    return d;
}

// Distinct j, k, l with a_j - a_l = -(a_k - a_l), gcd(a_j - a_l, n) = 1 and
// a_i = a_l for every other i (all mod n).
inline std::optional<SpecialTriple> detect_special_family(const CongruenceInstance& inst) {
    const auto n = inst.modulus;
    const auto& a = inst.reduced;
    const auto sz = a.size();
    if (n < 3) return std::nullopt;
    for (std::size_t l = 0; l < sz; ++l) {
        // Everything except j and k must equal a_l, so at most two positions differ.
        std::vector<std::size_t> differ;
        for (std::size_t i = 0; i < sz && differ.size() <= 2; ++i)
            if (i != l && a[i] != a[l]) differ.push_back(i);
        if (differ.size() > 2) continue;
        for (std::size_t j = 0; j < sz; ++j) {
            if (j == l) continue;
            for (std::size_t k = 0; k < sz; ++k) {
                if (k == l || k == j) continue;
                if (std::any_of(differ.begin(), differ.end(), [&](auto i) { return i != j && i != k; })) continue;
                const auto dj = detail::mod(a[j] - a[l], n);
                const auto dk = detail::mod(a[k] - a[l], n);
                if (detail::mod(dj + dk, n) != 0) continue;
                if (std::gcd(dj, n) != 1) continue;
                return SpecialTriple{j, k, l};
            }
        }
    }
    return std::nullopt;
}

namespace detail {

// n = 2: the coefficient classes {0,0}, {0,1}, {1,1}.
inline CongruenceVerdict decide_two(const CongruenceInstance& inst) {
    CongruenceVerdict v;
    v.branch = Branch::TwoTable;
    v.gcd = difference_gcd(inst);
    const auto ones = std::count(inst.reduced.begin(), inst.reduced.end(), 1);
    const auto al = mod(inst.alpha, 2);
    if (ones == 0) v.solvable = al == 0;       // the sum is always 0
    else if (ones == 1) v.solvable = true;     // 0*a + 1*b takes both values
    else v.solvable = al == 1;                 // always 0 + 1
    v.excluded_or_offset = ones == 2 ? 1 : 0;
    return v;
}

} // namespace detail

inline CongruenceVerdict decide(const CongruenceInstance& inst) {
    const auto n = inst.modulus;
    if (n == 2) return detail::decide_two(inst);
    CongruenceVerdict v;
    v.gcd = difference_gcd(inst);
    const auto alpha = detail::mod(inst.alpha, n);
    if (auto t = detect_special_family(inst)) {
        v.branch = Branch::SpecialFamily;
        v.triple = t;
        v.excluded_or_offset = triangular_term(n, inst.reduced[t->l]);
        v.solvable = alpha != v.excluded_or_offset;
        return v;
    }
    v.branch = Branch::GeneralGcd;
    v.excluded_or_offset = triangular_term(n, inst.reduced[0]);
    v.solvable = detail::mod(alpha - v.excluded_or_offset, v.gcd) == 0;
    return v;
}

namespace detail {

// reach[mask] = sums (mod n, as a bitmask) obtainable by giving the last
// popcount(mask) coefficients bijectively the residues in mask.
inline std::vector<std::uint64_t> suffix_reach(const CongruenceInstance& inst) {
    const auto n = static_cast<unsigned>(inst.modulus);
    const std::uint64_t full = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    auto rotate = [&](std::uint64_t x, unsigned s) -> std::uint64_t {
        s %= n;
        if (s == 0) return x;
        return ((x << s) | (x >> (n - s))) & full;
    };
    const std::size_t masks = std::size_t{1} << n;
    std::vector<std::uint64_t> reach(masks, 0);
    reach[0] = 1;
    for (std::size_t mask = 1; mask < masks; ++mask) {
        const auto k = static_cast<unsigned>(std::popcount(mask));
        const auto a = inst.reduced[n - k];
        std::uint64_t acc = 0;
        for (auto rest = mask; rest; rest &= rest - 1) {
            const auto rho = static_cast<unsigned>(std::countr_zero(rest));
            const auto shift = static_cast<unsigned>(a * rho % n);
            acc |= rotate(reach[mask & ~(std::size_t{1} << rho)], shift);
        }
        reach[mask] = acc;
    }
    return reach;
}

} // namespace detail

// decide() plus a witness when solvable: the lexicographically smallest
// permutation x with sum a_i x_i = alpha (mod n).
inline CongruenceVerdict construct(const CongruenceInstance& inst, const Limits& lim = default_limits) {
    auto v = decide(inst);
    const auto n = inst.modulus;
    if (n > lim.mask_bits || n > 63)
        throw BudgetExceeded("witness DP over 2^" + std::to_string(n) + " residue masks exceeds the budget of 2^" +
                             std::to_string(lim.mask_bits));
    const auto reach = detail::suffix_reach(inst);
    const std::size_t all = (std::size_t{1} << n) - 1;
    const auto alpha = detail::mod(inst.alpha, n);
    const bool found = (reach[all] >> alpha) & 1u;
    if (found != v.solvable)
        throw TheoremViolation("characterization says " + std::string(v.solvable ? "solvable" : "unsolvable") +
                               " but the residue DP disagrees");
    if (!found) return v;

    std::vector<std::int64_t> x;
    std::size_t mask = all;
    std::int64_t target = alpha;
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        const auto a = inst.reduced[i];
        bool placed = false;
        for (std::int64_t rho = 0; rho < n; ++rho) {
            const auto bit = std::size_t{1} << rho;
            if (!(mask & bit)) continue;
            const auto rest = detail::mod(target - a * rho, n);
            if ((reach[mask & ~bit] >> rest) & 1u) {
                x.push_back(rho);
                mask &= ~bit;
                target = rest;
                placed = true;
                break;
            }
        }
        if (!placed) throw TheoremViolation("witness reconstruction lost its path");
    }
    v.witness = std::move(x);
    return v;
}

struct AllAlphaVerdict {
    bool every_alpha = false;
    Branch branch = Branch::GeneralGcd;
    std::int64_t gcd = 0;
    std::optional<std::int64_t> unreachable;  // some alpha with no solution
};

// Whether every alpha has a distinct-residue solution: never in the special
// family, otherwise exactly when the difference gcd is 1.
inline AllAlphaVerdict decide_all_alpha(const CongruenceInstance& inst) {
    AllAlphaVerdict out;
    const auto n = inst.modulus;
    out.gcd = difference_gcd(inst);
    if (n == 2) {
        out.branch = Branch::TwoTable;
        for (std::int64_t al = 0; al < 2; ++al)
            if (!decide(inst.with_alpha(al)).solvable && !out.unreachable) out.unreachable = al;
        out.every_alpha = !out.unreachable;
        return out;
    }
    if (auto t = detect_special_family(inst)) {
        out.branch = Branch::SpecialFamily;
        out.unreachable = triangular_term(n, inst.reduced[t->l]);
        return out;
    }
    out.branch = Branch::GeneralGcd;
    out.every_alpha = out.gcd == 1;
    if (!out.every_alpha) out.unreachable = detail::mod(triangular_term(n, inst.reduced[0]) + 1, n);
    return out;
}

// The alpha = 1 case by parity:
//   n odd or some a_i even  -> solvable iff gcd = 1
//   n = 0 mod 4, all odd    -> never
//   n = 2 mod 4, all odd    -> solvable iff gcd = 2
inline bool decide_alpha_one(const CongruenceInstance& inst) {
    const auto n = inst.modulus;
    const auto d = difference_gcd(inst);
    const bool all_odd = std::all_of(inst.coefficients.begin(), inst.coefficients.end(),
                                     [](auto c) { return detail::mod(c, 2) == 1; });
    if (n % 2 == 1 || !all_odd) return d == 1;
    if (n % 4 == 0) return false;
    return d == 2;
}

} // namespace wodot

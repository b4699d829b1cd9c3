#pragma once

// Maximal-length minimal zero-sum sequences over C_m + C_{mn} of the shape
//
//     S = e_j^{ord e_j - 1} * prod_i (x_i e_j + e_k)^{a_i},
//
// with basis e_1 = (1,0) of order m and e_2 = (0,1) of order mn. A
// multiplicity pattern (a_1, ..., a_l) summing to ord e_k is realizable iff
// a_1 x_1 + ... + a_l x_l = 1 (mod ord e_j) has a solution in distinct
// residues; the congruence solver supplies x.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wodot/congruence.hpp"
#include "wodot/error.hpp"
#include "wodot/group.hpp"
#include "wodot/limits.hpp"
#include "wodot/sequence.hpp"

namespace wodot {

// Which basis element carries the e_j^{ord e_j - 1} block.
enum class BasisRole {
    J1K2,  // e_j = e_1 (order m),  e_k = e_2 (order mn)
    J2K1,  // e_j = e_2 (order mn), e_k = e_1 (order m)
};

inline const char* to_string(BasisRole r) { return r == BasisRole::J1K2 ? "12" : "21"; }

inline BasisRole parse_role(const std::string& s) {
    if (s == "12" || s == "jk") return BasisRole::J1K2;
    if (s == "21" || s == "kj") return BasisRole::J2K1;
    throw PreconditionError("role must be 12 or 21, got '" + s + "'");
}

struct Rank2Target {
    std::int64_t m = 2;
    std::int64_t n = 1;
    BasisRole role = BasisRole::J1K2;
    std::vector<std::int64_t> pattern;  // a_1..a_l

    std::int64_t ord_j() const noexcept { return role == BasisRole::J1K2 ? m : m * n; }
    std::int64_t ord_k() const noexcept { return role == BasisRole::J1K2 ? m * n : m; }
};

struct ConstructionResult {
    bool feasible = false;
    std::string reason;  // why not, when infeasible
    std::int64_t m = 0, n = 0;
    BasisRole role = BasisRole::J1K2;
    std::vector<std::int64_t> pattern;
    std::optional<Sequence> sequence;
    std::vector<std::int64_t> witness_x;  // x_1..x_l, distinct mod ord e_j
    bool verified = false;
};

inline Group rank2_group(std::int64_t m, std::int64_t n) {
    if (m < 2 || n < 1) throw PreconditionError("need m >= 2 and n >= 1");
    return Group({m, m * n});
}

// Both shapes have (ord e_j - 1) + ord e_k = m + mn - 1 terms.
inline std::int64_t max_minimal_length(std::int64_t m, std::int64_t n) {
    if (m < 2 || n < 1) throw PreconditionError("need m >= 2 and n >= 1");
    return m + m * n - 1;
}

inline ConstructionResult construct_from_pattern(const Rank2Target& t, const Limits& lim = default_limits) {
    const auto g = rank2_group(t.m, t.n);
    const auto oj = t.ord_j();
    const auto ok = t.ord_k();
    const auto l = static_cast<std::int64_t>(t.pattern.size());
    if (l < 1) throw PreconditionError("pattern must be nonempty");
    if (l > oj) throw PreconditionError("pattern length " + std::to_string(l) + " exceeds ord e_j = " + std::to_string(oj));
    std::int64_t total = 0;
    for (auto a : t.pattern) {
        if (a < 1) throw PreconditionError("pattern entries must be >= 1");
        total += a;
    }
    if (total != ok)
        throw PreconditionError("pattern sums to " + std::to_string(total) + ", ord e_k = " + std::to_string(ok));

    ConstructionResult res;
    res.m = t.m;
    res.n = t.n;
    res.role = t.role;
    res.pattern = t.pattern;

    std::vector<std::int64_t> padded = t.pattern;
    padded.resize(static_cast<std::size_t>(oj), 0);
    if (oj < 2) throw PreconditionError("ord e_j must be >= 2");
    const auto verdict = construct(normalize(padded, oj, 1), lim);
    if (!verdict.solvable) {
        res.reason = "a_1 x_1 + ... + a_" + std::to_string(oj) + " x_" + std::to_string(oj) + " = 1 (mod " +
                     std::to_string(oj) + ") has no solution in distinct residues (" + to_string(verdict.branch) +
                     ", gcd " + std::to_string(verdict.gcd) + ")";
        return res;
    }
    res.witness_x = verdict.projected_witness(static_cast<std::size_t>(l));

    const bool j_first = t.role == BasisRole::J1K2;
    const auto ej = j_first ? g.element({1, 0}) : g.element({0, 1});
    const auto ek = j_first ? g.element({0, 1}) : g.element({1, 0});
    Sequence s(g);
    s.add(ej, static_cast<std::uint64_t>(oj - 1));
    for (std::int64_t i = 0; i < l; ++i)
        s.add(add(scalar_mul(res.witness_x[static_cast<std::size_t>(i)], ej), ek),
              static_cast<std::uint64_t>(t.pattern[static_cast<std::size_t>(i)]));

    if (static_cast<std::int64_t>(s.length()) != max_minimal_length(t.m, t.n))
        throw TheoremViolation("constructed sequence has length " + std::to_string(s.length()));
    // Terms x_i e_j + e_k have nonzero e_k-coordinate, so they never collide with e_j.
    if (static_cast<std::int64_t>(s.counts().size()) != l + 1)
        throw TheoremViolation("support size " + std::to_string(s.counts().size()) + " != l + 1");
    if (!is_minimal_zero_sum(s, lim))
        throw TheoremViolation("sequence " + s.to_string() + " is not a minimal zero-sum sequence");
    res.verified = true;
    res.feasible = true;
    res.sequence = std::move(s);
    return res;
}

inline std::vector<std::int64_t> feasible_support_sizes(std::int64_t m, std::int64_t n) {
    if (m < 2 || n < 1) throw PreconditionError("need m >= 2 and n >= 1");
    std::vector<std::int64_t> out;
    for (std::int64_t k = 3; k <= m + 1; ++k)
        if (!(k == m + 1 && n == 1 && m >= 3)) out.push_back(k);
    return out;
}

// Multiplicity pattern for support size k, or nullopt if k is out of range.
//   ord e_j = ord e_k (n = 1):   1^{l-1} (m-l+1),          l = k-1 in [2, m]
//   ord e_k < ord e_j:            1^{l-1} (m-l+1),          l = k-1 in [2, m]
//   ord e_j < ord e_k, k <= m:    1^{l-1} (mn-l+1),         l = k-1 in [2, m-1]
//   ord e_j < ord e_k, k = m+1:   1^{m-2} (2) (mn-m)  for m >= 3,  (mn-1)(1) for m = 2
// For n = 1 and k = m+1 the only pattern is all ones, which is returned
// as-is so that the congruence decides.
inline std::optional<std::vector<std::int64_t>> support_pattern(std::int64_t m, std::int64_t n, std::int64_t k,
                                                                BasisRole role) {
    if (k < 3 || k > m + 1) return std::nullopt;
    const std::int64_t l = k - 1;
    std::vector<std::int64_t> p(static_cast<std::size_t>(l - 1), 1);
    const bool case3 = n > 1 && role == BasisRole::J1K2;
    if (!case3) {
        p.push_back(m - l + 1);
        return p;
    }
    const auto mn = m * n;
    if (k <= m) {
        p.push_back(mn - l + 1);
        return p;
    }
    if (m == 2) return std::vector<std::int64_t>{mn - 1, 1};
    p.assign(static_cast<std::size_t>(m - 2), 1);
    p.push_back(2);
    p.push_back(mn - m);
    return p;
}

inline ConstructionResult construct_with_support(std::int64_t m, std::int64_t n, std::int64_t k,
                                                 std::optional<BasisRole> role = std::nullopt,
                                                 const Limits& lim = default_limits) {
    if (m < 2 || n < 1) throw PreconditionError("need m >= 2 and n >= 1");
    const auto r = role.value_or(BasisRole::J1K2);
    auto pattern = support_pattern(m, n, k, r);
    if (!pattern) {
        ConstructionResult res;
        res.m = m;
        res.n = n;
        res.role = r;
        res.reason = "support size " + std::to_string(k) + " outside [3, m+1] = [3, " + std::to_string(m + 1) + "]";
        return res;
    }
    auto res = construct_from_pattern({m, n, r, *pattern}, lim);
    if (!res.feasible && n == 1 && k == m + 1)
        res.reason = "support m+1 with n = 1 forces the all-ones pattern, solvable only for m = 2: " + res.reason;
    return res;
}

} // namespace wodot

#pragma once

// Predictions for W (.) S with W a run of |S| consecutive integers and S not
// inside a coset of a proper subgroup: the size bound min(|G|-1, |S|),
// completeness from length |G|+1 on, and the two exceptional shapes at
// length |G|. Plus checkers for the supporting lemmas and an exhaustive
// verification campaign.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wodot/group.hpp"
#include "wodot/limits.hpp"
#include "wodot/sequence.hpp"
#include "wodot/weighted_sumset.hpp"

namespace wodot {

inline bool generates_up_to_translation(const Sequence& s) {
    return !s.empty() && star_span(s.support()).is_whole();
}

// |W (.) S| >= min(|G|-1, |S|)
inline std::uint64_t lower_bound(const Group& g, const Sequence& s) {
    require_same_group(g, s.group());
    if (!generates_up_to_translation(s))
        throw NotApplicableError("terms of S lie in a coset of a proper subgroup");
    return std::min<std::uint64_t>(g.order() - 1, s.length());
}

struct Classification {
    enum class Kind { Full, ExceptionKlein, ExceptionCyclic, NotApplicable };

    Kind kind = Kind::NotApplicable;
    std::optional<Element> g;       // ExceptionCyclic: the generator with -g'+S = 0^{|G|-2} g (-g)
    std::optional<Element> gprime;  // ExceptionCyclic: the translation
    std::optional<Element> predicted_missing;
    std::string reason;             // NotApplicable only

    bool exceptional() const noexcept { return kind == Kind::ExceptionKlein || kind == Kind::ExceptionCyclic; }
};

inline const char* to_string(Classification::Kind k) {
    switch (k) {
    case Classification::Kind::Full: return "full";
    case Classification::Kind::ExceptionKlein: return "exception-klein";
    case Classification::Kind::ExceptionCyclic: return "exception-cyclic";
    case Classification::Kind::NotApplicable: return "not-applicable";
    }
    return "?";
}

// Structural verdict for |S| = |G|; never computes the sumset.
inline Classification classify_full_length(const Group& g, const Sequence& s) {
    using Kind = Classification::Kind;
    Classification c;
    if (!(g == s.group())) {
        c.reason = "sequence is over a different group";
        return c;
    }
    const auto n = g.order();
    if (n < 3) {
        c.reason = "|G| < 3";
        return c;
    }
    if (s.length() != n) {
        c.reason = "|S| != |G|";
        return c;
    }
    if (!generates_up_to_translation(s)) {
        c.reason = "terms of S lie in a coset of a proper subgroup";
        return c;
    }

    const bool klein = n == 4 && std::all_of(g.moduli().begin(), g.moduli().end(), [](auto m) { return m == 2; });
    if (klein && s.counts().size() == 4) {
        c.kind = Kind::ExceptionKlein;
        c.predicted_missing = g.zero();
        return c;
    }

    // Candidates g' carry multiplicity >= |G|-2; for |G| in {3,4} more than one can.
    for (const auto& [gp_idx, mult] : s.counts()) {
        if (mult + 2 < n) continue;
        const auto gp = g.at(gp_idx);
        const auto shifted = translate(neg(gp), s);
        if (shifted.multiplicity(g.zero()) != n - 2 || shifted.counts().size() != 3) continue;
        // The remaining two terms must be g and -g with ord(g) = |G|.
        std::optional<Element> gen;
        for (const auto& [i, k] : shifted.counts()) {
            if (i == 0) continue;
            if (k != 1) break;
            const auto e = g.at(i);
            if (order_of(e) == n && shifted.multiplicity(neg(e)) == 1 && !(neg(e) == e)) {
                gen = std::min(e, neg(e));
                break;
            }
        }
        if (!gen) continue;
        c.kind = Kind::ExceptionCyclic;
        c.g = gen;
        c.gprime = gp;
        const auto tri = static_cast<std::int64_t>((n - 1) * n / 2 % g.exponent());
        c.predicted_missing = scalar_mul(tri, gp);
        return c;
    }
    c.kind = Kind::Full;
    return c;
}

struct ExceptionRecord {
    Sequence sequence;
    Classification classification;
};

struct LengthStats {
    std::uint64_t length = 0;
    std::uint64_t sequences = 0;  // multisets with <supp S>_* = G
    std::uint64_t full = 0;       // how many had W (.) S = G
    std::uint64_t min_size = 0;   // smallest |W (.) S| seen
};

struct VerificationReport {
    Group group;
    std::uint64_t max_len = 0;
    std::vector<LengthStats> lengths;
    std::uint64_t sequences_checked = 0;
    std::vector<std::string> bound_violations;
    std::vector<ExceptionRecord> exceptions;
    std::vector<std::string> mismatches;
    double seconds = 0;

    bool ok() const noexcept { return bound_violations.empty() && mismatches.empty(); }
};

namespace detail {

// Calls f(counts) for every multiset of size len over [0, n), as a vector
// of (index, multiplicity) pairs with positive multiplicities, in colex order.
template <typename F>
void for_each_multiset(std::uint64_t n, std::uint64_t len, F&& f) {
    std::vector<std::uint64_t> pick(len, 0);  // nondecreasing element indices
    std::vector<std::pair<std::uint64_t, std::uint64_t>> counts;
    while (true) {
        counts.clear();
        for (auto x : pick) {
            if (!counts.empty() && counts.back().first == x) ++counts.back().second;
            else counts.emplace_back(x, 1);
        }
        f(counts);
        std::size_t i = len;
        while (i > 0 && pick[i - 1] == n - 1) --i;
        if (i == 0) return;
        const auto v = pick[i - 1] + 1;
        for (std::size_t j = i - 1; j < len; ++j) pick[j] = v;
    }
}

inline std::uint64_t multiset_count(std::uint64_t n, std::uint64_t len) {
    // C(n + len - 1, len)
    long double c = 1;
    for (std::uint64_t i = 1; i <= len; ++i) c = c * static_cast<long double>(n - 1 + i) / static_cast<long double>(i);
    return static_cast<std::uint64_t>(c + 0.5L);
}

} // namespace detail

using ProgressFn = std::function<void(const std::string&)>;

// Length-|G| subsequence S' of S with W' (.) S' = G, W' = (0)(1)...(|G|-1).
inline std::optional<Sequence> full_length_witness(const Sequence& s, const Limits& lim = default_limits) {
    const auto& g = s.group();
    if (s.length() < g.order()) return std::nullopt;
    const auto w = WeightSeq::run(g.order());
    const auto drop = s.length() - g.order();
    if (drop == 0) return odot(w, s, lim).is_whole() ? std::optional<Sequence>(s) : std::nullopt;
    // Drop one copy of each distinct term in turn and recurse.
    for (const auto& [i, k] : s.counts()) {
        Sequence t = s;
        t.remove_one(g.at(i));
        if (auto r = full_length_witness(t, lim)) return r;
    }
    return std::nullopt;
}

inline VerificationReport verify_main_theorem(const Group& g, std::uint64_t max_len, const Limits& lim = default_limits,
                                              const ProgressFn& progress = {}) {
    const auto start = std::chrono::steady_clock::now();
    const auto n = g.order();
    if (n > lim.exhaustive_order_cap)
        throw PreconditionError("|G| = " + std::to_string(n) + " exceeds the exhaustive cap " +
                                std::to_string(lim.exhaustive_order_cap));
    if (max_len > n + 1) throw PreconditionError("max_len must be <= |G| + 1");

    VerificationReport rep{g, max_len, {}, 0, {}, {}, {}, 0};
    const auto whole = ElementSet::whole(g);
    const auto gens = generators(g);

    for (std::uint64_t len = 1; len <= max_len; ++len) {
        if (progress)
            progress("length " + std::to_string(len) + ": " + std::to_string(detail::multiset_count(n, len)) +
                     " multisets over " + g.to_string());
        LengthStats st{len, 0, 0, n};
        const auto w = WeightSeq::run(len);
        detail::for_each_multiset(n, len, [&](const auto& counts) {
            const auto s = Sequence::from_index_counts(g, counts);
            if (!generates_up_to_translation(s)) return;
            ++st.sequences;
            const auto res = odot(w, s, lim);
            const auto size = res.size();
            st.min_size = std::min<std::uint64_t>(st.min_size, size);
            if (res.is_whole()) ++st.full;

            const auto bound = std::min<std::uint64_t>(n - 1, len);
            if (size < bound)
                rep.bound_violations.push_back("S = " + s.to_string() + ": |W.S| = " + std::to_string(size) +
                                               " < " + std::to_string(bound));

            if (len == n + 1) {
                if (!res.is_whole()) rep.mismatches.push_back("S = " + s.to_string() + ": |S| = |G|+1 but W.S != G");
                if (!full_length_witness(s, lim))
                    rep.mismatches.push_back("S = " + s.to_string() + ": no length-|G| subsequence S' with W'.S' = G");
            }

            if (len == n) {
                if (n < 3) {
                    if (!res.is_whole())
                        rep.mismatches.push_back("S = " + s.to_string() + ": W.S != G with |G| < 3");
                    return;
                }
                const auto cls = classify_full_length(g, s);
                if (cls.kind == Classification::Kind::Full) {
                    if (!res.is_whole())
                        rep.mismatches.push_back("S = " + s.to_string() + ": predicted full, got " + res.to_string());
                    return;
                }
                if (!cls.exceptional()) {
                    rep.mismatches.push_back("S = " + s.to_string() + ": classifier refused: " + cls.reason);
                    return;
                }
                auto expected = whole;
                expected.erase(*cls.predicted_missing);
                if (!(res == expected))
                    rep.mismatches.push_back("S = " + s.to_string() + ": predicted G \\ {" +
                                             cls.predicted_missing->to_string() + "}, got " + res.to_string());
                if (cls.kind == Classification::Kind::ExceptionCyclic && !gens.is_subset_of(res))
                    rep.mismatches.push_back("S = " + s.to_string() + ": a generator is missing from W.S");
                rep.exceptions.push_back({s, cls});
            }
        });
        if (st.sequences == 0) st.min_size = 0;
        rep.sequences_checked += st.sequences;
        rep.lengths.push_back(st);
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

// Bounds for W = (0)(1)...(L-1), S = x y with x, y nonzero generating G:
//   L >= 3:  <W (.) S>_* = G
//   x == y:  |W (.) S| >= min(|G|, 2L - 3)
//   x != y:  |W (.) S| >= min(|G| - 1, 2L - 2)
inline bool check_key_lemma(const Group& g, const Element& x, const Element& y, std::uint64_t len,
                            const Limits& lim = default_limits) {
    require_same_group(g, x.group());
    require_same_group(g, y.group());
    if (x.is_zero() || y.is_zero()) throw PreconditionError("x and y must be nonzero");
    if (!span(ElementSet(g, {x, y})).is_whole()) throw PreconditionError("x and y must generate G");
    if (len < 1) throw PreconditionError("L must be positive");

    const auto res = odot(WeightSeq::run(len), Sequence(g, {{x, 1}, {y, 1}}), lim);
    const auto n = static_cast<std::int64_t>(g.order());
    const auto l = static_cast<std::int64_t>(len);
    const auto size = static_cast<std::int64_t>(res.size());
    const bool bound = x == y ? size >= std::min(n, 2 * l - 3) : size >= std::min(n - 1, 2 * l - 2);
    if (!bound) return false;
    if (len >= 3 && !star_span(res).is_whole()) return false;
    return true;
}

namespace detail {

inline bool special_subset_ok(const ElementSet& xs, const ElementSet& coset, bool c6) {
    if (!star_span(xs).is_whole()) return false;
    std::size_t inside = 0;
    xs.bits().for_each([&](std::size_t i) { inside += coset.contains_index(i) ? 1 : 0; });
    if (inside < 2) return false;
    if (!c6 && stabilizer(xs).size() == 2) return false;
    return true;
}

} // namespace detail

// A 4-subset X of (0)(1)(2) (.) xyz with <X>_* = G, |X cap (3z + <x,z>_*)| >= 2
// and, unless G is C_6, |H(X)| != 2.
inline ElementSet find_special_subset(const Group& g, const Element& x, const Element& y, const Element& z,
                                      const Limits& lim = default_limits) {
    for (const auto* e : {&x, &y, &z}) require_same_group(g, e->group());
    if (g.order() < 5) throw PreconditionError("|G| must be at least 5");
    if (g.order() > lim.exhaustive_order_cap) throw PreconditionError("|G| exceeds the exhaustive cap");
    if (x == y || y == z || x == z) throw PreconditionError("x, y, z must be distinct");
    if (!star_span(ElementSet(g, {x, y, z})).is_whole()) throw PreconditionError("<x, y, z>_* must be G");
    if (order_of(sub(x, z)) < 3 || order_of(sub(y, z)) < 3 || order_of(sub(x, y)) < 3)
        throw PreconditionError("ord(x-z), ord(y-z), ord(x-y) must all be >= 3");

    const auto sums = odot(WeightSeq::run(3), Sequence(g, {{x, 1}, {y, 1}, {z, 1}}), lim).indices();
    const auto coset = span(ElementSet(g, {sub(x, z)})).translated(scalar_mul(3, z));
    // Every abelian group of order 6 is cyclic.
    const bool c6 = g.order() == 6;
    const auto m = sums.size();
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            for (std::size_t c = b + 1; c < m; ++c)
                for (std::size_t d = c + 1; d < m; ++d) {
                    auto xs = ElementSet::from_indices(g, {sums[a], sums[b], sums[c], sums[d]});
                    if (detail::special_subset_ok(xs, coset, c6)) return xs;
                }
    throw TheoremViolation("no qualifying 4-subset of (0)(1)(2).xyz for x=" + x.to_string() + ", y=" +
                           y.to_string() + ", z=" + z.to_string());
}

// With x outside A and A + {x} periodic under a subgroup of order >= 3:
// A + {y} is aperiodic for every y != x.
inline bool check_punctured(const ElementSet& a, const Element& x) {
    require_same_group(a.group(), x.group());
    if (a.empty()) throw PreconditionError("A must be nonempty");
    if (a.contains(x)) throw PreconditionError("x must not lie in A");
    auto ax = a;
    ax.insert(x);
    if (stabilizer(ax).size() < 3)
        throw PreconditionError("A + {x} is not periodic with respect to a subgroup of order >= 3");
    const auto& g = a.group();
    for (std::uint64_t i = 0; i < g.order(); ++i) {
        if (i == x.index()) continue;
        auto ay = a;
        ay.insert_index(i);
        if (!is_aperiodic(ay)) return false;
    }
    return true;
}

// <W (.) S>_* == <supp S>_* for |W| = |S| and W a run of consecutive integers.
inline bool check_generation(std::int64_t start, const Sequence& s, const Limits& lim = default_limits) {
    if (s.empty()) throw PreconditionError("S must be nonempty");
    const auto res = odot(WeightSeq::run(start, s.length()), s, lim);
    return star_span(res) == star_span(s.support());
}

} // namespace wodot

#pragma once

// The acceptance suite: eight exhaustive or seeded-random campaigns, each
// compared exactly (no tolerance) against an independent route. Shared by
// the acceptance test binary and `wodot selftest`.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wodot/check/oracles.hpp"
#include "wodot/congruence.hpp"
#include "wodot/group.hpp"
#include "wodot/sequence.hpp"
#include "wodot/theorem.hpp"
#include "wodot/weighted_sumset.hpp"
#include "wodot/zerosum.hpp"

namespace wodot::check {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024;

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0;
    double budget_seconds = 0;
};

struct AcceptanceOptions {
    std::uint64_t seed = kDefaultSeed;
    Limits limits{};
    std::ostream* progress = nullptr;  // per-criterion progress, may be null
};

namespace detail {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline Sequence random_sequence(const Group& g, std::uint64_t len, Rng& rng) {
    Sequence s(g);
    for (std::uint64_t i = 0; i < len; ++i)
        s.add(g.at(static_cast<std::uint64_t>(uniform(rng, 0, static_cast<std::int64_t>(g.order()) - 1))));
    return s;
}

inline WeightSeq random_weights(std::uint64_t len, Rng& rng) {
    WeightSeq w;
    for (std::uint64_t i = 0; i < len; ++i) w.add(uniform(rng, -12, 12));
    return w;
}

inline const std::vector<Group>& small_groups() {
    static const std::vector<Group> gs = {Group{2}, Group{3}, Group{4}, Group{5}, Group{6}, Group{7},
                                          Group{8}, Group{2, 2}, Group{2, 3}, Group{2, 4}, Group{3, 3},
                                          Group{2, 2, 2}, Group{10}, Group{12}, Group{2, 6}, Group{4, 4}};
    return gs;
}

// Fails the current criterion with a message; counts are kept by the caller.
struct Tally {
    std::uint64_t checked = 0;
    std::uint64_t failed = 0;
    std::string first_failure;

    void expect(bool ok, const std::function<std::string()>& what) {
        ++checked;
        if (ok) return;
        if (failed++ == 0) first_failure = what();
    }

    std::string summary(const std::string& noun) const {
        std::ostringstream os;
        os << checked << " " << noun << ", " << failed << " failures";
        if (failed) os << "; first: " << first_failure;
        return os.str();
    }
};

inline ElementSet set_from_mask(const Group& g, std::uint64_t mask) {
    ElementSet s(g);
    for (std::uint64_t i = 0; i < g.order(); ++i)
        if (mask >> i & 1u) s.insert_index(i);
    return s;
}

inline bool kneser_holds(const std::vector<ElementSet>& family) {
    ElementSet total = family.front();
    for (std::size_t i = 1; i < family.size(); ++i) total = sumset(total, family[i]);
    const auto h = stabilizer(total);
    std::int64_t rhs = 1 - static_cast<std::int64_t>(family.size());
    for (const auto& a : family) rhs += static_cast<std::int64_t>(quotient_image(a, h).size());
    return static_cast<std::int64_t>(quotient_image(total, h).size()) >= rhs;
}

// --- criteria -------------------------------------------------------------

inline CriterionResult main_theorem(const AcceptanceOptions& opt) {
    CriterionResult r{1, "main theorem exhaustive verification", false, "", 0, 300};
    const std::vector<Group> groups = {Group{2}, Group{3}, Group{4}, Group{5}, Group{6}, Group{7}, Group{8},
                                       Group{2, 2}, Group{2, 4}, Group{3, 3}, Group{2, 2, 2}};
    Tally t;
    std::uint64_t sequences = 0, exceptions = 0;
    for (const auto& g : groups) {
        const auto rep = verify_main_theorem(g, g.order() + 1, opt.limits);
        sequences += rep.sequences_checked;
        exceptions += rep.exceptions.size();
        t.expect(rep.ok(), [&] {
            return g.to_string() + ": " +
                   (rep.bound_violations.empty() ? rep.mismatches.front() : rep.bound_violations.front());
        });
        if (opt.progress) *opt.progress << "  " << g.to_string() << ": " << rep.sequences_checked << " sequences, "
                                        << rep.exceptions.size() << " exceptions\n";
    }
    r.passed = t.failed == 0;
    r.detail = t.summary("groups") + "; " + std::to_string(sequences) + " sequences, " + std::to_string(exceptions) +
               " exceptional sequences matched";
    return r;
}

inline CriterionResult dp_vs_naive(const AcceptanceOptions& opt) {
    CriterionResult r{2, "weighted sumset DP agrees with the permutation oracle", false, "", 0, 120};
    Tally t;
    const std::vector<Group> groups = {Group{2}, Group{3}, Group{4}, Group{5}, Group{6}, Group{2, 2}, Group{2, 3}};
    const std::vector<std::int64_t> starts = {-2, 0, 1, 4};
    for (const auto& g : groups) {
        for (std::uint64_t len = 0; len <= 5; ++len) {
            auto visit = [&](const Sequence& s) {
                for (std::uint64_t wl = 0; wl <= 5; ++wl)
                    for (auto st : starts) {
                        const auto w = WeightSeq::run(st, wl);
                        t.expect(odot(w, s, opt.limits) == odot_naive(w, s, opt.limits),
                                 [&] { return g.to_string() + " W=" + w.to_string() + " S=" + s.to_string(); });
                    }
            };
            if (len == 0) {
                visit(Sequence(g));
                continue;
            }
            wodot::detail::for_each_multiset(g.order(), len,
                                             [&](const auto& c) { visit(Sequence::from_index_counts(g, c)); });
        }
    }
    const auto exhaustive = t.checked;
    Rng rng(opt.seed ^ 0x2);
    const auto& pool = small_groups();
    for (int i = 0; i < 10000; ++i) {
        const auto& g = pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(pool.size()) - 1))];
        auto ls = static_cast<std::uint64_t>(uniform(rng, 0, 7));
        auto lw = static_cast<std::uint64_t>(uniform(rng, 0, 7));
        const auto s = random_sequence(g, ls, rng);
        const auto w = random_weights(lw, rng);
        t.expect(odot(w, s, opt.limits) == odot_naive(w, s, opt.limits),
                 [&] { return g.to_string() + " W=" + w.to_string() + " S=" + s.to_string(); });
    }
    r.passed = t.failed == 0;
    r.detail = t.summary("instances") + " (" + std::to_string(exhaustive) + " exhaustive)";
    return r;
}

inline CriterionResult shift_and_generation(const AcceptanceOptions& opt) {
    CriterionResult r{3, "shift identities and generation equality", false, "", 0, 60};
    Tally t;
    Rng rng(opt.seed ^ 0x3);
    const auto& pool = small_groups();
    auto pick_group = [&]() -> const Group& {
        return pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(pool.size()) - 1))];
    };
    for (int i = 0; i < 10000; ++i) {
        const auto& g = pick_group();
        const auto ls = static_cast<std::uint64_t>(uniform(rng, 0, 7));
        const auto lw = static_cast<std::uint64_t>(uniform(rng, static_cast<std::int64_t>(ls), 8));
        const auto s = random_sequence(g, ls, rng);
        const auto w = random_weights(lw, rng);
        const auto shift = uniform(rng, -30, 30);
        t.expect(check_weight_shift(w, s, shift, opt.limits),
                 [&] { return "(W+w): W=" + w.to_string() + " S=" + s.to_string() + " w=" + std::to_string(shift); });
    }
    for (int i = 0; i < 10000; ++i) {
        const auto& g = pick_group();
        const auto lw = static_cast<std::uint64_t>(uniform(rng, 0, 7));
        const auto ls = static_cast<std::uint64_t>(uniform(rng, static_cast<std::int64_t>(lw), 8));
        const auto s = random_sequence(g, ls, rng);
        const auto w = random_weights(lw, rng);
        const auto e = g.at(static_cast<std::uint64_t>(uniform(rng, 0, static_cast<std::int64_t>(g.order()) - 1)));
        t.expect(check_term_shift(w, s, e, opt.limits),
                 [&] { return "(S+g): W=" + w.to_string() + " S=" + s.to_string() + " g=" + e.to_string(); });
    }
    for (int i = 0; i < 10000; ++i) {
        const auto& g = pick_group();
        const auto len = static_cast<std::uint64_t>(uniform(rng, 1, 8));
        const auto s = random_sequence(g, len, rng);
        const auto start = uniform(rng, -10, 10);
        t.expect(check_generation(start, s, opt.limits),
                 [&] { return "generation: start=" + std::to_string(start) + " S=" + s.to_string(); });
    }
    r.passed = t.failed == 0;
    r.detail = t.summary("instances");
    return r;
}

inline CriterionResult lemma_checks(const AcceptanceOptions& opt) {
    CriterionResult r{4, "pair bounds and special 4-subsets", false, "", 0, 120};
    Tally pairs, triples;
    for (std::int64_t n = 3; n <= 12; ++n) {
        const auto g = Group::cyclic(n);
        for (std::int64_t x = 1; x < n; ++x)
            for (std::int64_t y = 1; y < n; ++y) {
                const auto ex = g.element({x}), ey = g.element({y});
                if (!span(ElementSet(g, {ex, ey})).is_whole()) continue;
                for (std::int64_t len = 2; len <= n + 1; ++len)
                    pairs.expect(check_key_lemma(g, ex, ey, static_cast<std::uint64_t>(len), opt.limits), [&] {
                        return "C" + std::to_string(n) + " x=" + std::to_string(x) + " y=" + std::to_string(y) +
                               " L=" + std::to_string(len);
                    });
            }
    }
    const std::vector<Group> groups = {Group{5},     Group{6},    Group{2, 3},    Group{7},     Group{8},
                                       Group{2, 4},  Group{2, 2, 2}, Group{9},   Group{3, 3},  Group{10},
                                       Group{2, 5},  Group{11},   Group{12},      Group{2, 6},  Group{3, 4}};
    for (const auto& g : groups) {
        const auto n = g.order();
        for (std::uint64_t a = 0; a < n; ++a)
            for (std::uint64_t b = 0; b < n; ++b)
                for (std::uint64_t c = 0; c < n; ++c) {
                    if (a == b || b == c || a == c) continue;
                    const auto x = g.at(a), y = g.at(b), z = g.at(c);
                    if (!star_span(ElementSet(g, {x, y, z})).is_whole()) continue;
                    if (order_of(sub(x, z)) < 3 || order_of(sub(y, z)) < 3 || order_of(sub(x, y)) < 3) continue;
                    bool ok = true;
                    try {
                        const auto xs = find_special_subset(g, x, y, z, opt.limits);
                        const auto sums = odot(WeightSeq::run(3), Sequence(g, {{x, 1}, {y, 1}, {z, 1}}), opt.limits);
                        ok = xs.size() == 4 && xs.is_subset_of(sums) && star_span(xs).is_whole() &&
                             (n == 6 || stabilizer(xs).size() != 2);
                    } catch (const TheoremViolation&) {
                        ok = false;
                    }
                    triples.expect(ok, [&] {
                        return g.to_string() + " x=" + x.to_string() + " y=" + y.to_string() + " z=" + z.to_string();
                    });
                }
    }
    r.passed = pairs.failed == 0 && triples.failed == 0 && triples.checked > 0;
    r.detail = pairs.summary("(x,y,L) cases") + "; " + triples.summary("triples");
    return r;
}

// Shared by criteria 5 and 6: every coefficient tuple visited.
struct CongruenceCase {
    std::vector<std::int64_t> a;
    std::int64_t n;
};

inline std::vector<CongruenceCase> congruence_cases(std::uint64_t seed) {
    std::vector<CongruenceCase> out;
    for (std::int64_t n = 3; n <= 6; ++n) {
        std::vector<std::int64_t> a(static_cast<std::size_t>(n), 0);
        while (true) {
            out.push_back({a, n});
            std::size_t i = 0;
            while (i < a.size() && a[i] == n - 1) a[i++] = 0;
            if (i == a.size()) break;
            ++a[i];
        }
    }
    Rng rng(seed ^ 0x5);
    for (std::int64_t n = 7; n <= 9; ++n)
        for (int i = 0; i < 1000; ++i) {
            std::vector<std::int64_t> a(static_cast<std::size_t>(n));
            for (auto& c : a) c = uniform(rng, -3 * n, 3 * n);
            out.push_back({a, n});
        }
    return out;
}

inline CriterionResult congruence_characterization(const AcceptanceOptions& opt,
                                                   const std::vector<CongruenceCase>& cases) {
    CriterionResult r{5, "distinct-residue congruence characterization", false, "", 0, 600};
    Tally t;
    std::uint64_t witnesses = 0;
    Rng rng(opt.seed ^ 0x55);
    for (const auto& c : cases) {
        const auto reachable = congruence_sums(c.a, c.n);
        std::vector<std::int64_t> alphas;
        if (c.n <= 5) {
            for (std::int64_t al = 0; al < c.n; ++al) alphas.push_back(al);
        } else if (c.n == 6) {
            alphas = {0, 1};
        } else {
            // A random representative of every residue class.
            for (std::int64_t al = 0; al < c.n; ++al) alphas.push_back(al + c.n * uniform(rng, -2, 2));
        }
        for (auto al : alphas) {
            const auto inst = normalize(c.a, c.n, al);
            const auto expect = (reachable >> wodot::detail::mod(al, c.n)) & 1u;
            const auto v = construct(inst, opt.limits);
            bool ok = v.solvable == static_cast<bool>(expect);
            if (v.solvable) {
                ok = ok && v.witness.has_value();
                if (v.witness) {
                    auto xs = *v.witness;
                    std::int64_t sum = 0;
                    for (std::size_t i = 0; i < xs.size(); ++i) sum += c.a[i] % c.n * xs[i];
                    std::sort(xs.begin(), xs.end());
                    bool perm = true;
                    for (std::size_t i = 0; i < xs.size(); ++i) perm = perm && xs[i] == static_cast<std::int64_t>(i);
                    ok = ok && perm && wodot::detail::mod(sum - al, c.n) == 0;
                    ++witnesses;
                }
            }
            t.expect(ok, [&] {
                std::string s = "n=" + std::to_string(c.n) + " a=(";
                for (auto x : c.a) s += std::to_string(x) + " ";
                return s + ") alpha=" + std::to_string(al);
            });
        }
    }
    r.passed = t.failed == 0;
    r.detail = t.summary("(tuple, alpha) cases") + "; " + std::to_string(witnesses) + " witnesses substituted";
    return r;
}

inline CriterionResult alpha_one_table(const AcceptanceOptions&, const std::vector<CongruenceCase>& cases) {
    CriterionResult r{6, "alpha = 1 parity table", false, "", 0, 60};
    Tally t;
    for (const auto& c : cases) {
        const auto inst = normalize(c.a, c.n, 1);
        t.expect(decide_alpha_one(inst) == decide(inst).solvable, [&] {
            std::string s = "n=" + std::to_string(c.n) + " a=(";
            for (auto x : c.a) s += std::to_string(x) + " ";
            return s + ")";
        });
    }
    t.expect(!decide_alpha_one(normalize({1, 1, 1, 1}, 4, 1)), [] { return "all-ones mod 4 should be unsolvable"; });
    t.expect(!decide_alpha_one(normalize({1, 1, 1, 1, 1, 1}, 6, 1)), [] { return "all-ones mod 6 should be unsolvable"; });
    t.expect(decide_alpha_one(normalize({1, 1, 1, 1, 1, 3}, 6, 1)), [] { return "(1,1,1,1,1,3) mod 6 should be solvable"; });
    r.passed = t.failed == 0;
    r.detail = t.summary("instances");
    return r;
}

inline CriterionResult zero_sum_realizability(const AcceptanceOptions& opt) {
    CriterionResult r{7, "maximal-length minimal zero-sum support sizes", false, "", 0, 300};
    Tally t;
    std::vector<std::string> skipped;
    const std::vector<std::pair<std::int64_t, std::int64_t>> pairs = {{2, 1}, {2, 2}, {3, 1}, {3, 2},
                                                                      {4, 1}, {4, 2}, {5, 1}};
    for (auto [m, n] : pairs) {
        const auto feasible = feasible_support_sizes(m, n);
        const auto len = max_minimal_length(m, n);
        try {
            for (std::int64_t k = 3; k <= m + 1; ++k) {
                const bool want = std::find(feasible.begin(), feasible.end(), k) != feasible.end();
                const bool excluded = k == m + 1 && n == 1 && m >= 3;
                const auto res = construct_with_support(m, n, k, std::nullopt, opt.limits);
                bool ok = res.feasible == want && want == !excluded;
                if (res.feasible) {
                    const auto& s = *res.sequence;
                    ok = ok && res.verified && static_cast<std::int64_t>(s.length()) == len &&
                         static_cast<std::int64_t>(s.counts().size()) == k && is_zero_sum(s) &&
                         minimal_zero_sum_by_subsets(s);
                }
                t.expect(ok, [&] {
                    return "(m,n,k)=(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(k) +
                           ") feasible=" + (res.feasible ? "yes" : "no") + " " + res.reason;
                });
            }
        } catch (const BudgetExceeded&) {
            skipped.push_back("(" + std::to_string(m) + "," + std::to_string(n) + ")");
            // Pairs with m + mn - 1 <= 12 may never be skipped.
            t.expect(len > 12, [&] { return "pair with length " + std::to_string(len) + " skipped"; });
        }
    }
    r.passed = t.failed == 0;
    r.detail = t.summary("support sizes");
    if (!skipped.empty()) {
        r.detail += "; skipped:";
        for (const auto& s : skipped) r.detail += " " + s;
    }
    return r;
}

inline CriterionResult kneser_and_pigeonhole(const AcceptanceOptions& opt) {
    CriterionResult r{8, "Kneser and pigeonhole sanity", false, "", 0, 120};
    Tally kneser, pigeon;
    const std::vector<Group> groups = {Group{2}, Group{3}, Group{4}, Group{5}, Group{6}, Group{7}, Group{8},
                                       Group{2, 2}, Group{2, 3}, Group{2, 4}, Group{2, 2, 2}};
    for (const auto& g : groups) {
        const auto n = g.order();
        const std::uint64_t top = std::uint64_t{1} << n;
        std::vector<ElementSet> sets;
        for (std::uint64_t mask = 1; mask < top; ++mask) sets.push_back(set_from_mask(g, mask));
        for (std::uint64_t i = 0; i < sets.size(); ++i)
            for (std::uint64_t j = 0; j < sets.size(); ++j) {
                const auto& a = sets[i];
                const auto& b = sets[j];
                kneser.expect(kneser_holds({a, b}), [&] { return g.to_string() + " A=" + a.to_string() + " B=" + b.to_string(); });
                if (a.size() + b.size() >= n + 1)
                    pigeon.expect(sumset(a, b).is_whole(),
                                  [&] { return g.to_string() + " A=" + a.to_string() + " B=" + b.to_string(); });
            }
    }
    Rng rng(opt.seed ^ 0x8);
    const std::vector<Group> pool = {Group{9},     Group{10},   Group{12},   Group{2, 6},  Group{3, 3},
                                     Group{16},    Group{2, 8}, Group{4, 4}, Group{2, 2, 4}, Group{18},
                                     Group{3, 6},  Group{20},   Group{2, 10}, Group{24},   Group{2, 12},
                                     Group{2, 2, 6}, Group{21}, Group{22},   Group{15},    Group{14}};
    for (int i = 0; i < 1000; ++i) {
        const auto& g = pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(pool.size()) - 1))];
        const auto count = static_cast<std::size_t>(uniform(rng, 1, 4));
        std::vector<ElementSet> family;
        for (std::size_t k = 0; k < count; ++k) {
            ElementSet a(g);
            const auto size = uniform(rng, 1, static_cast<std::int64_t>(g.order()) / 2);
            for (std::int64_t e = 0; e < size; ++e)
                a.insert_index(static_cast<std::uint64_t>(uniform(rng, 0, static_cast<std::int64_t>(g.order()) - 1)));
            family.push_back(a);
        }
        kneser.expect(kneser_holds(family), [&] { return g.to_string() + " random family"; });
        if (count == 2 && family[0].size() + family[1].size() >= g.order() + 1)
            pigeon.expect(sumset(family[0], family[1]).is_whole(), [&] { return g.to_string() + " random pair"; });
    }
    r.passed = kneser.failed == 0 && pigeon.failed == 0;
    r.detail = kneser.summary("Kneser families") + "; " + pigeon.summary("pigeonhole pairs");
    return r;
}

} // namespace detail

inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {}) {
    std::vector<CriterionResult> out;
    auto timed = [&](auto&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = fn();
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.budget_seconds > 0 && r.seconds > r.budget_seconds) {
            r.passed = false;
            r.detail += "; exceeded time budget";
        }
        if (opt.progress)
            *opt.progress << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.title << " (" << r.seconds
                          << " s): " << r.detail << "\n";
        out.push_back(r);
    };
    timed([&] { return detail::main_theorem(opt); });
    timed([&] { return detail::dp_vs_naive(opt); });
    timed([&] { return detail::shift_and_generation(opt); });
    timed([&] { return detail::lemma_checks(opt); });
    const auto cases = detail::congruence_cases(opt.seed);
    timed([&] { return detail::congruence_characterization(opt, cases); });
    timed([&] { return detail::alpha_one_table(opt, cases); });
    timed([&] { return detail::zero_sum_realizability(opt); });
    timed([&] { return detail::kneser_and_pigeonhole(opt); });
    return out;
}

} // namespace wodot::check

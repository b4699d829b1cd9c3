#include <gtest/gtest.h>

#include <random>

#include "wodot/theorem.hpp"

using namespace wodot;

namespace {

Sequence cyc(const Group& g, std::initializer_list<std::pair<std::int64_t, std::uint64_t>> terms) {
    Sequence s(g);
    for (auto [x, k] : terms) s.add(g.element({x}), k);
    return s;
}

ElementSet cyc_set(const Group& g, std::initializer_list<std::int64_t> xs) {
    ElementSet s(g);
    for (auto x : xs) s.insert(g.element({x}));
    return s;
}

Sequence random_sequence(const Group& g, std::uint64_t len, std::mt19937_64& rng) {
    Sequence s(g);
    for (std::uint64_t i = 0; i < len; ++i) s.add(g.at(rng() % g.order()));
    return s;
}

} // namespace

TEST(LowerBound, Values) {
    Group c5{5};
    EXPECT_EQ(lower_bound(c5, cyc(c5, {{0, 1}, {1, 2}})), 3u);
    EXPECT_EQ(lower_bound(c5, cyc(c5, {{0, 1}, {1, 6}})), 4u);
    EXPECT_THROW(lower_bound(c5, cyc(c5, {{1, 3}})), NotApplicableError);
}

TEST(LowerBound, TightForZerosAndAGenerator) {
    for (std::int64_t n = 3; n <= 9; ++n) {
        const auto g = Group::cyclic(n);
        for (std::uint64_t len = 2; len <= static_cast<std::uint64_t>(n); ++len) {
            const auto s = cyc(g, {{0, len - 1}, {1, 1}});
            EXPECT_EQ(odot(WeightSeq::run(len), s).size(), len);
        }
    }
}

TEST(Classify, CyclicException) {
    Group c4{4};
    const auto c = classify_full_length(c4, cyc(c4, {{0, 2}, {1, 1}, {3, 1}}));
    EXPECT_EQ(c.kind, Classification::Kind::ExceptionCyclic);
    EXPECT_EQ(*c.g, c4.element({1}));
    EXPECT_EQ(*c.gprime, c4.zero());
    EXPECT_EQ(*c.predicted_missing, c4.zero());
}

TEST(Classify, KleinException) {
    Group k{2, 2};
    Sequence s(k);
    for (std::uint64_t i = 0; i < 4; ++i) s.add(k.at(i));
    const auto c = classify_full_length(k, s);
    EXPECT_EQ(c.kind, Classification::Kind::ExceptionKlein);
    EXPECT_EQ(*c.predicted_missing, k.zero());
}

TEST(Classify, FullAndNotApplicable) {
    Group c5{5};
    const auto s = cyc(c5, {{0, 2}, {1, 1}, {2, 1}, {3, 1}});
    EXPECT_EQ(classify_full_length(c5, s).kind, Classification::Kind::Full);
    EXPECT_TRUE(odot(WeightSeq::run(5), s).is_whole());
    EXPECT_EQ(classify_full_length(c5, cyc(c5, {{0, 4}})).kind, Classification::Kind::NotApplicable);
    EXPECT_EQ(classify_full_length(c5, cyc(c5, {{0, 3}, {1, 1}})).kind, Classification::Kind::NotApplicable);
    Group c2{2};
    EXPECT_EQ(classify_full_length(c2, cyc(c2, {{0, 1}, {1, 1}})).kind, Classification::Kind::NotApplicable);
}

TEST(Classify, ShiftedCyclicExceptionMissesPredictedElement) {
    // -g' + S = 0^{n-2} g (-g): the missing element is (n-1)n/2 * g'.
    for (std::int64_t n = 3; n <= 10; ++n) {
        const auto g = Group::cyclic(n);
        for (std::int64_t gp = 0; gp < n; ++gp)
            for (std::int64_t x = 1; x < n; ++x) {
                if (std::gcd(x, n) != 1) continue;
                const auto s = translate(g.element({gp}), cyc(g, {{0, static_cast<std::uint64_t>(n - 2)}, {x, 1}, {n - x, 1}}));
                const auto c = classify_full_length(g, s);
                ASSERT_EQ(c.kind, Classification::Kind::ExceptionCyclic);
                const auto res = odot(WeightSeq::run(static_cast<std::uint64_t>(n)), s);
                auto expect = ElementSet::whole(g);
                expect.erase(g.element({(n - 1) * n / 2 * gp}));
                EXPECT_EQ(res, expect);
                EXPECT_EQ(*c.predicted_missing, g.element({(n - 1) * n / 2 * gp}));
                EXPECT_TRUE(generators(g).is_subset_of(res));
            }
    }
}

TEST(Verify, C5Report) {
    const Group c5{5};
    const auto rep = verify_main_theorem(c5, 6);
    EXPECT_TRUE(rep.ok());
    // Exceptions at length 5 are exactly g' + 0^3 g (-g): 5 choices of g', 2 of {g, -g}.
    EXPECT_EQ(rep.exceptions.size(), 10u);
    for (const auto& e : rep.exceptions) {
        EXPECT_EQ(e.sequence.length(), 5u);
        EXPECT_EQ(e.classification.kind, Classification::Kind::ExceptionCyclic);
        EXPECT_EQ(e.sequence.max_multiplicity(), 3u);
    }
    ASSERT_EQ(rep.lengths.size(), 6u);
    EXPECT_EQ(rep.lengths.back().full, rep.lengths.back().sequences);
}

TEST(Verify, KleinReport) {
    const auto rep = verify_main_theorem(Group{2, 2}, 5);
    EXPECT_TRUE(rep.ok());
    ASSERT_EQ(rep.exceptions.size(), 1u);
    EXPECT_EQ(rep.exceptions.front().sequence.support().size(), 4u);
    EXPECT_EQ(rep.exceptions.front().classification.kind, Classification::Kind::ExceptionKlein);
}

TEST(Verify, C2HasNoExceptions) {
    const auto rep = verify_main_theorem(Group{2}, 3);
    EXPECT_TRUE(rep.ok());
    EXPECT_TRUE(rep.exceptions.empty());
}

TEST(Verify, Preconditions) {
    EXPECT_THROW(verify_main_theorem(Group{5}, 7), PreconditionError);
    Limits lim;
    lim.exhaustive_order_cap = 4;
    EXPECT_THROW(verify_main_theorem(Group{5}, 3, lim), PreconditionError);
}

TEST(Verify, FullLengthWitness) {
    Group c4{4};
    const auto s = cyc(c4, {{0, 3}, {1, 1}, {3, 1}});
    const auto w = full_length_witness(s);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->length(), 4u);
    EXPECT_TRUE(odot(WeightSeq::run(4), *w).is_whole());
}

// Translation covariance, and the bound on groups too large for the
// exhaustive campaign, by sampling.
TEST(TheoremProperties, SampledBoundAndCovariance) {
    std::mt19937_64 rng(31);
    for (const Group& g : {Group{10}, Group{12}, Group{2, 6}}) {
        const auto n = g.order();
        int checked = 0;
        for (int t = 0; t < 400; ++t) {
            const auto s = random_sequence(g, 1 + rng() % (n + 1), rng);
            if (!generates_up_to_translation(s)) continue;
            ++checked;
            const auto res = odot(WeightSeq::run(s.length()), s);
            ASSERT_GE(res.size(), lower_bound(g, s)) << s.to_string();
            if (s.length() == n + 1) ASSERT_TRUE(res.is_whole());
        }
        EXPECT_GT(checked, 50);
    }
    for (const Group& g : {Group{5}, Group{6}, Group{2, 4}}) {
        const auto n = g.order();
        for (int t = 0; t < 300; ++t) {
            auto s = random_sequence(g, n, rng);
            if (t % 3 == 0) {
                // Force an exceptional shape sometimes.
                const auto gen = generators(g);
                if (gen.empty()) continue;
                const auto x = gen.members()[rng() % gen.size()];
                s = Sequence(g, {{g.zero(), n - 2}, {x, 1}, {neg(x), 1}});
            }
            const auto c0 = classify_full_length(g, s);
            const auto shift = g.at(rng() % n);
            const auto c1 = classify_full_length(g, translate(shift, s));
            EXPECT_EQ(c0.kind, c1.kind) << s.to_string();
            if (c0.gprime && c1.gprime) EXPECT_EQ(*c1.gprime, add(*c0.gprime, shift));
        }
    }
}

TEST(KeyLemma, Examples) {
    Group c5{5};
    const auto one = c5.element({1}), two = c5.element({2});
    EXPECT_EQ(odot(WeightSeq::run(3), Sequence(c5, {{one, 2}})), cyc_set(c5, {1, 2, 3}));
    EXPECT_TRUE(check_key_lemma(c5, one, one, 3));
    EXPECT_GE(odot(WeightSeq::run(3), Sequence(c5, {{one, 1}, {two, 1}})).size(), 4u);
    EXPECT_TRUE(check_key_lemma(c5, one, two, 3));
    EXPECT_TRUE(check_key_lemma(c5, one, two, 2));
    EXPECT_THROW(check_key_lemma(c5, c5.zero(), two, 3), PreconditionError);
    Group c6{6};
    EXPECT_THROW(check_key_lemma(c6, c6.element({2}), c6.element({4}), 3), PreconditionError);
}

TEST(KeyLemma, ExhaustiveSmallCyclic) {
    for (std::int64_t n = 3; n <= 9; ++n) {
        const auto g = Group::cyclic(n);
        for (std::int64_t x = 1; x < n; ++x)
            for (std::int64_t y = 1; y < n; ++y) {
                if (std::gcd(std::gcd(x, y), n) != 1) continue;
                for (std::uint64_t len = 2; len <= static_cast<std::uint64_t>(n + 1); ++len)
                    EXPECT_TRUE(check_key_lemma(g, g.element({x}), g.element({y}), len));
            }
    }
}

TEST(SpecialSubset, Examples) {
    Group c5{5};
    const auto x5 = find_special_subset(c5, c5.element({1}), c5.element({2}), c5.zero());
    EXPECT_EQ(x5.size(), 4u);
    EXPECT_TRUE(star_span(x5).is_whole());
    Group c7{7};
    EXPECT_EQ(find_special_subset(c7, c7.element({3}), c7.element({5}), c7.zero()).size(), 4u);
    Group c6{6};
    const auto x6 = find_special_subset(c6, c6.element({1}), c6.element({2}), c6.zero());
    EXPECT_EQ(x6.size(), 4u);
    const auto sums = odot(WeightSeq::run(3), Sequence(c6, {{c6.element({1}), 1}, {c6.element({2}), 1}, {c6.zero(), 1}}));
    EXPECT_TRUE(x6.is_subset_of(sums));
    EXPECT_THROW(find_special_subset(c6, c6.element({1}), c6.element({4}), c6.zero()), PreconditionError);
    EXPECT_THROW(find_special_subset(Group{4}, Group{4}.element({1}), Group{4}.element({2}), Group{4}.zero()),
                 PreconditionError);
}

TEST(Punctured, Examples) {
    Group c6{6};
    EXPECT_TRUE(check_punctured(cyc_set(c6, {0, 2}), c6.element({4})));
    Group c9{9};
    EXPECT_TRUE(check_punctured(cyc_set(c9, {0, 3}), c9.element({6})));
    // A + {x} = <3> in C6 has a stabilizer of order 2 only.
    EXPECT_THROW(check_punctured(cyc_set(c6, {0}), c6.element({3})), PreconditionError);
    EXPECT_THROW(check_punctured(cyc_set(c6, {0, 2}), c6.element({2})), PreconditionError);
}

TEST(Punctured, Exhaustive) {
    for (const Group& g : {Group{6}, Group{8}, Group{9}, Group{2, 4}, Group{3, 3}, Group{12}, Group{2, 6}}) {
        const std::uint64_t top = std::uint64_t{1} << g.order();
        for (std::uint64_t mask = 1; mask < top; ++mask) {
            ElementSet a(g);
            for (std::uint64_t i = 0; i < g.order(); ++i)
                if (mask >> i & 1u) a.insert_index(i);
            for (std::uint64_t xi = 0; xi < g.order(); ++xi) {
                if (a.contains_index(xi)) continue;
                auto ax = a;
                ax.insert_index(xi);
                if (stabilizer(ax).size() < 3) continue;
                EXPECT_TRUE(check_punctured(a, g.at(xi))) << a.to_string();
            }
        }
    }
}

TEST(Generation, Examples) {
    Group c6{6};
    EXPECT_TRUE(check_generation(0, cyc(c6, {{1, 1}, {3, 2}})));
    EXPECT_TRUE(check_generation(-3, cyc(c6, {{2, 2}, {4, 1}})));
    EXPECT_THROW(check_generation(0, Sequence(c6)), PreconditionError);
}

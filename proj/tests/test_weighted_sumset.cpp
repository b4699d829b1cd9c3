#include <gtest/gtest.h>

#include <random>

#include "wodot/weighted_sumset.hpp"

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

WeightSeq random_weights(std::uint64_t len, std::mt19937_64& rng) {
    WeightSeq w;
    for (std::uint64_t i = 0; i < len; ++i) w.add(static_cast<std::int64_t>(rng() % 41) - 20);
    return w;
}

} // namespace

TEST(WeightSeq, Basics) {
    const auto w = WeightSeq::run(-1, 4);
    EXPECT_EQ(w.length(), 4u);
    EXPECT_EQ(w.sum(), 2);
    EXPECT_EQ(w.to_string(), "(-1)(0)(1)(2)");
    EXPECT_EQ(WeightSeq({2, 2, 5}).to_string(), "(2)^2(5)");
    EXPECT_EQ(shift_weights(WeightSeq::run(3), 2), WeightSeq::run(2, 3));
    EXPECT_EQ(pad_zeros(WeightSeq{1}, 2), WeightSeq({0, 0, 1}));
}

TEST(Odot, SmallCases) {
    Group c7{7};
    EXPECT_EQ(odot(WeightSeq{0}, cyc(c7, {{1, 1}})), cyc_set(c7, {0}));
    EXPECT_EQ(odot(WeightSeq{5}, cyc(c7, {{1, 1}})), cyc_set(c7, {5}));
    EXPECT_EQ(odot_naive(WeightSeq{5}, cyc(c7, {{1, 1}})), cyc_set(c7, {5}));
    EXPECT_EQ(odot(WeightSeq{1, 2}, Sequence(c7)), cyc_set(c7, {0}));
    EXPECT_EQ(odot_naive(WeightSeq{1, 2}, Sequence(c7)), cyc_set(c7, {0}));
    EXPECT_EQ(odot(WeightSeq{}, cyc(c7, {{3, 2}})), cyc_set(c7, {0}));
}

TEST(Odot, FullLengthExceptions) {
    Group c3{3};
    EXPECT_EQ(odot(WeightSeq::run(3), cyc(c3, {{0, 1}, {1, 1}, {2, 1}})), cyc_set(c3, {1, 2}));
    Group k{2, 2};
    Sequence s(k);
    for (std::uint64_t i = 0; i < 4; ++i) s.add(k.at(i));
    auto expect = ElementSet::whole(k);
    expect.erase(k.zero());
    EXPECT_EQ(odot(WeightSeq::run(4), s), expect);
}

TEST(Odot, ShortRunOverC5) {
    Group c5{5};
    const auto s = cyc(c5, {{0, 1}, {1, 2}});
    const auto w = WeightSeq::run(3);
    EXPECT_EQ(odot(w, s), cyc_set(c5, {1, 2, 3}));
    EXPECT_EQ(odot_naive(w, s), cyc_set(c5, {1, 2, 3}));
    EXPECT_EQ(odot(shift_weights(w, 1), s), cyc_set(c5, {3, 4, 0}));
    EXPECT_EQ(odot(w, translate(c5.element({1}), s)), odot(w, s).translated(c5.element({3})));
    EXPECT_TRUE(check_weight_shift(w, s, 1));
    EXPECT_TRUE(check_term_shift(w, s, c5.element({1})));
    EXPECT_TRUE(check_weight_shift(w, s, 0));
    EXPECT_TRUE(check_term_shift(w, s, c5.zero()));
}

TEST(Odot, ShiftPreconditions) {
    Group c5{5};
    EXPECT_THROW(check_weight_shift(WeightSeq::run(2), cyc(c5, {{1, 3}}), 1), PreconditionError);
    EXPECT_THROW(check_term_shift(WeightSeq::run(4), cyc(c5, {{1, 3}}), c5.element({1})), PreconditionError);
}

TEST(Odot, Budgets) {
    Group c7{7};
    const auto s = cyc(c7, {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}});
    Limits lim;
    lim.mask_bits = 4;
    EXPECT_THROW(odot(WeightSeq::run(7), s, lim), BudgetExceeded);
    lim.perm_oracle_r = 5;
    EXPECT_THROW(odot_naive(WeightSeq::run(7), s, lim), BudgetExceeded);
}

TEST(Odot, LargeMultiplicitiesStayCheap) {
    // 0^{n-2} g (-g) has a handful of usage states however long it is.
    Group c97{97};
    const auto s = cyc(c97, {{0, 95}, {1, 1}, {96, 1}});
    auto res = odot(WeightSeq::run(97), s);
    EXPECT_EQ(res.size(), 96u);
    EXPECT_FALSE(res.contains(c97.zero()));
}

TEST(OdotProperties, MatchesNaive) {
    std::mt19937_64 rng(21);
    for (const Group& g : {Group{5}, Group{8}, Group{2, 4}, Group{3, 3}, Group{2, 2, 2}, Group{10}}) {
        for (int t = 0; t < 150; ++t) {
            const auto s = random_sequence(g, rng() % 7, rng);
            const auto w = random_weights(rng() % 7, rng);
            ASSERT_EQ(odot(w, s), odot_naive(w, s)) << g.to_string() << " W=" << w.to_string() << " S=" << s.to_string();
        }
    }
}

TEST(OdotProperties, PaddingInvariance) {
    std::mt19937_64 rng(22);
    for (const Group& g : {Group{6}, Group{2, 4}, Group{11}}) {
        for (int t = 0; t < 200; ++t) {
            const auto s = random_sequence(g, rng() % 7, rng);
            const auto w = random_weights(rng() % 7, rng);
            const auto r = std::min(w.length(), s.length());
            const auto lhs = odot(w, s);
            EXPECT_EQ(lhs, odot(pad_zeros(w, s.length() - r), pad_zeros(s, w.length() - r)));
        }
    }
}

TEST(OdotProperties, OutputLiesInOneCoset) {
    std::mt19937_64 rng(23);
    for (const Group& g : {Group{12}, Group{2, 6}, Group{3, 3}}) {
        for (int t = 0; t < 200; ++t) {
            const auto s = random_sequence(g, 1 + rng() % 6, rng);
            const auto w = random_weights(s.length(), rng);
            const auto res = odot(w, s);
            const auto c = res.members().front();
            EXPECT_TRUE(res.is_subset_of(star_span(res).translated(c)));
        }
    }
}

TEST(OdotProperties, ShiftIdentitiesAndGeneration) {
    std::mt19937_64 rng(24);
    for (const Group& g : {Group{7}, Group{12}, Group{2, 4}, Group{3, 3}}) {
        for (int t = 0; t < 150; ++t) {
            const auto ls = rng() % 6;
            const auto s = random_sequence(g, ls, rng);
            const auto w = random_weights(ls + rng() % 3, rng);
            EXPECT_TRUE(check_weight_shift(w, s, static_cast<std::int64_t>(rng() % 61) - 30));
            const auto w2 = random_weights(ls - (ls ? rng() % (ls + 1) : 0), rng);
            EXPECT_TRUE(check_term_shift(w2, s, g.at(rng() % g.order())));
            if (ls) {
                const auto res = odot(WeightSeq::run(static_cast<std::int64_t>(rng() % 9) - 4, ls), s);
                EXPECT_EQ(star_span(res), star_span(s.support()));
            }
        }
    }
}

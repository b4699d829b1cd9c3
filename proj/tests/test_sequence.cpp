#include <gtest/gtest.h>

#include <random>

#include "wodot/check/oracles.hpp"
#include "wodot/sequence.hpp"

using namespace wodot;

namespace {

Sequence cyc(const Group& g, std::initializer_list<std::pair<std::int64_t, std::uint64_t>> terms) {
    Sequence s(g);
    for (auto [x, k] : terms) s.add(g.element({x}), k);
    return s;
}

Sequence random_sequence(const Group& g, std::uint64_t len, std::mt19937_64& rng) {
    Sequence s(g);
    for (std::uint64_t i = 0; i < len; ++i) s.add(g.at(rng() % g.order()));
    return s;
}

std::vector<check::Coords> coords_of(const ElementSet& s) {
    std::vector<check::Coords> out;
    for (const auto& e : s.members()) out.push_back(e.coords());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST(Sequence, Vocabulary) {
    Group c6{6};
    const auto s = cyc(c6, {{1, 2}, {3, 1}});
    EXPECT_EQ(s.length(), 3u);
    EXPECT_EQ(s.max_multiplicity(), 2u);
    EXPECT_EQ(s.support().size(), 2u);
    EXPECT_EQ(s.multiplicity(c6.element({1})), 2u);
    EXPECT_EQ(s.multiplicity(c6.element({2})), 0u);
    EXPECT_EQ(s.to_string(), "1^2 3");
    EXPECT_EQ(Sequence(c6).to_string(), "1");
    EXPECT_EQ(s.subsequence_count(), 6u);
    auto t = s;
    t.remove_one(c6.element({3}));
    EXPECT_EQ(t, cyc(c6, {{1, 2}}));
    EXPECT_THROW(t.remove_one(c6.element({3})), PreconditionError);
}

TEST(Sequence, Sigma) {
    Group c6{6};
    EXPECT_EQ(sigma(Sequence(c6)), c6.zero());
    EXPECT_EQ(sigma(cyc(c6, {{1, 2}, {3, 1}})), c6.element({5}));
    for (std::int64_t n = 3; n <= 8; ++n) {
        const auto g = Group::cyclic(n);
        for (std::int64_t x = 1; x < n; ++x)
            EXPECT_TRUE(sigma(cyc(g, {{0, static_cast<std::uint64_t>(n - 2)}, {x, 1}, {n - x, 1}})).is_zero());
    }
}

TEST(Sequence, Translate) {
    Group c4{4};
    const auto s = cyc(c4, {{0, 3}, {2, 1}});
    EXPECT_EQ(translate(c4.zero(), s), s);
    EXPECT_EQ(translate(c4.element({1}), s), cyc(c4, {{1, 3}, {3, 1}}));
}

TEST(Sequence, SigmaN) {
    Group c4{4};
    const auto s = cyc(c4, {{0, 1}, {1, 1}, {2, 1}});
    EXPECT_EQ(sigma_n(s, 0), ElementSet(c4, {c4.zero()}));
    EXPECT_EQ(sigma_n(s, 2), ElementSet(c4, {c4.element({1}), c4.element({2}), c4.element({3})}));
    EXPECT_EQ(sigma_n(s, 3), ElementSet(c4, {sigma(s)}));
    EXPECT_THROW(sigma_n(s, 4), PreconditionError);
}

TEST(Sequence, ZeroSumPredicates) {
    Group c5{5};
    for (std::int64_t g = 1; g < 5; ++g) EXPECT_TRUE(is_minimal_zero_sum(cyc(c5, {{g, 1}, {5 - g, 1}})));
    EXPECT_FALSE(is_minimal_zero_sum(cyc(c5, {{0, 1}, {2, 1}})));
    EXPECT_FALSE(is_minimal_zero_sum(Sequence(c5)));
    EXPECT_TRUE(is_minimal_zero_sum(cyc(c5, {{0, 1}})));
    Group k{2, 2};
    Sequence klein(k, {{k.element({1, 0}), 1}, {k.element({0, 1}), 1}, {k.element({1, 1}), 1}});
    EXPECT_TRUE(is_minimal_zero_sum(klein));
    EXPECT_TRUE(is_zero_sum_free(cyc(c5, {{1, 4}})));
    EXPECT_FALSE(is_zero_sum_free(cyc(c5, {{1, 5}})));
    EXPECT_TRUE(is_minimal_zero_sum(cyc(c5, {{1, 5}})));
}

TEST(Sequence, EnumerationBudget) {
    Group g{2, 2, 2, 2, 2, 2};
    Sequence s(g);
    for (std::uint64_t i = 1; i < g.order(); ++i) s.add(g.at(i));
    Limits lim;
    lim.enum_budget = 1000;
    EXPECT_THROW(is_minimal_zero_sum(s, lim), BudgetExceeded);
}

TEST(SequenceProperties, TranslateInvariants) {
    std::mt19937_64 rng(3);
    for (const Group& g : {Group{7}, Group{2, 4}, Group{3, 3}, Group{12}}) {
        for (int t = 0; t < 200; ++t) {
            const auto s = random_sequence(g, rng() % 10, rng);
            const auto e = g.at(rng() % g.order());
            const auto ts = translate(e, s);
            EXPECT_EQ(ts.length(), s.length());
            EXPECT_EQ(ts.max_multiplicity(), s.max_multiplicity());
            EXPECT_EQ(sigma(ts), add(sigma(s), scalar_mul(static_cast<std::int64_t>(s.length()), e)));
        }
    }
}

TEST(SequenceProperties, SigmaNMatchesIndexSubsets) {
    std::mt19937_64 rng(5);
    for (const Group& g : {Group{5}, Group{8}, Group{2, 4}, Group{2, 2, 2}, Group{3, 3}, Group{12}}) {
        for (int t = 0; t < 60; ++t) {
            const auto s = random_sequence(g, rng() % 13, rng);
            for (std::uint64_t n = 0; n <= s.length(); ++n)
                ASSERT_EQ(coords_of(sigma_n(s, n)), check::sigma_n_by_subsets(s, n)) << s.to_string() << " n=" << n;
        }
    }
}

TEST(SequenceProperties, SigmaAllAndZeroSumFreeness) {
    std::mt19937_64 rng(9);
    for (const Group& g : {Group{6}, Group{2, 4}, Group{9}}) {
        for (int t = 0; t < 200; ++t) {
            const auto s = random_sequence(g, 1 + rng() % 8, rng);
            const auto all = sigma_all(s);
            EXPECT_TRUE(all.contains(sigma(s)));
            EXPECT_EQ(is_zero_sum_free(s), !all.contains(g.zero()));
            EXPECT_EQ(is_minimal_zero_sum(s), check::minimal_zero_sum_by_subsets(s)) << s.to_string();
        }
    }
}

#include <gtest/gtest.h>

#include "fplab/tkcount.hpp"
#include "oracles.hpp"

using namespace fplab;

namespace {

std::vector<TkFactor> same_factors(unsigned k, const ResidueSet& set, i64 shift = 0) {
    return std::vector<TkFactor>(k, TkFactor{set, shift});
}

}  // namespace

TEST(TkExperiment, Examples) {
    const PrimeContext p3(3);
    const auto r = tk_experiment(6, same_factors(6, ResidueSet({1}, p3)), 2, 1, p3);
    EXPECT_EQ(r.counts, CountVector({22, 21, 21}));
    EXPECT_EQ(r.mass, 64u);
    EXPECT_NEAR(static_cast<double>(r.main_term()), 64.0 / 3.0, 1e-12);
    EXPECT_NEAR(r.dev_at(0), 22.0 * 3 / 64 - 1, 1e-15);
    EXPECT_NEAR(r.dev_at(1), 21.0 * 3 / 64 - 1, 1e-15);
    EXPECT_EQ(r.dev_numerator_sum, 0);

    const PrimeContext p7(7);
    const auto two = tk_experiment(2, same_factors(2, ResidueSet({1}, p7)), 1, 1, p7);
    for (u64 l = 0; l < 7; ++l) EXPECT_EQ(two.counts[l], l == 2 ? 1u : 0u);
}

TEST(TkExperiment, RejectsBadInputs) {
    const PrimeContext ctx(7);
    const ResidueSet a({1}, ctx), b({1, 2}, ctx);
    EXPECT_THROW(tk_experiment(1, same_factors(1, a), 2, 1, ctx), DomainError);
    EXPECT_THROW(tk_experiment(3, same_factors(2, a), 2, 1, ctx), DomainError);
    std::vector<TkFactor> mixed{{a, 0}, {b, 0}};
    EXPECT_THROW(tk_experiment(2, mixed, 2, 1, ctx), DomainError);
    EXPECT_THROW(tk_experiment(2, same_factors(2, a, 5), 3, 1, ctx), DomainError);  // {6,0,1}
}

TEST(TkExperiment, UnequalSetsBehindFlag) {
    const PrimeContext ctx(7);
    const ResidueSet a({1}, ctx), b({1, 2}, ctx);
    TkOptions opt;
    opt.allow_unequal_sets = true;
    const auto r = tk_experiment(2, {{a, 0}, {b, 0}}, 2, 1, ctx, opt);
    EXPECT_FALSE(r.equal_cardinalities);
    EXPECT_EQ(r.mass, 8u);
    EXPECT_EQ(r.counts.total(), 8u);
}

TEST(TkExperiment, NegativeSAllowsZeroInInterval) {
    const PrimeContext ctx(7);
    const auto r = tk_experiment(2, same_factors(2, ResidueSet({1}, ctx), 5), 3, -1, ctx);
    EXPECT_EQ(r.counts.total(), 9u);
}

TEST(TkExperiment, MatchesEnumerationWithDistinctShifts) {
    auto rng = make_rng({70});
    for (u64 p : {5ULL, 11ULL, 31ULL}) {
        const PrimeContext ctx(p);
        for (int t = 0; t < 5; ++t) {
            const unsigned k = 2 + static_cast<unsigned>(uniform_below(rng, 5));
            const u64 h = 1 + uniform_below(rng, 3);
            const u64 m = 1 + uniform_below(rng, std::min<u64>(p - 1, 4));
            std::vector<TkFactor> fs;
            std::vector<oracle::Factor> ofs;
            while (fs.size() < k) {
                const i64 L = static_cast<i64>(uniform_below(rng, p));
                if (shifted_interval(L, h, ctx).contains_zero()) continue;
                const auto set = random_subset(m, rng(), ctx);
                fs.push_back({set, L});
                ofs.push_back({set.elements(), oracle::interval(L, h, p)});
            }
            const auto r = tk_experiment(k, fs, h, 2, ctx);
            const auto expect = oracle::tk_meet_in_middle(ofs, 2, p);
            for (u64 l = 0; l < p; ++l) ASSERT_EQ(r.counts[l], expect[l]);
        }
    }
}

TEST(TkExperiment, DevSummaryConsistent) {
    const PrimeContext ctx(101);
    const auto r = tk_experiment(6, same_factors(6, random_subset(5, 9, ctx)), 5, 1, ctx);
    double sum = 0, mx = 0, mean = 0;
    for (double d : r.dev) {
        sum += d;
        mx = std::max(mx, std::abs(d));
        mean += std::abs(d);
    }
    EXPECT_NEAR(sum, 0.0, 1e-9);
    EXPECT_DOUBLE_EQ(r.max_abs_dev, mx);
    EXPECT_NEAR(r.mean_abs_dev, mean / 101, 1e-15);
    EXPECT_EQ(r.dev_numerator_sum, 0);
}

TEST(TkExperiment, DilationCovariance) {
    auto rng = make_rng({71});
    const PrimeContext ctx(101);
    for (int t = 0; t < 10; ++t) {
        const unsigned k = 2 + static_cast<unsigned>(uniform_below(rng, 5));
        const u64 c = 1 + uniform_below(rng, 100);
        std::vector<TkFactor> base, moved;
        for (unsigned i = 0; i < k; ++i) {
            const auto set = random_subset(4, rng(), ctx);
            base.push_back({set, 0});
            moved.push_back({dilate(set, c, ctx), 0});
        }
        const auto a = tk_experiment(k, base, 6, 1, ctx);
        const auto b = tk_experiment(k, moved, 6, 1, ctx);
        for (u64 l = 0; l < 101; ++l) ASSERT_EQ(b.counts[c * l % 101], a.counts[l]);
    }
}

TEST(TkHypothesis, Margins) {
    const auto h = tk_hypothesis(159, 159, 10007, 0.05);
    EXPECT_TRUE(h.all());
    EXPECT_NEAR(h.margin_6_5, 2.2 * std::log(159.0) / std::log(10007.0) - 1.05, 1e-12);
    const auto small = tk_hypothesis(10, 10, 10007, 0.05);
    EXPECT_FALSE(small.holds_24_11());
    EXPECT_FALSE(small.all());
}

TEST(TkSpectralCheck, AgreesWithExactCounts) {
    const PrimeContext ctx(101);
    std::vector<TkFactor> fs;
    for (u64 i = 0; i < 6; ++i) fs.push_back({random_subset(8, 100 + i, ctx), 0});
    const auto r = tk_experiment(6, fs, 8, 1, ctx);
    std::vector<u64> lams;
    for (u64 l = 0; l < 101; l += 5) lams.push_back(l);
    for (const auto& res : tk_spectral_check(r, lams, ctx)) {
        EXPECT_LT(res.residual, 1e-3) << "lambda=" << res.lambda;
        EXPECT_EQ(res.exact, r.counts[res.lambda]);
    }
}

TEST(TkSpectralCheck, ShiftedFactorsAndNegativeS) {
    const PrimeContext ctx(53);
    std::vector<TkFactor> fs;
    for (u64 i = 0; i < 3; ++i) fs.push_back({random_subset(5, i, ctx), static_cast<i64>(7 * i + 1)});
    const auto r = tk_experiment(3, fs, 6, -2, ctx);
    std::vector<u64> lams{0, 1, 17, 52};
    for (const auto& res : tk_spectral_check(r, lams, ctx)) EXPECT_LT(res.residual, 1e-6);
    const PrimeContext other(59);
    EXPECT_THROW(tk_spectral_check(r, lams, other), DomainError);
}

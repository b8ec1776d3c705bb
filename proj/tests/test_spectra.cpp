#include <gtest/gtest.h>

#include "fplab/energy.hpp"
#include "fplab/spectra.hpp"
#include "oracles.hpp"

using namespace fplab;

TEST(CompleteSumTable, Examples) {
    const PrimeContext p5(5);
    const auto t = complete_sum_table(initial_interval(4, p5), 1, p5);
    EXPECT_EQ(t[0], cplx(4.0, 0.0));
    EXPECT_NEAR(std::abs(t[1] - cplx(-1.0, 0.0)), 0.0, 1e-12);

    const PrimeContext p7(7);
    const auto w = complete_sum_table(initial_interval(6, p7), 2, p7);
    // sum over x != 0 of e(c x^2 / 7) = -1 + (c/7) i sqrt 7
    for (u64 c = 0; c < 7; ++c) {
        const double legendre = c == 0 ? 0.0 : (c == 1 || c == 2 || c == 4 ? 1.0 : -1.0);
        const cplx expect = c == 0 ? cplx(6.0, 0.0) : cplx(-1.0, legendre * std::sqrt(7.0));
        EXPECT_NEAR(std::abs(w[c] - expect), 0.0, 1e-12) << c;
        EXPECT_NEAR(std::abs(w[c] - oracle::complete_sum(oracle::interval(0, 6, 7), 2, c, 7)), 0.0, 1e-12);
    }
    EXPECT_THROW(complete_sum_table(shifted_interval(5, 3, p7), 1, p7), DomainError);
}

TEST(CompleteSumTable, AgreesWithDirectEvaluation) {
    auto rng = make_rng({50});
    for (u64 p : {3ULL, 31ULL, 257ULL, 1009ULL, 1999ULL}) {
        const PrimeContext ctx(p);
        for (int t = 0; t < 3; ++t) {
            const u64 h = 1 + uniform_below(rng, p - 1);
            const i64 L = static_cast<i64>(uniform_below(rng, p));
            const i64 s = static_cast<i64>(uniform_below(rng, 7)) - 3;
            const auto iv = shifted_interval(L, h, ctx);
            if (iv.contains_zero() || s == 0) continue;
            const auto table = complete_sum_table(iv, s, ctx);
            EXPECT_EQ(table[0], cplx(static_cast<double>(h), 0.0));
            const auto xs = oracle::interval(L, h, p);
            for (u64 c = 0; c < p; c += 1 + p / 97) {
                ASSERT_LT(std::abs(table[c] - oracle::complete_sum(xs, s, c, p)), 1e-6) << p << " " << c;
                ASSERT_LT(std::abs(table[c] - complete_sum_direct(iv, s, c, ctx)), 1e-6);
            }
        }
    }
}

TEST(CompleteSumTable, Parseval) {
    auto rng = make_rng({51});
    const PrimeContext ctx(1009);
    for (int t = 0; t < 10; ++t) {
        const u64 h = 1 + uniform_below(rng, 1008);
        const auto iv = shifted_interval(static_cast<i64>(uniform_below(rng, 1009)), h, ctx);
        if (iv.contains_zero()) continue;
        const i64 s = 1 + static_cast<i64>(uniform_below(rng, 3));
        const double lhs = spectrum_energy(complete_sum_table(iv, s, ctx));
        const double rhs = 1009.0 * static_cast<double>(count_vector_powers(iv, s, ctx).sum_of_squares());
        EXPECT_NEAR(lhs / rhs, 1.0, 1e-9);
    }
}

TEST(KloostermanSum, Examples) {
    const PrimeContext p5(5);
    const auto xs = initial_interval(4, p5);
    EXPECT_DOUBLE_EQ(kloosterman_frac_sum(0, ResidueSet({1, 2}, p5), xs, 1, p5).value, 8.0);
    EXPECT_NEAR(kloosterman_frac_sum(1, ResidueSet({1}, p5), xs, 1, p5).value, 1.0, 1e-12);
    EXPECT_NEAR(kloosterman_frac_sum(1, ResidueSet({1, 2}, p5), xs, 1, p5).value, 2.0, 1e-12);
    const auto r = kloosterman_frac_sum(3, ResidueSet({1, 2}, p5), xs, 1, p5, 2);
    EXPECT_DOUBLE_EQ(r.trivial_bound, 8.0);
    EXPECT_DOUBLE_EQ(r.envelope, kloosterman_envelope(4, 2, 5, 2));
}

TEST(KloostermanSum, EnvelopeFormula) {
    const double H = 10, M = 20, p = 101, l = 2;
    const double expect = H * M * std::pow(p / (M * std::pow(H, 2 * l / (l + 1))) + 1 / M, 1 / (2 * l));
    EXPECT_DOUBLE_EQ(kloosterman_envelope(10, 20, 101, 2), expect);
}

TEST(KloostermanSum, InvariantUnderReindexing) {
    const PrimeContext ctx(1009);
    auto rng = make_rng({52});
    for (int t = 0; t < 20; ++t) {
        const auto iv = initial_interval(1 + uniform_below(rng, 500), ctx);
        const auto set = random_subset(1 + uniform_below(rng, 200), rng(), ctx);
        const u64 a = 1 + uniform_below(rng, 1008);
        const u64 c = 1 + uniform_below(rng, 1008);
        const auto table = complete_sum_table(iv, 2, ctx);
        const double base = kloosterman_frac_sum(a, set, table, ctx).value;
        const auto moved = dilate(set, oracle::naive_inverse(c, 1009), ctx);
        EXPECT_NEAR(kloosterman_frac_sum(a * c % 1009, moved, table, ctx).value, base, 1e-9 * (1 + base));
    }
}

TEST(KloostermanSum, NeverExceedsTrivialBound) {
    const PrimeContext ctx(10007);
    auto rng = make_rng({53});
    for (int t = 0; t < 10; ++t) {
        const u64 h = 1 + uniform_below(rng, 2000);
        const auto set = random_subset(1 + uniform_below(rng, 2000), rng(), ctx);
        const auto r = kloosterman_frac_sum(1 + uniform_below(rng, 10006), set, initial_interval(h, ctx), 1, ctx, 3);
        EXPECT_LE(r.value, r.trivial_bound * (1 + 1e-12));
        EXPECT_GT(r.ratio(), 0.0);
    }
}

TEST(WeightedSum, ReducesToUnweighted) {
    const PrimeContext ctx(101);
    const auto iv = shifted_interval(3, 20, ctx);
    const auto set = random_subset(8, 9, ctx);
    const std::vector<cplx> alpha(8, 1.0), beta(20, 1.0);
    const u64 a = 17;
    const auto w = weighted_frac_sum(alpha, beta, a, set, iv, 1, ctx);
    cplx direct = 0;
    for (u64 m : set) direct += oracle::complete_sum(iv.elements(), 1, a * m % 101, 101);
    EXPECT_LT(std::abs(w.value - direct), 1e-9);
    EXPECT_LE(std::abs(w.value), kloosterman_frac_sum(a, set, iv, 1, ctx).value + 1e-9);
}

TEST(WeightedSum, DegenerateCases) {
    const PrimeContext ctx(101);
    const auto iv = initial_interval(10, ctx);
    const auto set = random_subset(5, 2, ctx);
    std::vector<cplx> alpha{1.0, cplx(0, 2), -1.0, 0.5, cplx(1, 1)};
    std::vector<cplx> beta(10);
    for (std::size_t i = 0; i < beta.size(); ++i) beta[i] = std::polar(1.0, 0.3 * static_cast<double>(i));
    cplx sa = 0, sb = 0;
    for (auto v : alpha) sa += v;
    for (auto v : beta) sb += v;
    EXPECT_LT(std::abs(weighted_frac_sum(alpha, beta, 0, set, iv, 2, ctx).value - sa * sb), 1e-9);
    const std::vector<cplx> zero(10, 0.0);
    EXPECT_LT(std::abs(weighted_frac_sum(alpha, zero, 5, set, iv, 2, ctx).value), 1e-12);
}

TEST(WeightedSum, MatchesDirectDoubleSum) {
    const PrimeContext ctx(211);
    const auto iv = shifted_interval(50, 30, ctx);
    const auto set = random_subset(12, 3, ctx);
    auto rng = make_rng({54});
    std::vector<cplx> alpha(12), beta(30);
    for (auto& v : alpha) v = cplx(static_cast<double>(uniform_below(rng, 100)) / 50.0 - 1, 0.25);
    for (auto& v : beta) v = std::polar(static_cast<double>(uniform_below(rng, 100)) / 100.0, 1.0 * uniform_below(rng, 7));
    const u64 a = 99;
    cplx direct = 0;
    const auto xs = iv.elements();
    std::size_t i = 0;
    for (u64 m : set) {
        for (std::size_t j = 0; j < xs.size(); ++j) {
            direct += alpha[i] * beta[j] * oracle::e_p(a * m % 211 * oracle::naive_recip_power(xs[j], 2, 211), 211);
        }
        ++i;
    }
    EXPECT_LT(std::abs(weighted_frac_sum(alpha, beta, a, set, iv, 2, ctx, 3).value - direct), 1e-9);
}

TEST(WeightedSum, RejectsLargeBeta) {
    const PrimeContext ctx(101);
    const auto iv = initial_interval(2, ctx);
    const auto set = ResidueSet({1}, ctx);
    const std::vector<cplx> alpha{1.0};
    EXPECT_THROW(weighted_frac_sum(alpha, std::vector<cplx>{1.0, 1.001}, 1, set, iv, 1, ctx), DomainError);
    EXPECT_NO_THROW(weighted_frac_sum(alpha, std::vector<cplx>{1.0, 1.0 + 1e-13}, 1, set, iv, 1, ctx));
    EXPECT_THROW(weighted_frac_sum(alpha, std::vector<cplx>{1.0}, 1, set, iv, 1, ctx), DomainError);
}

TEST(WeightedSum, AlphaNorm) {
    const std::vector<cplx> a{3.0, cplx(0, 4)};
    EXPECT_DOUBLE_EQ(alpha_norm(a, 1), 4.0);
    EXPECT_NEAR(alpha_norm(a, 2), 5.0, 1e-12);  // l/(l-1) = 2
    EXPECT_NEAR(alpha_norm(a, 3), std::pow(std::pow(3.0, 1.5) + std::pow(4.0, 1.5), 1 / 1.5), 1e-12);
}

TEST(CharSpectrum, Examples) {
    const PrimeContext ctx(101);
    const auto set = random_subset(10, 1, ctx);
    const auto s = char_spectrum(set, ctx);
    ASSERT_EQ(s.size(), 100u);
    EXPECT_EQ(s[0], cplx(10.0, 0.0));
    EXPECT_NEAR(spectrum_energy(s), 1000.0, 1e-9);

    const auto full = char_spectrum(initial_interval(100, ctx), ctx);
    EXPECT_EQ(full[0], cplx(100.0, 0.0));
    for (std::size_t t = 1; t < 100; ++t) EXPECT_EQ(full[t], cplx(0.0, 0.0));

    EXPECT_THROW(char_spectrum(std::vector<u64>{0, 1}, ctx), DomainError);
    EXPECT_THROW(char_spectrum(shifted_interval(99, 3, ctx), ctx), DomainError);
}

TEST(CharSpectrum, AgreesWithDirectEvaluation) {
    auto rng = make_rng({55});
    for (u64 p : {3ULL, 11ULL, 101ULL, 1009ULL, 1999ULL}) {
        const PrimeContext ctx(p);
        const auto set = random_subset(1 + uniform_below(rng, p - 1), rng(), ctx);
        const auto s = char_spectrum(set, ctx);
        for (u64 t = 0; t < p - 1; t += 1 + p / 101) {
            ASSERT_LT(std::abs(s[t] - oracle::char_sum(set.elements(), t, ctx.generator(), p)), 1e-6) << p << " " << t;
        }
    }
}

TEST(CharSpectrum, OrthogonalityGivesEnergy) {
    auto rng = make_rng({56});
    for (u64 p : {101ULL, 1009ULL, 9973ULL}) {
        const PrimeContext ctx(p);
        for (int t = 0; t < 3; ++t) {
            const u64 h = 1 + uniform_below(rng, p / 3);
            const auto set = random_subset(1 + uniform_below(rng, p / 3), rng(), ctx);
            const double via = energy_via_characters(char_spectrum(initial_interval(h, ctx), ctx), char_spectrum(set, ctx));
            const double exact = static_cast<double>(energy_J(initial_interval(h, ctx), set, ctx));
            EXPECT_NEAR(via / exact, 1.0, 1e-6) << p;
        }
    }
}

TEST(Burgess, Examples) {
    const PrimeContext ctx(101);
    EXPECT_EQ(burgess_ratio(100, ctx), 0.0);
    EXPECT_NEAR(burgess_ratio(1, ctx), std::pow(101.0, -3.0 / 16.0), 1e-12);
}

TEST(Burgess, MatchesDirectMaximum) {
    const PrimeContext ctx(101);
    const auto ks = oracle::interval(0, 10, 101);
    double mx = 0;
    for (u64 t = 1; t < 100; ++t) mx = std::max(mx, std::abs(oracle::char_sum(ks, t, ctx.generator(), 101)));
    EXPECT_NEAR(burgess_ratio(10, ctx), mx / (std::sqrt(10.0) * std::pow(101.0, 3.0 / 16.0)), 1e-9);
}

TEST(Transform, RoundTripAndBasics) {
    auto rng = make_rng({57});
    for (std::size_t n : {1u, 2u, 7u, 31u, 64u, 101u, 1009u}) {
        std::vector<cplx> u(n);
        for (auto& v : u) v = static_cast<double>(uniform_below(rng, 2));
        const auto f = length_p_transform(u);
        cplx sum = 0;
        for (auto v : u) sum += v;
        ASSERT_LT(std::abs(f[0] - sum), 1e-9);
        std::vector<cplx> conj(n);
        for (std::size_t i = 0; i < n; ++i) conj[i] = std::conj(f[i]);
        const auto back = dft(conj, +1);
        for (std::size_t i = 0; i < n; ++i) {
            ASSERT_LT(std::abs(std::conj(back[i]) - static_cast<double>(n) * u[i]), 1e-6) << n << " " << i;
        }
    }
    std::vector<cplx> delta(101, 0.0);
    delta[0] = 1.0;
    for (auto v : length_p_transform(delta)) EXPECT_LT(std::abs(v - cplx(1.0, 0.0)), 1e-12);
}

TEST(Transform, BluesteinMatchesDirect) {
    auto rng = make_rng({58});
    for (std::size_t n : {33u, 97u, 250u, 1000u}) {
        std::vector<cplx> x(n);
        for (auto& v : x) v = cplx(static_cast<double>(uniform_below(rng, 9)), static_cast<double>(uniform_below(rng, 9)));
        for (int sign : {+1, -1}) {
            const auto a = dft_direct(x, sign);
            const auto b = dft_bluestein(x, sign);
            for (std::size_t i = 0; i < n; ++i) ASSERT_LT(std::abs(a[i] - b[i]), 1e-7) << n << " " << i;
        }
    }
}

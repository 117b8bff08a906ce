#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <random>

#include "cesaro/binomial.hpp"
#include "cesaro/cesaro_scan.hpp"
#include "cesaro/errors.hpp"
#include "cesaro/pushforward.hpp"
#include "reference.hpp"

using namespace cesaro;
using namespace cesaro::testing;

namespace {

/// Deviation of P((Phi^n x)_0 = 1) from 1/2 under i.i.d. Bernoulli(0.7): the
/// window is a sum of 2^popcount(n) independent bits mod 2.
double bernoulli_deviation(std::uint64_t n) {
    const int terms = 1 << std::popcount(n);
    return -0.5 * std::pow(-0.4, terms);
}

std::vector<MarkovMeasure> reference_measures() {
    return {bernoulli07(), sticky_full(), two_block_measure(), haar_measure(two_block())};
}

}  // namespace

TEST(PhiRow, Examples) {
    EXPECT_EQ(phi_row(0, GroupSpec(2, {1})).coeffs, (std::vector<std::uint64_t>{1}));
    EXPECT_EQ(phi_row(2, GroupSpec(2, {1})).coeffs, (std::vector<std::uint64_t>{1, 0, 1}));
    EXPECT_EQ(phi_row(4, GroupSpec(2, {2})).coeffs, (std::vector<std::uint64_t>{1, 0, 2, 0, 1}));
    const GroupSpec z9(3, {2, 1});
    for (std::uint64_t n = 0; n < 60; ++n) {
        const auto row = phi_row(n, z9);
        ASSERT_EQ(row.coeffs.size(), n + 1);
        EXPECT_EQ(row.coeffs.front(), 1u);
        EXPECT_EQ(row.coeffs.back(), 1u);
        for (std::uint64_t k = 0; k <= n; ++k)
            EXPECT_EQ(row.coeffs[k], binom_mod_exact(n, static_cast<std::int64_t>(k), 3, 2));
    }
}

TEST(PhiRow, WindowIsIteratedAutomaton) {
    const GroupSpec spec(3, {2});
    const GroupTable t(spec);
    std::mt19937_64 rng(1);
    for (std::uint64_t n = 0; n < 12; ++n) {
        std::vector<Symbol> x(n + 5);
        for (auto& v : x) v = static_cast<Symbol>(rng() % 9);
        std::vector<Symbol> y = x;
        for (std::uint64_t it = 0; it < n; ++it)
            for (std::size_t i = 0; i + 1 < y.size(); ++i) y[i] = t.add(y[i], y[i + 1]);
        EXPECT_EQ(apply_phi_window(phi_row(n, spec), t, x, 1, 4), Word(y.begin() + 1, y.begin() + 5));
    }
}

TEST(ExactMarginal, IdentityIsMeasureMarginal) {
    for (const auto& mu : reference_measures())
        for (unsigned m = 1; m <= 3; ++m) {
            const auto a = exact_marginal(mu, 0, m);
            const auto b = measure_marginal(mu, m);
            EXPECT_LE(tv_distance(a, b), 1e-15);
            EXPECT_LE(tv_distance(brute_marginal(mu, 0, m), b), 1e-15);
        }
}

TEST(ExactMarginal, BernoulliTwoTermValue) {
    const auto mu = bernoulli07();
    EXPECT_NEAR(exact_marginal(mu, 1, 1)[0], 0.58, 1e-14);
    for (unsigned t = 0; t < 9; ++t) EXPECT_NEAR(exact_marginal(mu, std::uint64_t{1} << t, 1)[0], 0.58, 1e-14) << t;
}

TEST(ExactMarginal, BernoulliClosedForm) {
    const auto mu = bernoulli07();
    for (std::uint64_t n = 0; n < 300; ++n) {
        const auto d = exact_marginal(mu, n, 1);
        EXPECT_NEAR(d[1] - 0.5, n == 0 ? 0.2 : bernoulli_deviation(n), 1e-13) << n;
    }
}

TEST(ExactMarginal, SparseRowsMatchTwoPointLaw) {
    // With p = 2, s = 1 and n = 2^t, (Phi^n x)_0 = x_0 + x_n.
    const auto mu = sticky_full();
    Eigen::MatrixXd Pn = mu.transition();
    for (unsigned t = 0; t < 8; ++t) {
        const std::uint64_t n = std::uint64_t{1} << t;
        if (t > 0) Pn = Pn * Pn;
        const double same = mu.pi(0) * Pn(0, 0) + mu.pi(1) * Pn(1, 1);
        const auto d = exact_marginal(mu, n, 1);
        EXPECT_NEAR(d[0], same, 1e-13) << n;
    }
}

TEST(ExactMarginal, OracleEquivalence) {
    for (const auto& mu : reference_measures()) {
        const std::size_t k = mu.shift().order();
        for (unsigned m = 1; m <= 3; ++m)
            for (std::uint64_t n = 0; std::pow(double(k), double(n + m)) <= 2e7 && n + m <= 14; ++n) {
                const auto e = exact_marginal(mu, n, m);
                const auto b = brute_marginal(mu, n, m);
                EXPECT_LE(tv_distance(e, b), 1e-12) << "n=" << n << " m=" << m;
            }
    }
}

TEST(ExactMarginal, RationalOracle) {
    for (const auto& mu : {sticky_full(), two_block_measure()})
        for (unsigned m = 1; m <= 2; ++m)
            for (std::uint64_t n = 0; n <= 6; ++n) {
                const auto q = brute_marginal_rational(mu, n, m);
                const auto e = exact_marginal(mu, n, m);
                boost::multiprecision::cpp_rational total = 0;
                for (std::size_t c = 0; c < e.size(); ++c) {
                    EXPECT_NEAR(e[c], q[c].convert_to<double>(), 1e-14);
                    total += q[c];
                }
                // Rounded inputs still sum to exactly one only up to double error.
                EXPECT_NEAR(total.convert_to<double>(), 1.0, 1e-14);
            }
}

TEST(ExactMarginal, NormalizedAndSupportedOnWords) {
    for (const auto& mu : reference_measures())
        for (unsigned m = 1; m <= 3; ++m) {
            const auto nu = haar_marginal(mu.shift(), m);
            for (std::uint64_t n : {0u, 1u, 5u, 17u, 40u}) {
                const auto d = exact_marginal(mu, n, m);
                EXPECT_NEAR(d.total(), 1.0, 1e-12);
                for (std::size_t c = 0; c < d.size(); ++c)
                    if (nu[c] == 0.0) EXPECT_EQ(d[c], 0.0);
            }
        }
}

TEST(BruteMarginal, HaarTwoBlockIsUniform) {
    const auto nu = haar_measure(two_block());
    const auto d = brute_marginal(nu, 3, 2);
    const auto want = haar_marginal(nu.shift(), 2);
    for (std::size_t c = 0; c < d.size(); ++c) EXPECT_NEAR(d[c], want[c], 1e-15);
}

TEST(Marginals, CapsAreResourceErrors) {
    const auto mu = two_block_measure();
    Caps caps;
    caps.work = 1000;
    caps.brute = 1000;
    for (auto f : {+[](const MarkovMeasure& m, const Caps& c) { exact_marginal(m, 40, 2, c); },
                   +[](const MarkovMeasure& m, const Caps& c) { brute_marginal(m, 12, 2, c); }}) {
        try {
            f(mu, caps);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::resource);
        }
    }
}

TEST(MonteCarlo, PointMassDeterminismAndAccuracy) {
    const auto s = build_regen(two_block_measure());
    const auto one = mc_marginal(s, 5, 2, 1);
    std::size_t nonzero = 0;
    for (double v : one.cells()) nonzero += v != 0.0;
    EXPECT_EQ(nonzero, 1u);
    EXPECT_DOUBLE_EQ(one.total(), 1.0);

    const auto a = mc_marginal(s, 9, 2, 5000);
    const auto b = mc_marginal(s, 9, 2, 5000);
    EXPECT_EQ(a.cells(), b.cells());

    const std::size_t trials = 40000;
    for (std::uint64_t n : {1u, 6u, 13u}) {
        const auto mc = mc_marginal(s, n, 2, trials, {.seed = n});
        const auto ex = exact_marginal(s.measure(), n, 2);
        EXPECT_LE(tv_distance(mc, ex), 4.0 * 16 / std::sqrt(double(trials)));
        EXPECT_NEAR(mc.total(), 1.0, 1e-9);
    }
    EXPECT_THROW(mc_marginal(s, 1, 1, 0), Error);
}

TEST(MonteCarlo, ShiftInvariance) {
    for (const auto& mu : {sticky_full(), two_block_measure()}) {
        const auto s = build_regen(mu);
        const std::size_t trials = 50000;
        const auto base = mc_marginal(s, 6, 2, trials, {.seed = 3, .first_stream = 0, .offset = 0});
        for (std::size_t i : {1u, 2u}) {
            const auto other = mc_marginal(s, 6, 2, trials, {.seed = 3, .first_stream = i * trials, .offset = i});
            for (std::size_t c = 0; c < base.size(); ++c) {
                const double p = 0.5 * (base[c] + other[c]);
                const double se = std::sqrt(std::max(p * (1 - p), 1e-12) * 2.0 / trials);
                EXPECT_LE(std::abs(base[c] - other[c]), 4 * se) << "i=" << i << " cell " << c;
            }
        }
    }
}

TEST(SubsequenceTest, ParseAndMembership) {
    for (const std::string text : {"all", "pa:3", "m0:2", "res:5,3", "mj:1,2"})
        EXPECT_EQ(Subsequence::parse(text).tag(), text);
    for (const std::string bad : {"", "pa", "pa:x", "res:1", "foo:1", "res:1,x"}) {
        try {
            Subsequence::parse(bad);
            FAIL() << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::domain);
        }
    }
    const auto res = Subsequence::parse("res:3,2");
    EXPECT_TRUE(res.contains(7, 2));
    EXPECT_FALSE(res.contains(6, 2));
    const auto pa = Subsequence::parse("pa:3");
    EXPECT_TRUE(pa.contains(0, 2));
    EXPECT_TRUE(pa.contains(16, 2));
    EXPECT_FALSE(pa.contains(12, 2));
    const auto mj = Subsequence::parse("mj:1,3");
    EXPECT_EQ(mj.contains(8 * 255 + 1, 2), in_m0(8 * 255, 3, 2));
    EXPECT_FALSE(mj.contains(0, 2));
}

TEST(CesaroScan, HaarIsFixed) {
    for (const auto& shift : {full_shift(), two_block()}) {
        const auto nu = haar_measure(shift);
        for (const std::string sel : {"all", "pa:2", "m0:2", "res:1,2"})
            for (unsigned m = 1; m <= 2; ++m) {
                const auto rep = cesaro_scan(nu, m, 200, Subsequence::parse(sel));
                for (const auto& e : rep.per_n) {
                    EXPECT_LE(e.tv_n, 1e-12);
                    EXPECT_LE(e.cesaro_tv, 1e-12);
                }
            }
    }
}

TEST(CesaroScan, BernoulliClosedFormAndTrend) {
    const auto mu = bernoulli07();
    const auto rep = cesaro_scan(mu, 1, 512, Subsequence{});
    ASSERT_EQ(rep.per_n.size(), 512u);
    double sum = 0.0;
    for (const auto& e : rep.per_n) {
        const double dev = e.n == 0 ? 0.2 : bernoulli_deviation(e.n);
        sum += dev;
        EXPECT_NEAR(e.tv_n, std::abs(dev), 1e-13);
        EXPECT_NEAR(e.cesaro_tv, std::abs(sum) / double(e.n + 1), 1e-13);
        EXPECT_GE(e.cesaro_tv, 0.0);
        EXPECT_LE(e.cesaro_tv, 1.0);
    }
    EXPECT_LT(rep.final_tv(), rep.per_n[31].cesaro_tv);
    EXPECT_NEAR(rep.mean.total(), 1.0, 1e-9);
}

TEST(CesaroScan, SingleAndEmptySubsequences) {
    const auto mu = bernoulli07();
    const auto rep = cesaro_scan(mu, 1, 8, Subsequence::parse("pa:3"));
    ASSERT_EQ(rep.per_n.size(), 1u);
    EXPECT_EQ(rep.per_n[0].n, 0u);
    EXPECT_NEAR(rep.final_tv(), 0.2, 1e-15);
    const auto none = cesaro_scan(mu, 1, 8, Subsequence::parse("m0:3"));
    EXPECT_TRUE(none.empty());
    EXPECT_EQ(none.final_tv(), 0.0);
}

TEST(CesaroScan, ExactRefusesBeyondCap) {
    CesaroOptions opts;
    opts.caps.work = 500;
    try {
        cesaro_scan(two_block_measure(), 2, 64, Subsequence{}, opts);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::resource);
    }
}

TEST(CesaroScan, MonteCarloTracksExact) {
    const auto mu = two_block_measure();
    CesaroOptions opts;
    opts.engine = Engine::mc;
    opts.mc_trials = 20000;
    const auto mc = cesaro_scan(mu, 1, 16, Subsequence{}, opts);
    const auto ex = cesaro_scan(mu, 1, 16, Subsequence{});
    ASSERT_EQ(mc.per_n.size(), ex.per_n.size());
    EXPECT_LE(tv_distance(mc.mean, ex.mean), 4.0 * 4 / std::sqrt(16.0 * 20000));
}

TEST(ResidueDecompositionTest, AverageEqualsAllWhenAligned) {
    for (const auto& mu : {bernoulli07(), two_block_measure()})
        for (std::size_t a : {1u, 2u, 3u}) {
            const auto d = residue_decomposition(mu, 2, 128, a);
            EXPECT_EQ(d.classes.size(), std::size_t{1} << a);
            EXPECT_LE(d.gap, 1e-12);
            EXPECT_NEAR(d.average.total(), 1.0, 1e-12);
        }
}

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cesaro/errors.hpp"
#include "cesaro/regen.hpp"
#include "cesaro/renewal.hpp"
#include "cesaro/verification.hpp"
#include "reference.hpp"

using namespace cesaro;
using namespace cesaro::testing;

TEST(BuildRegen, BernoulliResidual) {
    const auto s = build_regen(bernoulli07(), 0.2);
    EXPECT_NEAR(s.Q()(0, 0), 0.25, 1e-15);
    EXPECT_NEAR(s.Q()(0, 1), 0.75, 1e-15);
    EXPECT_DOUBLE_EQ(s.breakpoints(0).back(), 1.0);
}

TEST(BuildRegen, HaarResidualIsHaar) {
    const auto nu = haar_measure(two_block());
    for (double alpha : {0.1, 0.25, 0.49}) {
        const auto s = build_regen(nu, alpha);
        EXPECT_LE((s.Q() - nu.transition()).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(BuildRegen, SplittingIdentity) {
    for (const auto& mu : {bernoulli07(), sticky_full(), two_block_measure()}) {
        const auto& shift = mu.shift();
        const auto s = build_regen(mu);
        EXPECT_DOUBLE_EQ(s.alpha(), alpha_limit(mu) / 2);
        for (Symbol g = 0; g < shift.order(); ++g) {
            EXPECT_NEAR(s.Q().row(g).sum(), 1.0, 1e-12);
            for (Symbol h = 0; h < shift.order(); ++h) {
                const double m = shift.allowed(g, h) ? 1.0 : 0.0;
                EXPECT_NEAR(s.alpha() / shift.fsize() * m + (1 - s.alpha()) * s.Q()(g, h), mu.P(g, h), 1e-12);
                EXPECT_GE(s.Q()(g, h), 0.0);
            }
        }
    }
}

TEST(BuildRegen, AlphaOutOfRange) {
    const auto mu = bernoulli07();
    for (double alpha : {0.0, -0.1, 0.3, 0.31, 1.0}) {
        try {
            build_regen(mu, alpha);
            FAIL() << alpha;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::parameter);
        }
    }
    EXPECT_NO_THROW(build_regen(mu, 0.29));
}

TEST(StepH, Examples) {
    const auto blk = build_regen(two_block_measure(), 0.2);
    // g = (0,1), w = (0,1), f(g) = (1,0) -> (1,1)
    EXPECT_EQ(blk.step(1, true, 1, 0.3), 3u);
    EXPECT_EQ(blk.step(1, true, 1, 0.9), 3u);
    const auto full = build_regen(bernoulli07(), 0.2);
    EXPECT_EQ(full.step(0, false, 0, 0.0), 0u);
    EXPECT_EQ(full.step(1, false, 0, 0.2), 0u);
    EXPECT_EQ(full.step(1, false, 0, 0.3), 1u);
    EXPECT_EQ(full.step(1, false, 0, 1.0), 1u);
    for (Symbol g = 0; g < 2; ++g)
        for (Symbol w = 0; w < 2; ++w) EXPECT_EQ(full.step(g, true, w, 0.5), w);
}

TEST(StepH, Errors) {
    const auto blk = build_regen(two_block_measure());
    try {
        blk.step(0, true, 2, 0.5);  // (1,0) is not in F
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::domain);
    }
    EXPECT_THROW(blk.step(0, false, 0, 1.5), Error);
}

TEST(SamplePath, ForcedEverywhereFollowsCosets) {
    const auto s = build_regen(two_block_measure());
    SampleOptions opts;
    opts.forced_ones = IndexInterval{0, 99};
    const auto path = s.sample_path(100, 7, opts);
    const auto& shift = s.shift();
    Symbol prev = path.start;
    for (std::size_t n = 0; n < 100; ++n) {
        EXPECT_EQ(path.u[n], 1);
        EXPECT_EQ(path.x[n], shift.table().add(shift.section(prev), path.w[n]));
        prev = path.x[n];
    }
}

TEST(SamplePath, DeterministicAndForcingKeepsVariates) {
    const auto s = build_regen(two_block_measure());
    const auto a = s.sample_path(50, 11);
    const auto b = s.sample_path(50, 11);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.v, b.v);
    SampleOptions opts;
    opts.forced_ones = IndexInterval{10, 20};
    const auto c = s.sample_path(50, 11, opts);
    EXPECT_EQ(a.w, c.w);
    EXPECT_EQ(a.v, c.v);
    EXPECT_EQ(std::vector<Symbol>(a.x.begin(), a.x.begin() + 10), std::vector<Symbol>(c.x.begin(), c.x.begin() + 10));
    opts = {};
    opts.stream = 1;
    EXPECT_NE(a.v, s.sample_path(50, 11, opts).v);
    std::vector<Symbol> x;
    s.sample_symbols(50, 11, {}, x);
    EXPECT_EQ(x, a.x);
}

TEST(SamplePath, SingleSiteLawIsStationary) {
    for (const auto& mu : {sticky_full(), two_block_measure()}) {
        const auto s = build_regen(mu);
        const std::size_t trials = 100000;
        const std::size_t k = mu.shift().order();
        std::vector<double> counts(k, 0.0);
        std::vector<Symbol> x;
        for (std::size_t t = 0; t < trials; ++t) {
            SampleOptions opts;
            opts.stream = t;
            s.sample_symbols(6, 2026, opts, x);
            counts[x[5]] += 1;
        }
        for (Symbol g = 0; g < k; ++g) {
            const double p = mu.pi(g);
            EXPECT_NEAR(counts[g] / trials, p, 3 * std::sqrt(p * (1 - p) / trials)) << g;
        }
    }
}

TEST(SamplePath, TransitionFrequencies) {
    for (const auto& mu : {sticky_full(), two_block_measure()}) {
        const auto s = build_regen(mu);
        std::vector<Symbol> x;
        s.sample_symbols(200000, 5, {}, x);
        const std::size_t k = mu.shift().order();
        std::vector<double> pair(k * k, 0.0), from(k, 0.0);
        for (std::size_t i = 1; i < x.size(); ++i) {
            pair[x[i - 1] * k + x[i]] += 1;
            from[x[i - 1]] += 1;
        }
        for (Symbol g = 0; g < k; ++g)
            for (Symbol h = 0; h < k; ++h) {
                const double p = mu.P(g, h);
                const double freq = pair[g * k + h] / from[g];
                if (p == 0.0) {
                    EXPECT_EQ(freq, 0.0);
                } else {
                    EXPECT_NEAR(freq, p, 3 * std::sqrt(p * (1 - p) / from[g]));
                }
            }
    }
}

TEST(SamplePath, ChiSquareAgainstExactLaw) {
    for (const auto& mu : {bernoulli07(), sticky_full(), two_block_measure()}) {
        const auto s = build_regen(mu);
        const auto rep = check_sampler_law(s, 3, 100000, 17);
        EXPECT_TRUE(rep.support_ok);
        EXPECT_TRUE(rep.pass) << "p = " << rep.p_value;
        const auto fixed = check_sampler_law(s, 3, 100000, 19, Symbol{1});
        EXPECT_TRUE(fixed.pass) << "p = " << fixed.p_value;
    }
}

TEST(Renewal, Examples) {
    const std::vector<std::uint8_t> ones(6, 1);
    EXPECT_EQ(renewal_times(ones, 1).times, (std::vector<std::size_t>{0, 1, 3}));
    const std::vector<std::uint8_t> zeros(10, 0);
    EXPECT_EQ(renewal_times(zeros, 2).times, (std::vector<std::size_t>{0}));
    const std::vector<std::uint8_t> alt{0, 1, 0, 1};
    EXPECT_EQ(renewal_times(alt, 0).times, (std::vector<std::size_t>{0, 1, 3}));
}

TEST(Renewal, MatchesDefinitionOnRandomSequences) {
    // Direct scan of the recursion against the run-length implementation.
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t len = 1 + rng() % 60;
        const std::size_t m = rng() % 4;
        std::vector<std::uint8_t> u(len);
        for (auto& b : u) b = (rng() % 3) != 0;
        std::vector<std::size_t> want{0};
        std::size_t from = 1;
        for (std::size_t i = from; i + m < len; ++i) {
            bool block = true;
            for (std::size_t j = i; j <= i + m; ++j) block = block && u[j];
            if (block && i >= from) {
                want.push_back(i);
                from = i + m + 1;
                i = from - 1;
            }
        }
        EXPECT_EQ(renewal_times(u, m).times, want);
    }
}

TEST(Renewal, SeparatedSets) {
    const std::vector<std::size_t> a{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    EXPECT_EQ(m_separated(a, 2), (std::vector<std::size_t>{0, 3, 6, 9}));
    EXPECT_EQ(m_separated(std::vector<std::size_t>{5}, 3), (std::vector<std::size_t>{5}));
    EXPECT_EQ(m_separated(std::vector<std::size_t>{0, 1}, 1), (std::vector<std::size_t>{0}));
    EXPECT_TRUE(is_m_separated(m_separated(a, 3), 3));
    EXPECT_FALSE(is_m_separated(a, 1));
}

TEST(Renewal, Delta) {
    EXPECT_NEAR(delta_bound(0.2, 2), 0.0064, 1e-15);
    EXPECT_NEAR(delta_bound(0.5, 0), 0.25, 1e-15);
    for (std::size_t m = 0; m < 20; ++m) EXPECT_LT(delta_bound(0.3, m + 1), delta_bound(0.3, m));
    EXPECT_THROW(delta_bound(1.0, 1), Error);
}

TEST(Renewal, HitBoundAndPerIndexRate) {
    const double alpha = 0.3;
    for (std::size_t m : {0u, 1u, 2u}) {
        for (const std::vector<std::size_t>& a :
             {std::vector<std::size_t>{5}, std::vector<std::size_t>{1, 4, 9, 20}, m_separated(std::vector<std::size_t>{
                                                                                                 3, 4, 5, 6, 7, 8, 9, 10},
                                                                                             m)}) {
            if (!is_m_separated(a, m)) continue;
            const auto rep = check_renewal_hits(alpha, m, a, 100000, 23);
            EXPECT_TRUE(rep.pass) << rep.empirical << " vs " << rep.bound;
            if (a.size() == 1) EXPECT_NEAR(rep.bound, delta_bound(alpha, m), 1e-15);
        }
    }
    EXPECT_THROW(check_renewal_hits(alpha, 1, std::vector<std::size_t>{1, 2}, 10, 1), Error);
}

TEST(Renewal, GeometricTail) {
    for (std::size_t m : {0u, 1u, 2u}) {
        const auto samples = first_renewal_samples(0.5, m, 400, 20000, 29);
        const double beta = geometric_tail_rate(samples);
        EXPECT_LT(beta, 1.0);
        const double n = static_cast<double>(samples.size());
        for (std::size_t t = 1; t <= 400; ++t) {
            const auto over = std::count_if(samples.begin(), samples.end(), [&](std::size_t x) { return x > t; });
            EXPECT_LE(over / n, std::pow(beta, static_cast<double>(t)) * (1 + 1e-12));
        }
    }
    EXPECT_EQ(geometric_tail_rate(std::vector<std::size_t>{}), 1.0);
}

TEST(Renewal, StatsWaits) {
    std::vector<std::uint8_t> u(40, 0);
    for (std::size_t i : {2u, 3u, 7u, 8u, 9u, 15u, 16u}) u[i] = 1;
    const auto st = renewal_times(u, 1);
    EXPECT_EQ(st.times, (std::vector<std::size_t>{0, 2, 7, 15}));
    EXPECT_EQ(st.waits(), (std::vector<std::size_t>{2, 4, 7}));
    const std::vector<std::size_t> a{3, 7, 15, 20};
    EXPECT_EQ(renewal_hits(st, a), (std::vector<std::size_t>{7, 15}));
}

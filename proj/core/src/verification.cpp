#include "cesaro/verification.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "cesaro/binomial.hpp"
#include "cesaro/errors.hpp"
#include "cesaro/measure.hpp"
#include "cesaro/pushforward.hpp"

namespace cesaro {

namespace {

/// Tallies words of length l, optionally split by a side statistic symbol.
class UniformTally {
public:
    UniformTally(const SubgroupShift& shift, unsigned length, bool split)
        : shift_(shift), table_(shift.order(), length), split_(split) {
        counts_.assign(table_.size(), 0);
        if (split_) side_.assign(shift.order() * table_.size(), 0);
    }

    void add(std::span<const Symbol> word, Symbol side) {
        const auto code = table_.encode(word);
        ++counts_[code];
        ++trials_;
        if (split_) ++side_[side * table_.size() + code];
    }

    UniformityReport report(unsigned length) const {
        UniformityReport rep;
        rep.trials = trials_;
        rep.length = length;
        rep.gamma = shift_.gamma(length);
        if (trials_ == 0) return rep;

        std::vector<std::uint8_t> allowed(table_.size(), 0);
        for_each_word(shift_, length, [&](const Word& w) { allowed[table_.encode(w)] = 1; });
        rep.cells = static_cast<std::size_t>(std::count(allowed.begin(), allowed.end(), 1));

        CylinderDistribution freq(shift_.order(), length);
        const double t = static_cast<double>(trials_);
        for (std::size_t c = 0; c < counts_.size(); ++c) {
            freq[c] = static_cast<double>(counts_[c]) / t;
            if (allowed[c])
                rep.max_deviation = std::max(rep.max_deviation, std::abs(freq[c] - rep.gamma));
            else
                rep.off_support += freq[c];
        }
        rep.standard_error = std::sqrt(rep.gamma * (1.0 - rep.gamma) / t);
        rep.max_z = rep.max_deviation / rep.standard_error;

        if (split_) {
            for (Symbol g = 0; g < shift_.order(); ++g) {
                std::uint64_t total = 0;
                for (std::size_t c = 0; c < table_.size(); ++c) total += side_[g * table_.size() + c];
                if (total == 0) continue;
                const double se = std::sqrt(rep.gamma * (1.0 - rep.gamma) / static_cast<double>(total));
                for (std::size_t c = 0; c < table_.size(); ++c) {
                    if (!allowed[c]) continue;
                    const double f = static_cast<double>(side_[g * table_.size() + c]) / static_cast<double>(total);
                    rep.conditional_max_z = std::max(rep.conditional_max_z, std::abs(f - rep.gamma) / se);
                }
            }
        }
        rep.frequencies = std::move(freq);
        rep.pass = rep.max_z <= kUniformityZ && rep.off_support == 0.0 && rep.conditional_max_z <= kUniformityZ;
        return rep;
    }

private:
    const SubgroupShift& shift_;
    CylinderDistribution table_;
    bool split_;
    std::vector<std::uint64_t> counts_;
    std::vector<std::uint64_t> side_;
    std::uint64_t trials_ = 0;
};

}  // namespace

UniformityReport check_forced_block(const RegenSampler& sampler, std::size_t k, std::size_t m, std::size_t trials,
                               std::uint64_t seed, bool two_sided) {
    const auto& shift = sampler.shift();
    const std::size_t r = shift.mixing_index();
    if (k < r) fail(ErrorKind::parameter, "forced-block check needs k >= r = " + std::to_string(r));
    const auto length = static_cast<unsigned>(m + 1);

    SampleOptions opts;
    opts.forced_ones = IndexInterval{k - r, two_sided ? k + m + r : k + m};
    // Two-sided runs also sample the first symbol after the forced block.
    const std::size_t path_len = two_sided ? k + m + r + 2 : k + m + 1;
    const std::size_t after = k + m + r + 1;

    UniformTally prefix(shift, length, true);
    UniformTally suffix(shift, length, two_sided);
    std::vector<Symbol> x;
    for (std::size_t t = 0; t < trials; ++t) {
        opts.stream = t;
        sampler.sample_symbols(path_len, seed, opts, x);
        const std::span<const Symbol> window(x.data() + k, m + 1);
        prefix.add(window, x[0]);
        if (two_sided) suffix.add(window, x[after]);
    }
    auto rep = prefix.report(length);
    rep.offset = k;
    if (two_sided && trials > 0) {
        const auto s = suffix.report(length);
        rep.conditional_max_z = std::max(rep.conditional_max_z, s.conditional_max_z);
        rep.pass = *rep.pass && rep.conditional_max_z <= kUniformityZ;
    }
    return rep;
}

UniformityReport check_isolated_block(const RegenSampler& sampler, std::uint64_t n, std::uint64_t k, std::size_t m,
                               std::size_t trials, std::uint64_t seed) {
    const auto& shift = sampler.shift();
    const std::uint64_t r = shift.mixing_index();
    if (n < 2 * r + 2 * m + 1) fail(ErrorKind::parameter, "isolated-block check needs n >= 2r+2m+1");
    if (k > n) fail(ErrorKind::parameter, "isolated-block check needs 0 <= k <= n");
    const auto iso = isolated_set(n, r + m, r + m, shift.spec().p(), shift.spec().s()).isolated;
    if (!std::binary_search(iso.begin(), iso.end(), k))
        fail(ErrorKind::precondition, "k = " + std::to_string(k) + " is not (r+m, r+m)-isolated in n = " + std::to_string(n));

    const std::size_t offset = k >= r ? 0 : static_cast<std::size_t>(r - k);
    SampleOptions opts;
    opts.forced_ones = IndexInterval{static_cast<std::size_t>(offset + k - r),
                                     offset + static_cast<std::size_t>(k + r + m)};
    const std::size_t path_len = offset + static_cast<std::size_t>(std::max<std::uint64_t>(n + m, k + r + m)) + 1;

    const auto row = phi_row(n, shift.spec());
    const auto length = static_cast<unsigned>(m + 1);
    UniformTally tally(shift, length, false);
    std::vector<Symbol> x;
    for (std::size_t t = 0; t < trials; ++t) {
        opts.stream = t;
        sampler.sample_symbols(path_len, seed, opts, x);
        const auto out = apply_phi_window(row, shift.table(), x, offset, m + 1);
        tally.add(out, 0);
    }
    auto rep = tally.report(length);
    rep.offset = offset;
    return rep;
}

HaarFixedReport check_haar_fixed(const SubgroupShift& shift, std::uint64_t n_max, unsigned m_max, const Caps& caps) {
    const auto nu = haar_measure(shift);
    HaarFixedReport rep{n_max, m_max, 0.0, 0, 1, true};
    for (unsigned m = 1; m <= m_max; ++m) {
        const auto target = haar_marginal(shift, m, caps);
        for (std::uint64_t n = 0; n <= n_max; ++n) {
            const double tv = tv_distance(exact_marginal(nu, n, m, caps), target);
            if (tv > rep.max_tv) {
                rep.max_tv = tv;
                rep.worst_n = n;
                rep.worst_m = m;
            }
        }
    }
    rep.pass = rep.max_tv <= kHaarFixedTolerance;
    return rep;
}

ChiSquareReport check_sampler_law(const RegenSampler& sampler, unsigned length, std::size_t trials,
                                  std::uint64_t seed, std::optional<Symbol> start, double significance) {
    const auto& mu = sampler.measure();
    const auto& shift = sampler.shift();
    if (trials == 0) fail(ErrorKind::parameter, "chi-square check needs trials >= 1");

    CylinderDistribution expected(shift.order(), length);
    for_each_word(shift, length, [&](const Word& w) {
        const double head = start ? mu.P(*start, w[0]) : mu.pi(w[0]);
        double p = head;
        for (std::size_t i = 1; i < w.size(); ++i) p *= mu.P(w[i - 1], w[i]);
        expected[expected.encode(w)] = p;
    });

    std::vector<std::uint64_t> counts(expected.size(), 0);
    SampleOptions opts;
    opts.start = start;
    std::vector<Symbol> x;
    for (std::size_t t = 0; t < trials; ++t) {
        opts.stream = t;
        sampler.sample_symbols(length, seed, opts, x);
        ++counts[expected.encode(x)];
    }

    ChiSquareReport rep;
    rep.trials = trials;
    const double n = static_cast<double>(trials);
    for (std::size_t c = 0; c < counts.size(); ++c) {
        const double e = expected[c] * n;
        if (e <= 0.0) {
            if (counts[c] > 0) rep.support_ok = false;
            continue;
        }
        ++rep.cells;
        const double d = static_cast<double>(counts[c]) - e;
        rep.statistic += d * d / e;
    }
    rep.dof = static_cast<double>(rep.cells) - 1.0;
    if (rep.dof >= 1.0) {
        boost::math::chi_squared dist(rep.dof);
        rep.p_value = boost::math::cdf(boost::math::complement(dist, rep.statistic));
    } else {
        rep.p_value = 1.0;
    }
    rep.pass = rep.support_ok && rep.p_value >= significance;
    return rep;
}

BoundChain bound_chain(std::uint64_t n, std::size_t a, std::uint64_t m_prime, std::uint32_t p, std::uint32_t s,
                         double delta) {
    if (n == 0) fail(ErrorKind::domain, "bound chain needs n >= 1");
    BoundChain b;
    b.n = n;
    b.a = a;
    b.m_prime = m_prime;
    const auto d = digit_profile(n, p);
    b.i = d.floor_log() / 2;
    b.in_m0 = in_m0(n, a, p);
    b.isolated = isolated_set(n, m_prime, m_prime, p, s).isolated.size();
    b.digit_bound = std::ldexp(1.0, static_cast<int>(d.xi(a + b.i))) - 1.0;
    b.C = 5.0 * std::log2(static_cast<double>(p));
    b.power_bound = std::pow(static_cast<double>(n), 1.0 / b.C) - 1.0;
    b.tv_bound = std::pow(1.0 - delta, b.power_bound);
    b.isolated_ok = static_cast<double>(b.isolated) >= b.digit_bound;
    // 2^xi >= 2^(log_p(n)/5) = n^(1/C); compare with a relative slack for the
    // rounding in n^(1/C) when xi sits exactly on log_p(n)/5.
    b.digits_ok = b.digit_bound + 1.0 >= (b.power_bound + 1.0) * (1.0 - 1e-12);
    return b;
}

}  // namespace cesaro

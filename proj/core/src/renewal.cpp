#include "cesaro/renewal.hpp"

#include <algorithm>
#include <cmath>

#include "cesaro/errors.hpp"
#include "cesaro/rng.hpp"

namespace cesaro {

std::vector<std::size_t> RenewalStats::waits() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < times.size(); ++i) out.push_back(i == 1 ? times[1] : times[i] - times[i - 1] - m);
    return out;
}

RenewalStats renewal_times(std::span<const std::uint8_t> u, std::size_t m) {
    RenewalStats stats;
    stats.m = m;
    stats.times.push_back(0);
    const std::size_t len = u.size();
    // run[i] = length of the all-ones run starting at i.
    std::vector<std::size_t> run(len + 1, 0);
    for (std::size_t i = len; i-- > 0;) run[i] = u[i] ? run[i + 1] + 1 : 0;

    std::size_t i = 1;
    while (i + m < len) {
        if (run[i] >= m + 1) {
            stats.times.push_back(i);
            i += m + 1;
        } else {
            ++i;
        }
    }
    const auto w = stats.waits();
    stats.beta = geometric_tail_rate(w);
    return stats;
}

std::vector<std::size_t> renewal_hits(const RenewalStats& stats, std::span<const std::size_t> a) {
    std::vector<std::size_t> out;
    for (auto n : a)
        if (std::binary_search(stats.times.begin(), stats.times.end(), n)) out.push_back(n);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::size_t> m_separated(std::span<const std::size_t> a, std::size_t m) {
    std::vector<std::size_t> sorted(a.begin(), a.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> out;
    for (auto x : sorted)
        if (out.empty() || x - out.back() >= m + 1) out.push_back(x);
    return out;
}

bool is_m_separated(std::span<const std::size_t> a, std::size_t m) {
    std::vector<std::size_t> sorted(a.begin(), a.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] - sorted[i - 1] < m + 1) return false;
    return true;
}

double delta_bound(double alpha, std::size_t m) {
    if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorKind::parameter, "delta_bound needs 0 < alpha < 1");
    return std::pow(alpha, static_cast<double>(m + 1)) * (1.0 - alpha);
}

double geometric_tail_rate(std::span<const std::size_t> samples) {
    if (samples.empty()) return 1.0;
    std::vector<std::size_t> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double beta = 0.0;
    // S(t) only changes at sample values, and S(t)^(1/t) is largest just
    // before a drop, i.e. at t = value - 1 for each distinct value.
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
        const std::size_t t_hi = sorted[i];  // S(t) for t in [prev, t_hi) is the fraction > t
        if (t_hi == 0) continue;
        const std::size_t t = t_hi - 1;
        if (t == 0) continue;
        const auto first_greater = std::upper_bound(sorted.begin(), sorted.end(), t);
        const double surv = static_cast<double>(sorted.end() - first_greater) / n;
        if (surv > 0.0) beta = std::max(beta, std::pow(surv, 1.0 / static_cast<double>(t)));
    }
    // S(t) for t >= 1 is also bounded at t = 1 when all samples exceed 1.
    const auto gt1 = std::upper_bound(sorted.begin(), sorted.end(), std::size_t{1});
    beta = std::max(beta, static_cast<double>(sorted.end() - gt1) / n);
    return beta;
}


namespace {

void draw_bernoulli(Stream& rng, double alpha, std::vector<std::uint8_t>& u) {
    for (auto& b : u) b = rng.uniform() < alpha ? 1 : 0;
}

}  // namespace

RenewalHitReport check_renewal_hits(double alpha, std::size_t m, std::span<const std::size_t> a, std::size_t trials,
                                    std::uint64_t seed) {
    if (a.empty()) fail(ErrorKind::parameter, "renewal hit check needs a nonempty set");
    if (!is_m_separated(a, m)) fail(ErrorKind::parameter, "renewal hit check needs an m-separated set");
    if (trials == 0) fail(ErrorKind::parameter, "renewal hit check needs trials >= 1");
    RenewalHitReport rep;
    rep.trials = trials;
    rep.set_size = a.size();
    rep.delta = delta_bound(alpha, m);
    rep.bound = 1.0 - std::pow(1.0 - rep.delta, static_cast<double>(a.size()));

    const std::size_t top = *std::max_element(a.begin(), a.end());
    std::vector<std::uint8_t> u(top + m + 1);
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        Stream rng(seed, t);
        draw_bernoulli(rng, alpha, u);
        const auto stats = renewal_times(u, m);
        hits += renewal_hits(stats, a).empty() ? 0 : 1;
    }
    rep.empirical = static_cast<double>(hits) / static_cast<double>(trials);
    rep.standard_error = std::sqrt(rep.bound * (1.0 - rep.bound) / static_cast<double>(trials));
    rep.pass = rep.empirical >= rep.bound - 3.0 * rep.standard_error;
    return rep;
}

std::vector<std::size_t> first_renewal_samples(double alpha, std::size_t m, std::size_t horizon, std::size_t trials,
                                               std::uint64_t seed) {
    std::vector<std::size_t> out;
    out.reserve(trials);
    std::vector<std::uint8_t> u(horizon + m + 1);
    for (std::size_t t = 0; t < trials; ++t) {
        Stream rng(seed, t);
        draw_bernoulli(rng, alpha, u);
        const auto stats = renewal_times(u, m);
        out.push_back(stats.times.size() > 1 && stats.times[1] <= horizon ? stats.times[1] : horizon + 1);
    }
    return out;
}

}  // namespace cesaro

#include "cesaro/regen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cesaro/errors.hpp"
#include "cesaro/rng.hpp"

namespace cesaro {

double alpha_limit(const MarkovMeasure& measure) {
    const auto& shift = measure.shift();
    double lo = std::numeric_limits<double>::infinity();
    for (Symbol g = 0; g < shift.order(); ++g)
        for (auto h : shift.followers(g)) lo = std::min(lo, measure.P(g, h));
    return lo;
}

RegenSampler build_regen(MarkovMeasure measure, std::optional<double> alpha) {
    const double limit = alpha_limit(measure);
    const double a = alpha.value_or(0.5 * limit);
    if (!(a > 0.0) || !(a < limit))
        fail(ErrorKind::parameter, "alpha must lie in (0, " + std::to_string(limit) + "), got " + std::to_string(a));

    RegenSampler s(std::move(measure));
    s.alpha_ = a;
    const auto& shift = s.shift();
    const auto n = static_cast<Eigen::Index>(shift.order());
    const double uniform = a / static_cast<double>(shift.fsize());

    s.Q_ = Eigen::MatrixXd::Zero(n, n);
    s.breakpoints_.resize(shift.order());
    for (Symbol g = 0; g < shift.order(); ++g) {
        double acc = 0.0;
        for (auto h : shift.followers(g)) {
            const double q = (s.measure_.P(g, h) - uniform) / (1.0 - a);
            if (q < 0.0) fail(ErrorKind::parameter, "alpha makes Q negative");
            s.Q_(g, h) = q;
            acc += q;
            s.breakpoints_[g].push_back(acc);
        }
        s.breakpoints_[g].back() = 1.0;
    }

    s.in_subgroup_.assign(shift.order(), 0);
    for (auto w : shift.follower_subgroup()) s.in_subgroup_[w] = 1;

    double acc = 0.0;
    for (Symbol g = 0; g < shift.order(); ++g) {
        acc += s.measure_.pi(g);
        s.pi_cdf_.push_back(acc);
    }
    s.pi_cdf_.back() = 1.0;
    return s;
}

Symbol RegenSampler::pick_residual(Symbol g, double v) const noexcept {
    const auto& bp = breakpoints_[g];
    const auto& fol = shift().followers(g);
    auto it = std::upper_bound(bp.begin(), bp.end(), v);
    if (it == bp.end()) {
        // v == 1: the last interval with positive length.
        std::size_t i = bp.size() - 1;
        while (i > 0 && Q_(g, fol[i]) <= 0.0) --i;
        return fol[i];
    }
    return fol[static_cast<std::size_t>(it - bp.begin())];
}

Symbol RegenSampler::draw_start(double uniform) const noexcept {
    auto it = std::upper_bound(pi_cdf_.begin(), pi_cdf_.end(), uniform);
    if (it == pi_cdf_.end()) --it;
    return static_cast<Symbol>(it - pi_cdf_.begin());
}

Symbol RegenSampler::step(Symbol g, bool u, Symbol w, double v) const {
    if (g >= shift().order()) fail(ErrorKind::domain, "symbol out of range");
    if (w >= shift().order() || !in_subgroup_[w]) fail(ErrorKind::domain, "w is not in the follower subgroup F");
    if (u) return shift().table().add(shift().section(g), w);
    if (!(v >= 0.0 && v <= 1.0)) fail(ErrorKind::domain, "v must lie in [0,1]");
    return pick_residual(g, v);
}

PathTrace RegenSampler::sample_path(std::size_t length, std::uint64_t seed, const SampleOptions& options) const {
    if (length == 0) fail(ErrorKind::domain, "sample_path needs a positive length");
    if (options.start && *options.start >= shift().order()) fail(ErrorKind::domain, "start symbol out of range");
    Stream rng(seed, options.stream);
    const auto& F = shift().follower_subgroup();
    const auto& table = shift().table();

    PathTrace t;
    const double u0 = rng.uniform();
    t.start = options.start.value_or(draw_start(u0));
    t.x.resize(length);
    t.u.resize(length);
    t.w.resize(length);
    t.v.resize(length);
    Symbol prev = t.start;
    for (std::size_t n = 0; n < length; ++n) {
        const bool forced = options.forced_ones && options.forced_ones->contains(n);
        const bool u = (rng.uniform() < alpha_) || forced;
        const Symbol w = F[rng.below(F.size())];
        const double v = rng.uniform();
        prev = u ? table.add(shift().section(prev), w) : pick_residual(prev, v);
        t.x[n] = prev;
        t.u[n] = u ? 1 : 0;
        t.w[n] = w;
        t.v[n] = v;
    }
    return t;
}

void RegenSampler::sample_symbols(std::size_t length, std::uint64_t seed, const SampleOptions& options,
                                  std::vector<Symbol>& x) const {
    Stream rng(seed, options.stream);
    const auto& F = shift().follower_subgroup();
    const auto& table = shift().table();
    const double u0 = rng.uniform();
    Symbol prev = options.start.value_or(draw_start(u0));
    x.resize(length);
    for (std::size_t n = 0; n < length; ++n) {
        const bool forced = options.forced_ones && options.forced_ones->contains(n);
        const bool u = (rng.uniform() < alpha_) || forced;
        const Symbol w = F[rng.below(F.size())];
        const double v = rng.uniform();
        prev = u ? table.add(shift().section(prev), w) : pick_residual(prev, v);
        x[n] = prev;
    }
}

}  // namespace cesaro

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "cesaro/measure.hpp"

namespace cesaro {

/// Inclusive index range [lo, hi].
struct IndexInterval {
    std::size_t lo = 0;
    std::size_t hi = 0;

    bool contains(std::size_t i) const noexcept { return lo <= i && i <= hi; }
};

/// One realization of the regenerative construction on indices 0..L-1.
/// start is x_{-1}; x[n] = H(x[n-1], u[n], w[n], v[n]).
struct PathTrace {
    Symbol start = 0;
    std::vector<Symbol> x;
    std::vector<std::uint8_t> u;
    std::vector<Symbol> w;
    std::vector<double> v;
};

struct SampleOptions {
    /// U_n is set to 1 on this range instead of being drawn as Bernoulli(alpha).
    std::optional<IndexInterval> forced_ones;
    /// Fixed x_{-1}; when absent x_{-1} ~ pi.
    std::optional<Symbol> start;
    /// Stream index within the seed; distinct paths use distinct streams.
    std::uint64_t stream = 0;
};

/// The alpha-splitting P = alpha * L + (1 - alpha) * Q driven by independent
/// U ~ Bernoulli(alpha), W ~ Uniform(F), V ~ Uniform[0,1].
///
/// Per stream the variates are consumed in a fixed order: one uniform for
/// x_{-1} (always consumed, even when the start is fixed), then for each
/// n = 0..L-1 the triple (U_n, W_n, V_n), each from one uniform. U_n is drawn
/// even where it is forced so that forcing never shifts the other variates.
class RegenSampler {
public:
    const MarkovMeasure& measure() const noexcept { return measure_; }
    const SubgroupShift& shift() const noexcept { return measure_.shift(); }
    double alpha() const noexcept { return alpha_; }
    const Eigen::MatrixXd& Q() const noexcept { return Q_; }
    /// Right endpoints of the consecutive intervals laid over [0,1] for the
    /// followers of g in canonical order; the last endpoint is 1.
    const std::vector<double>& breakpoints(Symbol g) const { return breakpoints_.at(g); }

    /// H(g, u, w, v). Throws ErrorKind::domain when w is not in F.
    Symbol step(Symbol g, bool u, Symbol w, double v) const;

    PathTrace sample_path(std::size_t length, std::uint64_t seed, const SampleOptions& options = {}) const;
    /// Same stream and recursion as sample_path, writing only x_0..x_{L-1}.
    void sample_symbols(std::size_t length, std::uint64_t seed, const SampleOptions& options,
                        std::vector<Symbol>& x) const;

    friend RegenSampler build_regen(MarkovMeasure measure, std::optional<double> alpha);

private:
    explicit RegenSampler(MarkovMeasure measure) : measure_(std::move(measure)) {}

    Symbol pick_residual(Symbol g, double v) const noexcept;
    Symbol draw_start(double uniform) const noexcept;

    MarkovMeasure measure_;
    double alpha_ = 0.0;
    Eigen::MatrixXd Q_;
    std::vector<std::vector<double>> breakpoints_;
    std::vector<std::uint8_t> in_subgroup_;
    std::vector<double> pi_cdf_;
};

/// Largest admissible alpha is exclusive: min{P(g,h) : M(g,h) = 1}.
double alpha_limit(const MarkovMeasure& measure);

/// Default alpha is half of alpha_limit.
RegenSampler build_regen(MarkovMeasure measure, std::optional<double> alpha = std::nullopt);

}  // namespace cesaro

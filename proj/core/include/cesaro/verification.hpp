#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cesaro/caps.hpp"
#include "cesaro/cylinder.hpp"
#include "cesaro/regen.hpp"

namespace cesaro {

/// Comparison of an empirical word law with the uniform value gamma on G_l.
struct UniformityReport {
    std::size_t trials = 0;
    unsigned length = 0;  // l = m + 1
    double gamma = 0.0;
    std::size_t cells = 0;      // |G_l|
    double max_deviation = 0.0;  // max over G_l of |freq - gamma|
    double standard_error = 0.0;  // sqrt(gamma (1 - gamma) / trials)
    double max_z = 0.0;
    double off_support = 0.0;  // empirical mass outside G_l
    /// Largest z-score of the same comparison conditioned on a side statistic
    /// (x_0, and for the two-sided variant also the symbol after the block).
    double conditional_max_z = 0.0;
    std::size_t offset = 0;  // window start actually tallied
    std::optional<CylinderDistribution> frequencies;
    std::optional<bool> pass;  // absent when trials == 0
};

inline constexpr double kUniformityZ = 4.0;

/// x_k^{k+m} under forced U on [k-r, k+m] (or [k-r, k+m+r] when two_sided).
/// Throws ErrorKind::parameter when k < r.
UniformityReport check_forced_block(const RegenSampler& sampler, std::size_t k, std::size_t m, std::size_t trials,
                               std::uint64_t seed, bool two_sided = false);

/// (Phi^n x)_i^{i+m} under forced U on [i+k-r, i+k+r+m]. The window start i is
/// 0 when k >= r and r - k otherwise, so the forced block never starts before
/// index 0. Requires n >= 2r+2m+1 (ErrorKind::parameter) and k to be
/// (r+m, r+m)-isolated in n (ErrorKind::precondition).
UniformityReport check_isolated_block(const RegenSampler& sampler, std::uint64_t n, std::uint64_t k, std::size_t m,
                               std::size_t trials, std::uint64_t seed);

struct HaarFixedReport {
    std::uint64_t n_max = 0;
    unsigned m_max = 0;
    double max_tv = 0.0;
    std::uint64_t worst_n = 0;
    unsigned worst_m = 0;
    bool pass = false;  // max_tv <= 1e-12
};

inline constexpr double kHaarFixedTolerance = 1e-12;

HaarFixedReport check_haar_fixed(const SubgroupShift& shift, std::uint64_t n_max, unsigned m_max, const Caps& caps = {});

/// Pearson chi-square of sampled x_0..x_{l-1} frequencies against the exact
/// law (mu, or mu_g when the start x_{-1} = g is fixed).
struct ChiSquareReport {
    std::size_t trials = 0;
    std::size_t cells = 0;
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 0.0;
    bool support_ok = true;
    bool pass = false;  // p_value >= significance and support_ok
};

ChiSquareReport check_sampler_law(const RegenSampler& sampler, unsigned length, std::size_t trials,
                                  std::uint64_t seed, std::optional<Symbol> start = std::nullopt,
                                  double significance = 1e-3);

/// The chain |A| >= 2^xi_{a+i}(n) - 1 >= n^(1/C) - 1 with C = 5 log2(p),
/// i = floor(log_p(n)/2) and A the (m', m')-isolated positions of n, plus the
/// resulting bound (1 - delta)^(n^(1/C) - 1) on the cylinder error.
struct BoundChain {
    std::uint64_t n = 0;
    std::size_t a = 0;
    std::size_t i = 0;
    std::uint64_t m_prime = 0;
    bool in_m0 = false;
    std::uint64_t isolated = 0;
    double digit_bound = 0.0;  // 2^xi_{a+i}(n) - 1
    double C = 0.0;
    double power_bound = 0.0;  // n^(1/C) - 1
    double tv_bound = 0.0;
    bool isolated_ok = false;  // isolated >= digit_bound
    bool digits_ok = false;    // digit_bound >= power_bound
};

BoundChain bound_chain(std::uint64_t n, std::size_t a, std::uint64_t m_prime, std::uint32_t p, std::uint32_t s,
                         double delta);

}  // namespace cesaro

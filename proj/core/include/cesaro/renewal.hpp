#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cesaro {

/// Renewal times of all-ones blocks of length m+1 in a finite U sequence.
///
/// times[0] = 0; times[1] is the first i > 0 with U_i..U_{i+m} all ones;
/// each later time is the first such i strictly after previous + m. Blocks
/// must fit inside the sequence. beta is the geometric-tail fit of the
/// waiting times (see geometric_tail_rate).
struct RenewalStats {
    std::size_t m = 0;
    std::vector<std::size_t> times;
    double beta = 1.0;

    /// Waiting times T_1 and T_{n+1} - T_n - m for n >= 1; these are i.i.d.
    /// copies of T_1 on an infinite sequence.
    std::vector<std::size_t> waits() const;
};

RenewalStats renewal_times(std::span<const std::uint8_t> u, std::size_t m);

/// N^(m)(A): the members of A that are renewal times.
std::vector<std::size_t> renewal_hits(const RenewalStats& stats, std::span<const std::size_t> a);

/// Greedy left-to-right largest m-separated subset of A (members differ by >= m+1).
std::vector<std::size_t> m_separated(std::span<const std::size_t> a, std::size_t m);

bool is_m_separated(std::span<const std::size_t> a, std::size_t m);

/// delta = alpha^(m+1) (1 - alpha).
double delta_bound(double alpha, std::size_t m);

/// Smallest beta with S(t) <= beta^t for every t >= 1, where S is the empirical
/// survival function of the samples. Returns 1 when there are no samples.
double geometric_tail_rate(std::span<const std::size_t> samples);


/// Monte Carlo estimate of P(N^(m)(A) != empty) over `trials` i.i.d.
/// Bernoulli(alpha) sequences long enough for a block to start at max(A).
/// Trial t draws U from Stream(seed, t), one uniform per index.
struct RenewalHitReport {
    std::size_t trials = 0;
    std::size_t set_size = 0;
    double delta = 0.0;
    double bound = 0.0;  // 1 - (1 - delta)^|A|
    double empirical = 0.0;
    double standard_error = 0.0;
    bool pass = false;  // empirical >= bound - 3 SE
};

/// Throws ErrorKind::parameter when A is empty or not m-separated.
RenewalHitReport check_renewal_hits(double alpha, std::size_t m, std::span<const std::size_t> a, std::size_t trials,
                                    std::uint64_t seed);

/// T_1^(m) from `trials` sequences of length horizon + m + 1; a trial with no
/// renewal in range records horizon + 1.
std::vector<std::size_t> first_renewal_samples(double alpha, std::size_t m, std::size_t horizon, std::size_t trials,
                                               std::uint64_t seed);

}  // namespace cesaro

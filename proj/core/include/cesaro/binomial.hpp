#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cesaro {

/// Base-p digits of n, least significant first, with no trailing zeros.
struct DigitExpansion {
    std::uint64_t n = 0;
    std::uint32_t p = 2;
    std::vector<std::uint32_t> digits;

    /// J_i(n) = {j >= i : n_j != 0}.
    std::vector<std::size_t> nonzero_positions_from(std::size_t i) const;
    /// xi_i(n) = |J_i(n)|.
    std::size_t xi(std::size_t i) const;
    /// n is in p^a N iff its lowest a digits vanish.
    bool divisible_by_power(std::size_t a) const;
    /// floor(log_p n) for n >= 1.
    std::size_t floor_log() const;
};

DigitExpansion digit_profile(std::uint64_t n, std::uint32_t p);

/// Carries in the base-p addition k + (n - k). Throws ErrorKind::domain if k > n.
unsigned carry_count(std::uint64_t n, std::uint64_t k, std::uint32_t p);

/// Exact C(n, k).
boost::multiprecision::cpp_int binomial(std::uint64_t n, std::uint64_t k);

/// Largest v with p^v | x, for x != 0.
unsigned p_adic_valuation(boost::multiprecision::cpp_int x, std::uint32_t p);

/// C(n,k) mod p^s for a fixed (p, s).
///
/// Rows vanish whenever Kummer's carry count reaches s. Otherwise the value is
/// p^v times the unit part (n!)_p / ((k!)_p ((n-k)!)_p), where (x!)_p is x!
/// stripped of every factor p, evaluated mod p^s from a table of products of
/// units below p^s. Out-of-range k gives 0.
class BinomialMod {
public:
    BinomialMod(std::uint32_t p, std::uint32_t s);

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t s() const noexcept { return s_; }
    std::uint64_t modulus() const noexcept { return q_; }

    std::uint64_t operator()(std::uint64_t n, std::int64_t k) const;
    /// Residues C(n,0..n) mod p^s.
    std::vector<std::uint64_t> row(std::uint64_t n) const;

private:
    std::uint64_t stripped_factorial(std::uint64_t x) const;
    std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e) const;

    std::uint32_t p_;
    std::uint32_t s_;
    std::uint64_t q_;
    std::vector<std::uint64_t> unit_prefix_;  // product of units in [1, x] mod q, for x <= q
};

std::uint64_t binom_mod(std::uint64_t n, std::int64_t k, std::uint32_t p, std::uint32_t s);

/// Reference path: exact big-integer C(n,k) reduced mod p^s, with the Kummer
/// zero-shortcut.
std::uint64_t binom_mod_exact(std::uint64_t n, std::int64_t k, std::uint32_t p, std::uint32_t s);

struct IsolationReport {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t l = 0;
    std::uint32_t p = 2;
    std::uint32_t s = 1;
    std::vector<std::uint64_t> isolated;
};

/// Every k in [0,n] with C(n,k) a unit mod p while all other coefficients
/// in [k-m, k+l] vanish mod p^s (indices outside [0,n] count as zero).
IsolationReport isolated_set(std::uint64_t n, std::uint64_t m, std::uint64_t l, std::uint32_t p, std::uint32_t s);

/// Same predicate evaluated on a precomputed row.
std::vector<std::uint64_t> isolated_in_row(const std::vector<std::uint64_t>& row, std::uint32_t p,
                                           std::uint64_t m, std::uint64_t l);

struct IsolationCount {
    std::uint64_t count = 0;
    double lower_bound = 0.0;  // 2^xi_{a+i}(n) - 1
    bool ok = false;
};

/// Counts (m,m)-isolated positions of n and compares with 2^xi_{a+i}(n) - 1.
/// Enforces m >= 1, a >= 2s+1, p^floor(a/2) > m, n in p^a N and i >= a,
/// throwing ErrorKind::parameter otherwise.
IsolationCount isolation_count_check(std::uint64_t n, std::size_t a, std::size_t i, std::uint64_t m, std::uint32_t p,
                            std::uint32_t s);

/// Smallest a >= 2s+1 with p^floor(a/2) > m.
std::size_t isolation_min_a(std::uint64_t m, std::uint32_t p, std::uint32_t s);

/// n in M_0(a): n >= 1, n in p^a N and xi_{a + floor(log_p(n)/2)}(n) >= log_p(n)/5.
bool in_m0(std::uint64_t n, std::size_t a, std::uint32_t p);

/// |M_0 cap [0,N)| / |p^a N cap [0,N)|.
double m0_density(std::uint64_t N, std::size_t a, std::uint32_t p);

}  // namespace cesaro

#include "cesaro/binomial.hpp"

#include <cmath>
#include <limits>

#include "cesaro/errors.hpp"
#include "cesaro/group.hpp"

namespace cesaro {

using boost::multiprecision::cpp_int;

std::vector<std::size_t> DigitExpansion::nonzero_positions_from(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = i; j < digits.size(); ++j)
        if (digits[j] != 0) out.push_back(j);
    return out;
}

std::size_t DigitExpansion::xi(std::size_t i) const {
    std::size_t c = 0;
    for (std::size_t j = i; j < digits.size(); ++j) c += digits[j] != 0;
    return c;
}

bool DigitExpansion::divisible_by_power(std::size_t a) const {
    for (std::size_t j = 0; j < a && j < digits.size(); ++j)
        if (digits[j] != 0) return false;
    return true;
}

std::size_t DigitExpansion::floor_log() const {
    if (n == 0) fail(ErrorKind::domain, "log of zero");
    return digits.size() - 1;
}

DigitExpansion digit_profile(std::uint64_t n, std::uint32_t p) {
    if (p < 2) fail(ErrorKind::domain, "digit base must be >= 2");
    DigitExpansion d{n, p, {}};
    for (std::uint64_t x = n; x > 0; x /= p) d.digits.push_back(static_cast<std::uint32_t>(x % p));
    return d;
}

unsigned carry_count(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
    if (k > n) fail(ErrorKind::domain, "carry_count needs 0 <= k <= n");
    std::uint64_t a = k, b = n - k;
    unsigned carries = 0, carry = 0;
    while (a > 0 || b > 0 || carry > 0) {
        const std::uint64_t sum = a % p + b % p + carry;
        carry = sum >= p ? 1 : 0;
        carries += carry;
        a /= p;
        b /= p;
    }
    return carries;
}

cpp_int binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    cpp_int r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

unsigned p_adic_valuation(cpp_int x, std::uint32_t p) {
    if (x == 0) fail(ErrorKind::domain, "valuation of zero");
    unsigned v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

namespace {

constexpr std::uint64_t kMaxTableModulus = std::uint64_t{1} << 24;

std::uint64_t checked_power(std::uint32_t p, std::uint32_t s) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < s; ++i) {
        if (q > (std::uint64_t{1} << 31) / p) fail(ErrorKind::domain, "p^s too large for residue arithmetic");
        q *= p;
    }
    return q;
}

}  // namespace

BinomialMod::BinomialMod(std::uint32_t p, std::uint32_t s) : p_(p), s_(s) {
    if (!is_prime(p)) fail(ErrorKind::domain, "binomial modulus base must be prime");
    if (s == 0) fail(ErrorKind::domain, "binomial modulus exponent must be >= 1");
    q_ = checked_power(p, s);
    if (q_ > kMaxTableModulus) fail(ErrorKind::resource, "p^s above the unit-table limit");
    unit_prefix_.resize(q_ + 1);
    unit_prefix_[0] = 1 % q_;
    for (std::uint64_t i = 1; i <= q_; ++i)
        unit_prefix_[i] = i % p_ == 0 ? unit_prefix_[i - 1] : unit_prefix_[i - 1] * (i % q_) % q_;
}

std::uint64_t BinomialMod::pow_mod(std::uint64_t b, std::uint64_t e) const {
    std::uint64_t r = 1 % q_;
    b %= q_;
    while (e > 0) {
        if (e & 1) r = r * b % q_;
        b = b * b % q_;
        e >>= 1;
    }
    return r;
}

std::uint64_t BinomialMod::stripped_factorial(std::uint64_t x) const {
    std::uint64_t r = 1 % q_;
    while (x > 0) {
        r = r * pow_mod(unit_prefix_[q_], x / q_) % q_ * unit_prefix_[x % q_] % q_;
        x /= p_;
    }
    return r;
}

std::uint64_t BinomialMod::operator()(std::uint64_t n, std::int64_t k) const {
    if (k < 0 || static_cast<std::uint64_t>(k) > n) return 0;
    const auto uk = static_cast<std::uint64_t>(k);
    const unsigned v = carry_count(n, uk, p_);
    if (v >= s_) return 0;
    const auto inv = [&](std::uint64_t x) { return unit_inverse(static_cast<std::int64_t>(x), p_, s_); };
    std::uint64_t r = stripped_factorial(n);
    r = r * inv(stripped_factorial(uk)) % q_;
    r = r * inv(stripped_factorial(n - uk)) % q_;
    for (unsigned i = 0; i < v; ++i) r = r * p_ % q_;
    return r;
}

std::vector<std::uint64_t> BinomialMod::row(std::uint64_t n) const {
    std::vector<std::uint64_t> out(n + 1);
    for (std::uint64_t k = 0; k <= n; ++k) out[k] = (*this)(n, static_cast<std::int64_t>(k));
    return out;
}

std::uint64_t binom_mod(std::uint64_t n, std::int64_t k, std::uint32_t p, std::uint32_t s) {
    if (checked_power(p, s) > kMaxTableModulus) return binom_mod_exact(n, k, p, s);
    return BinomialMod(p, s)(n, k);
}

std::uint64_t binom_mod_exact(std::uint64_t n, std::int64_t k, std::uint32_t p, std::uint32_t s) {
    if (!is_prime(p)) fail(ErrorKind::domain, "binomial modulus base must be prime");
    const std::uint64_t q = checked_power(p, s);
    if (k < 0 || static_cast<std::uint64_t>(k) > n) return 0;
    if (carry_count(n, static_cast<std::uint64_t>(k), p) >= s) return 0;
    const cpp_int c = binomial(n, static_cast<std::uint64_t>(k)) % q;
    return c.convert_to<std::uint64_t>();
}

std::vector<std::uint64_t> isolated_in_row(const std::vector<std::uint64_t>& row, std::uint32_t p,
                                           std::uint64_t m, std::uint64_t l) {
    std::vector<std::uint64_t> out;
    const std::uint64_t n = row.size() - 1;
    // next_nonzero[k]: smallest index >= k with a nonzero residue (n+1 if none).
    std::vector<std::uint64_t> next_nonzero(row.size() + 1, n + 1);
    for (std::uint64_t k = row.size(); k-- > 0;) next_nonzero[k] = row[k] != 0 ? k : next_nonzero[k + 1];
    std::uint64_t last_nonzero = std::numeric_limits<std::uint64_t>::max();  // none yet
    for (std::uint64_t k = 0; k <= n; ++k) {
        if (row[k] % p != 0) {
            const bool left_clear = last_nonzero == std::numeric_limits<std::uint64_t>::max() || k - last_nonzero > m;
            const bool right_clear = next_nonzero[k + 1] > n || next_nonzero[k + 1] - k > l;
            if (left_clear && right_clear) out.push_back(k);
        }
        if (row[k] != 0) last_nonzero = k;
    }
    return out;
}

IsolationReport isolated_set(std::uint64_t n, std::uint64_t m, std::uint64_t l, std::uint32_t p, std::uint32_t s) {
    IsolationReport rep{n, m, l, p, s, {}};
    std::vector<std::uint64_t> row;
    if (checked_power(p, s) > kMaxTableModulus) {
        row.resize(n + 1);
        for (std::uint64_t k = 0; k <= n; ++k) row[k] = binom_mod_exact(n, static_cast<std::int64_t>(k), p, s);
    } else {
        row = BinomialMod(p, s).row(n);
    }
    rep.isolated = isolated_in_row(row, p, m, l);
    return rep;
}

std::size_t isolation_min_a(std::uint64_t m, std::uint32_t p, std::uint32_t s) {
    std::size_t a = 2 * static_cast<std::size_t>(s) + 1;
    for (;; ++a) {
        std::uint64_t pw = 1;
        for (std::size_t j = 0; j < a / 2 && pw <= m; ++j) pw *= p;
        if (pw > m) return a;
    }
}

IsolationCount isolation_count_check(std::uint64_t n, std::size_t a, std::size_t i, std::uint64_t m, std::uint32_t p,
                            std::uint32_t s) {
    if (m < 1) fail(ErrorKind::parameter, "isolation count needs m >= 1");
    if (a < 2 * static_cast<std::size_t>(s) + 1) fail(ErrorKind::parameter, "need a >= 2s+1");
    std::uint64_t pw = 1;
    for (std::size_t j = 0; j < a / 2 && pw <= m; ++j) pw *= p;
    if (pw <= m) fail(ErrorKind::parameter, "need p^floor(a/2) > m");
    const auto digits = digit_profile(n, p);
    if (!digits.divisible_by_power(a)) fail(ErrorKind::parameter, "n is not in p^a N");
    if (i < a) fail(ErrorKind::parameter, "need i >= a");
    IsolationCount r;
    r.count = isolated_set(n, m, m, p, s).isolated.size();
    r.lower_bound = std::ldexp(1.0, static_cast<int>(digits.xi(a + i))) - 1.0;
    r.ok = static_cast<double>(r.count) >= r.lower_bound;
    return r;
}

bool in_m0(std::uint64_t n, std::size_t a, std::uint32_t p) {
    if (n == 0) return false;
    const auto d = digit_profile(n, p);
    if (!d.divisible_by_power(a)) return false;
    const std::size_t log_floor = d.floor_log();
    const std::size_t xi = d.xi(a + log_floor / 2);
    // xi >= log_p(n)/5  <=>  p^(5 xi) >= n, decided exactly on digit counts.
    const std::size_t e = 5 * xi;
    if (e > log_floor) return true;
    std::uint64_t pw = 1;
    for (std::size_t j = 0; j < e; ++j) pw *= p;
    return pw >= n;
}

double m0_density(std::uint64_t N, std::size_t a, std::uint32_t p) {
    if (N == 0) fail(ErrorKind::domain, "m0_density needs N >= 1");
    std::uint64_t step = 1;
    for (std::size_t j = 0; j < a; ++j) {
        if (step > N) break;
        step *= p;
    }
    std::uint64_t members = 0, total = 0;
    for (std::uint64_t n = 0; n < N; n += step) {
        ++total;
        members += in_m0(n, a, p) ? 1 : 0;
    }
    return static_cast<double>(members) / static_cast<double>(total);
}

}  // namespace cesaro

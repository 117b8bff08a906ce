#include "cesaro/pushforward.hpp"

#include <cmath>

#include "cesaro/binomial.hpp"
#include "cesaro/errors.hpp"

namespace cesaro {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

PhiCoefficientRow phi_row(std::uint64_t n, const GroupSpec& spec) {
    return {n, BinomialMod(spec.p(), spec.s()).row(n)};
}

Word apply_phi_window(const PhiCoefficientRow& row, const GroupTable& table, std::span<const Symbol> x,
                      std::size_t offset, std::size_t m) {
    if (x.size() < offset + m + row.n) fail(ErrorKind::domain, "window too short for Phi^n");
    Word out(m, 0);
    for (std::size_t j = 0; j < m; ++j) {
        Symbol acc = 0;
        for (std::size_t k = 0; k < row.coeffs.size(); ++k) {
            if (row.coeffs[k] == 0) continue;
            acc = table.add(acc, table.scale(row.coeffs[k], x[offset + j + k]));
        }
        out[j] = acc;
    }
    return out;
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t limit) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (r > limit / base) return limit + 1;
        r *= base;
    }
    return r;
}

void require_positive_window(unsigned m) {
    if (m == 0) fail(ErrorKind::domain, "window length m must be positive");
}

}  // namespace

CylinderDistribution exact_marginal(const MarkovMeasure& mu, std::uint64_t n, unsigned m, const Caps& caps) {
    require_positive_window(m);
    const auto& shift = mu.shift();
    const auto& table = shift.table();
    const std::size_t A = shift.order();

    const std::uint64_t states = checked_pow(A, m + 1, caps.work);
    if (states > caps.work || n + m > caps.work / states)
        fail(ErrorKind::resource, "exact_marginal work |A|^(m+1)(n+m) exceeds the work cap");

    const auto row = phi_row(n, shift.spec());
    const std::size_t ysize = checked_pow(A, m, caps.enumeration);
    CylinderDistribution out(A, m, caps.enumeration);

    std::vector<double> cur(states, 0.0), next(states, 0.0);
    std::vector<Symbol> y(m), ny(m);
    const auto encode_y = [&](const std::vector<Symbol>& v) {
        std::size_t c = 0;
        for (auto s : v) c = c * A + s;
        return c;
    };
    const auto decode_y = [&](std::size_t c, std::vector<Symbol>& v) {
        for (std::size_t j = m; j-- > 0;) {
            v[j] = static_cast<Symbol>(c % A);
            c /= A;
        }
    };

    // t = 0: only y_0 has started, with coefficient C(n,0) = 1.
    for (Symbol x = 0; x < A; ++x) {
        std::fill(y.begin(), y.end(), 0);
        y[0] = x;
        cur[x * ysize + encode_y(y)] += mu.pi(x);
    }

    const std::uint64_t last = n + m - 1;
    for (std::uint64_t t = 1; t <= last; ++t) {
        std::fill(next.begin(), next.end(), 0.0);
        // Output coordinate j receives coeffs[t-j] * x_t while 0 <= t-j <= n.
        const std::size_t j_lo = t > n ? static_cast<std::size_t>(t - n) : 0;
        const std::size_t j_hi = static_cast<std::size_t>(std::min<std::uint64_t>(m - 1, t));
        for (std::size_t code = 0; code < states; ++code) {
            const double w = cur[code];
            if (w == 0.0) continue;
            const auto x = static_cast<Symbol>(code / ysize);
            decode_y(code % ysize, y);
            for (auto h : shift.followers(x)) {
                ny = y;
                for (std::size_t j = j_lo; j <= j_hi; ++j) {
                    const std::uint64_t c = row.coeffs[t - j];
                    if (c != 0) ny[j] = table.add(ny[j], table.scale(c, h));
                }
                next[h * ysize + encode_y(ny)] += w * mu.P(x, h);
            }
        }
        cur.swap(next);
    }

    for (std::size_t code = 0; code < states; ++code) out[code % ysize] += cur[code];
    return out;
}

namespace {

template <class Weight, class Accumulate>
void brute_walk(const MarkovMeasure& mu, std::uint64_t n, unsigned m, const Caps& caps, Weight&& weight,
                Accumulate&& accumulate) {
    require_positive_window(m);
    const auto& shift = mu.shift();
    const auto& table = shift.table();
    const std::uint64_t len = n + m;
    if (len > 64 || shift.word_count(static_cast<unsigned>(len)) > caps.brute)
        fail(ErrorKind::resource, "brute_marginal: |G_{n+m}| exceeds the oracle cap");
    const std::size_t A = shift.order();
    std::vector<Symbol> buf(len);
    for_each_word(shift, static_cast<unsigned>(len), [&](const Word& w) {
        buf.assign(w.begin(), w.end());
        // Phi applied n times: (Phi x)_i = x_i + x_{i+1}, window shrinks by one.
        for (std::uint64_t it = 0; it < n; ++it) {
            const std::size_t width = static_cast<std::size_t>(len - it - 1);
            for (std::size_t i = 0; i < width; ++i) buf[i] = table.add(buf[i], buf[i + 1]);
        }
        std::size_t code = 0;
        for (unsigned j = 0; j < m; ++j) code = code * A + buf[j];
        accumulate(code, weight(w));
    });
}

cpp_rational exact_rational(double v) {
    int exp = 0;
    const double mant = std::frexp(v, &exp);
    // mant * 2^53 is an integer for any finite double.
    const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
    const cpp_rational r{cpp_int{scaled}};
    exp -= 53;
    cpp_int pw = 1;
    pw <<= std::abs(exp);
    return exp >= 0 ? r * cpp_rational(pw) : r / cpp_rational(pw);
}

}  // namespace

CylinderDistribution brute_marginal(const MarkovMeasure& mu, std::uint64_t n, unsigned m, const Caps& caps) {
    CylinderDistribution out(mu.shift().order(), m, caps.enumeration);
    brute_walk(
        mu, n, m, caps, [&](const Word& w) { return mu.cylinder_probability(w); },
        [&](std::size_t code, double p) { out[code] += p; });
    return out;
}

std::vector<cpp_rational> brute_marginal_rational(const MarkovMeasure& mu, std::uint64_t n, unsigned m,
                                                  const Caps& caps) {
    const std::size_t A = mu.shift().order();
    const auto cells = checked_pow(A, m, caps.enumeration);
    if (cells > caps.enumeration) fail(ErrorKind::resource, "rational table exceeds enumeration cap");
    std::vector<cpp_rational> pi(A);
    std::vector<cpp_rational> P(A * A);
    for (Symbol g = 0; g < A; ++g) {
        pi[g] = exact_rational(mu.pi(g));
        for (Symbol h = 0; h < A; ++h) P[g * A + h] = exact_rational(mu.P(g, h));
    }
    std::vector<cpp_rational> out(cells);
    brute_walk(
        mu, n, m, caps,
        [&](const Word& w) {
            cpp_rational p = pi[w[0]];
            for (std::size_t i = 1; i < w.size(); ++i) p *= P[w[i - 1] * A + w[i]];
            return p;
        },
        [&](std::size_t code, const cpp_rational& p) { out[code] += p; });
    return out;
}

CylinderDistribution mc_marginal(const RegenSampler& sampler, std::uint64_t n, unsigned m, std::size_t trials,
                                 const MonteCarloOptions& options, const Caps& caps) {
    require_positive_window(m);
    if (trials == 0) fail(ErrorKind::domain, "mc_marginal needs at least one trial");
    const auto& shift = sampler.shift();
    const auto row = phi_row(n, shift.spec());
    const std::size_t len = options.offset + static_cast<std::size_t>(n) + m;

    // Only nonzero coefficients matter; keep them as (k, c) pairs.
    std::vector<std::pair<std::size_t, std::uint64_t>> terms;
    for (std::size_t k = 0; k < row.coeffs.size(); ++k)
        if (row.coeffs[k] != 0) terms.emplace_back(k, row.coeffs[k]);

    CylinderDistribution out(shift.order(), m, caps.enumeration);
    std::vector<std::uint64_t> counts(out.size(), 0);
    std::vector<Symbol> x;
    const auto& table = shift.table();
    const std::size_t A = shift.order();
    for (std::size_t t = 0; t < trials; ++t) {
        SampleOptions so;
        so.stream = options.first_stream + t;
        sampler.sample_symbols(len, options.seed, so, x);
        std::size_t code = 0;
        for (unsigned j = 0; j < m; ++j) {
            Symbol acc = 0;
            for (const auto& [k, c] : terms) acc = table.add(acc, table.scale(c, x[options.offset + j + k]));
            code = code * A + acc;
        }
        ++counts[code];
    }
    for (std::size_t c = 0; c < counts.size(); ++c) out[c] = static_cast<double>(counts[c]) / static_cast<double>(trials);
    return out;
}

}  // namespace cesaro

#include "cesaro/cesaro_scan.hpp"

#include <charconv>
#include <map>

#include "cesaro/binomial.hpp"
#include "cesaro/errors.hpp"
#include "cesaro/pushforward.hpp"
#include "cesaro/regen.hpp"

namespace cesaro {

namespace {

std::uint64_t power_of(std::uint32_t p, std::size_t a) {
    std::uint64_t q = 1;
    for (std::size_t i = 0; i < a; ++i) {
        if (q > (std::uint64_t{1} << 62) / p) fail(ErrorKind::domain, "p^a overflows");
        q *= p;
    }
    return q;
}

std::uint64_t parse_uint(const std::string& text, const std::string& whole) {
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || text.empty()) fail(ErrorKind::domain, "bad subsequence selector '" + whole + "'");
    return v;
}

}  // namespace

bool Subsequence::contains(std::uint64_t n, std::uint32_t p) const {
    switch (kind) {
        case Kind::all: return true;
        case Kind::power: return digit_profile(n, p).divisible_by_power(a);
        case Kind::m0: return in_m0(n, a, p);
        case Kind::residue: return n % power_of(p, a) == j;
        case Kind::m0_shift: return n >= j && in_m0(n - j, a, p);
    }
    return false;
}

std::string Subsequence::tag() const {
    switch (kind) {
        case Kind::all: return "all";
        case Kind::power: return "pa:" + std::to_string(a);
        case Kind::m0: return "m0:" + std::to_string(a);
        case Kind::residue: return "res:" + std::to_string(j) + "," + std::to_string(a);
        case Kind::m0_shift: return "mj:" + std::to_string(j) + "," + std::to_string(a);
    }
    return "?";
}

Subsequence Subsequence::parse(const std::string& text) {
    if (text == "all") return {};
    const auto colon = text.find(':');
    if (colon == std::string::npos) fail(ErrorKind::domain, "bad subsequence selector '" + text + "'");
    const std::string head = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);
    Subsequence s;
    if (head == "pa" || head == "m0") {
        s.kind = head == "pa" ? Kind::power : Kind::m0;
        s.a = static_cast<std::size_t>(parse_uint(body, text));
        return s;
    }
    if (head == "res" || head == "mj") {
        const auto comma = body.find(',');
        if (comma == std::string::npos) fail(ErrorKind::domain, "selector '" + text + "' needs <j>,<a>");
        s.kind = head == "res" ? Kind::residue : Kind::m0_shift;
        s.j = parse_uint(body.substr(0, comma), text);
        s.a = static_cast<std::size_t>(parse_uint(body.substr(comma + 1), text));
        return s;
    }
    fail(ErrorKind::domain, "unknown subsequence selector '" + text + "'");
}

CesaroReport cesaro_scan(const MarkovMeasure& mu, unsigned m, std::uint64_t N, const Subsequence& subsequence,
                         const CesaroOptions& options) {
    if (N == 0) fail(ErrorKind::domain, "cesaro_scan needs N >= 1");
    const auto& shift = mu.shift();
    const std::uint32_t p = shift.spec().p();
    const auto haar = haar_marginal(shift, m, options.caps);

    std::vector<std::uint64_t> ns;
    for (std::uint64_t n = 0; n < N; ++n)
        if (subsequence.contains(n, p)) ns.push_back(n);

    CesaroReport rep{m, N, subsequence.tag(), {}, CylinderDistribution(shift.order(), m, options.caps.enumeration)};
    if (ns.empty()) return rep;

    std::optional<RegenSampler> sampler;
    if (options.engine == Engine::exact) {
        // Probe the cap on the largest n before doing any work.
        const std::uint64_t states = [&] {
            std::uint64_t s = 1;
            for (unsigned i = 0; i <= m; ++i) {
                if (s > options.caps.work / shift.order()) return options.caps.work + 1;
                s *= shift.order();
            }
            return s;
        }();
        if (states > options.caps.work || ns.back() + m > options.caps.work / states)
            fail(ErrorKind::resource, "exact Cesaro scan up to n = " + std::to_string(ns.back()) +
                                          " exceeds the work cap; use the mc engine");
    } else {
        sampler.emplace(build_regen(mu, options.alpha));
    }

    CylinderDistribution sum(shift.order(), m, options.caps.enumeration);
    std::size_t count = 0;
    for (auto n : ns) {
        CylinderDistribution marg = options.engine == Engine::exact
                                        ? exact_marginal(mu, n, m, options.caps)
                                        : mc_marginal(*sampler, n, m, options.mc_trials,
                                                      MonteCarloOptions{options.seed, n * options.mc_trials, 0},
                                                      options.caps);
        sum.accumulate(marg, 1.0);
        ++count;
        CylinderDistribution running = sum;
        running.scale(1.0 / static_cast<double>(count));
        rep.per_n.push_back({n, tv_distance(marg, haar), tv_distance(running, haar)});
    }
    sum.scale(1.0 / static_cast<double>(count));
    rep.mean = std::move(sum);
    return rep;
}

ResidueDecomposition residue_decomposition(const MarkovMeasure& mu, unsigned m, std::uint64_t N, std::size_t a,
                                           const CesaroOptions& options) {
    const auto& shift = mu.shift();
    const std::uint64_t classes = power_of(shift.spec().p(), a);
    ResidueDecomposition d{N, a, {}, CylinderDistribution(shift.order(), m, options.caps.enumeration),
                           cesaro_scan(mu, m, N, Subsequence{}, options), 0.0};
    for (std::uint64_t j = 0; j < classes; ++j) {
        Subsequence s{Subsequence::Kind::residue, a, j};
        d.classes.push_back(cesaro_scan(mu, m, N, s, options));
        d.average.accumulate(d.classes.back().mean, 1.0 / static_cast<double>(classes));
    }
    d.gap = tv_distance(d.average, d.all.mean);
    return d;
}

}  // namespace cesaro

#include "cesaro/shift.hpp"

#include <algorithm>
#include <limits>

#include "cesaro/errors.hpp"

namespace cesaro {

IncidenceMatrix::IncidenceMatrix(std::size_t n, std::vector<std::uint8_t> bits) : n_(n), bits_(std::move(bits)) {
    if (bits_.size() != n * n) fail(ErrorKind::structural, "incidence matrix is not square");
    for (auto& b : bits_) {
        if (b > 1) fail(ErrorKind::validation, "incidence entries must be 0 or 1");
    }
}

namespace {

using Bits = std::vector<std::uint8_t>;

Bits step_followers(const std::vector<std::vector<Symbol>>& followers, const Bits& from) {
    Bits next(from.size(), 0);
    for (std::size_t h = 0; h < from.size(); ++h) {
        if (!from[h]) continue;
        for (auto k : followers[h]) next[k] = 1;
    }
    return next;
}

std::vector<Symbol> to_list(const Bits& bits) {
    std::vector<Symbol> out;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) out.push_back(static_cast<Symbol>(i));
    return out;
}

bool all_set(const Bits& bits) {
    return std::all_of(bits.begin(), bits.end(), [](auto b) { return b != 0; });
}

}  // namespace

SubgroupShift::SubgroupShift(GroupSpec spec, IncidenceMatrix m)
    : spec_(std::move(spec)), table_(spec_), incidence_(std::move(m)) {}

SubgroupShift validate_subgroup_shift(GroupSpec spec, IncidenceMatrix m) {
    if (m.size() != spec.order())
        fail(ErrorKind::structural, "incidence matrix is " + std::to_string(m.size()) + "x" +
                                        std::to_string(m.size()) + " but |A| = " + std::to_string(spec.order()));
    SubgroupShift shift(std::move(spec), std::move(m));
    const auto n = shift.order();
    const auto& t = shift.table_;
    const auto& M = shift.incidence_;

    if (!M(0, 0)) fail(ErrorKind::not_a_subgroup, "(0,0) is not an allowed transition");
    std::vector<std::pair<Symbol, Symbol>> edges;
    for (Symbol g = 0; g < n; ++g)
        for (Symbol h = 0; h < n; ++h)
            if (M(g, h)) edges.emplace_back(g, h);
    for (const auto& [g, h] : edges) {
        for (const auto& [g2, h2] : edges) {
            if (!M(t.add(g, g2), t.add(h, h2)))
                fail(ErrorKind::not_a_subgroup, "transition set is not closed under addition at (" +
                                                    std::to_string(g) + "," + std::to_string(h) + ") + (" +
                                                    std::to_string(g2) + "," + std::to_string(h2) + ")");
        }
    }

    shift.followers_.assign(n, {});
    for (const auto& [g, h] : edges) shift.followers_[g].push_back(h);
    for (Symbol g = 0; g < n; ++g) {
        if (shift.followers_[g].empty())
            fail(ErrorKind::non_surjective, "row " + std::to_string(g) + " of M is empty");
    }

    // F^n(0) is nondecreasing because 0 is in F(0); it either reaches A or stalls.
    Bits reach(n, 0);
    for (auto h : shift.followers_[0]) reach[h] = 1;
    unsigned r = 1;
    while (!all_set(reach)) {
        Bits next = step_followers(shift.followers_, reach);
        if (next == reach || r >= n)
            fail(ErrorKind::not_irreducible,
                 "F^n(0) stabilizes at " + std::to_string(to_list(reach).size()) + " of " + std::to_string(n) + " symbols");
        reach = std::move(next);
        ++r;
    }
    shift.r_ = r;

    Bits has_pred(n, 0);
    for (const auto& e : edges) has_pred[e.second] = 1;
    for (Symbol h = 0; h < n; ++h) {
        if (!has_pred[h]) fail(ErrorKind::non_surjective, "column " + std::to_string(h) + " of M is empty");
    }

    for (const auto& [g, h] : edges)
        if (h == 0) shift.predecessor_subgroup_.push_back(g);

    const auto& F = shift.followers_[0];
    shift.section_.resize(n);
    for (Symbol g = 0; g < n; ++g) {
        const Symbol f = shift.followers_[g].front();
        shift.section_[g] = f;
        std::vector<Symbol> coset;
        for (auto w : F) coset.push_back(t.add(f, w));
        std::sort(coset.begin(), coset.end());
        if (coset != shift.followers_[g])
            fail(ErrorKind::not_a_subgroup, "F(" + std::to_string(g) + ") is not a coset of F");
    }
    if (shift.predecessor_subgroup_.size() != F.size())
        fail(ErrorKind::not_a_subgroup, "|F| != |P|");

    for (Symbol g = 0; g < n; ++g) {
        if (shift.follower_set(g, r).size() != n)
            fail(ErrorKind::not_irreducible, "F^r(" + std::to_string(g) + ") is not all of A");
    }
    return shift;
}

double SubgroupShift::gamma(unsigned length) const {
    if (length == 0) fail(ErrorKind::domain, "gamma needs a positive length");
    double g = 1.0 / static_cast<double>(order());
    for (unsigned i = 1; i < length; ++i) g /= static_cast<double>(fsize());
    return g;
}

std::uint64_t SubgroupShift::word_count(unsigned length) const noexcept {
    if (length == 0) return 1;
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t c = order();
    for (unsigned i = 1; i < length; ++i) {
        if (c > kMax / fsize()) return kMax;
        c *= fsize();
    }
    return c;
}

std::vector<Symbol> SubgroupShift::follower_set(Symbol g, unsigned n) const {
    if (n == 0) fail(ErrorKind::domain, "follower_set needs n >= 1");
    Bits reach(order(), 0);
    for (auto h : followers(g)) reach[h] = 1;
    for (unsigned i = 1; i < n; ++i) {
        reach = step_followers(followers_, reach);
        if (all_set(reach)) break;
    }
    return to_list(reach);
}

BigInt SubgroupShift::path_count(unsigned n, Symbol g, Symbol h) const {
    if (g >= order() || h >= order()) fail(ErrorKind::domain, "symbol out of range");
    std::vector<BigInt> row(order(), 0);
    row[g] = 1;
    for (unsigned step = 0; step < n; ++step) {
        std::vector<BigInt> next(order(), 0);
        for (Symbol a = 0; a < order(); ++a) {
            if (row[a] == 0) continue;
            for (auto b : followers_[a]) next[b] += row[a];
        }
        row = std::move(next);
    }
    return row[h];
}

std::vector<GroupElement> follower_set(const SubgroupShift& shift, const GroupElement& g, unsigned n) {
    std::vector<GroupElement> out;
    for (auto s : shift.follower_set(shift.spec().index_of(g), n)) out.push_back(shift.spec().element_at(s));
    return out;
}

HaarKernel haar_kernel(const SubgroupShift& shift) {
    const auto n = static_cast<Eigen::Index>(shift.order());
    HaarKernel k{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n))};
    const double w = 1.0 / static_cast<double>(shift.fsize());
    for (Symbol g = 0; g < shift.order(); ++g)
        for (auto h : shift.followers(g)) k.L(g, h) = w;
    return k;
}

CylinderDistribution haar_marginal(const SubgroupShift& shift, unsigned length, const Caps& caps) {
    if (length == 0) fail(ErrorKind::domain, "haar_marginal needs a positive length");
    if (shift.word_count(length) > caps.enumeration)
        fail(ErrorKind::resource, "|G_l| exceeds the enumeration cap");
    CylinderDistribution d(shift.order(), length, caps.enumeration);
    const double g = shift.gamma(length);
    for_each_word(shift, length, [&](const Word& w) { d[d.encode(w)] = g; });
    return d;
}

std::vector<Word> enumerate_words(const SubgroupShift& shift, unsigned length, const Caps& caps) {
    if (length == 0) fail(ErrorKind::domain, "enumerate_words needs a positive length");
    if (shift.word_count(length) > caps.enumeration)
        fail(ErrorKind::resource, "|G_l| exceeds the enumeration cap");
    std::vector<Word> out;
    out.reserve(shift.word_count(length));
    for_each_word(shift, length, [&](const Word& w) { out.push_back(w); });
    return out;
}

}  // namespace cesaro

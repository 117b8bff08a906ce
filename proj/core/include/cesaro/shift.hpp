#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "cesaro/caps.hpp"
#include "cesaro/cylinder.hpp"
#include "cesaro/group.hpp"

namespace cesaro {

using BigInt = boost::multiprecision::cpp_int;

/// 0-1 incidence matrix indexed by canonical symbol order.
class IncidenceMatrix {
public:
    IncidenceMatrix() = default;
    explicit IncidenceMatrix(std::size_t n) : n_(n), bits_(n * n, 0) {}
    IncidenceMatrix(std::size_t n, std::vector<std::uint8_t> bits);

    std::size_t size() const noexcept { return n_; }
    bool operator()(Symbol g, Symbol h) const noexcept { return bits_[g * n_ + h] != 0; }
    void set(Symbol g, Symbol h, bool on = true) { bits_.at(g * n_ + h) = on ? 1 : 0; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// A validated Markov subgroup of A^Z together with its follower structure.
///
/// Construction (validate_subgroup_shift) checks, in order:
///   1. the edge set {(g,h) : M(g,h) = 1} is a subgroup of A x A;
///   2. every row of M is nonempty;
///   3. M is irreducible, recording the mixing index r;
///   4. every column of M is nonempty;
/// then confirms the coset law F(g) = f(g) + F and |F| = |P| at runtime.
class SubgroupShift {
public:
    const GroupSpec& spec() const noexcept { return spec_; }
    const GroupTable& table() const noexcept { return table_; }
    const IncidenceMatrix& incidence() const noexcept { return incidence_; }

    std::size_t order() const noexcept { return table_.order(); }
    bool allowed(Symbol g, Symbol h) const noexcept { return incidence_(g, h); }

    /// Follower subgroup F = F(0), sorted.
    const std::vector<Symbol>& follower_subgroup() const noexcept { return followers_[0]; }
    /// Predecessor subgroup P = P(0), sorted.
    const std::vector<Symbol>& predecessor_subgroup() const noexcept { return predecessor_subgroup_; }
    /// F(g), sorted in canonical order.
    const std::vector<Symbol>& followers(Symbol g) const { return followers_.at(g); }
    std::size_t fsize() const noexcept { return followers_[0].size(); }
    /// f(g): the lexicographically smallest follower of g.
    Symbol section(Symbol g) const { return section_.at(g); }
    /// Smallest n with F^n(0) = A.
    unsigned mixing_index() const noexcept { return r_; }

    /// gamma_l = 1 / (|A| |F|^(l-1)).
    double gamma(unsigned length) const;
    /// |G_l| = |A| |F|^(l-1), saturating at UINT64_MAX.
    std::uint64_t word_count(unsigned length) const noexcept;

    /// F^n(g) for n >= 1, sorted.
    std::vector<Symbol> follower_set(Symbol g, unsigned n) const;
    /// |C^n(g,h)| = (M^n)_{gh}, exact.
    BigInt path_count(unsigned n, Symbol g, Symbol h) const;

    friend SubgroupShift validate_subgroup_shift(GroupSpec spec, IncidenceMatrix m);

private:
    SubgroupShift(GroupSpec spec, IncidenceMatrix m);

    GroupSpec spec_;
    GroupTable table_;
    IncidenceMatrix incidence_;
    std::vector<std::vector<Symbol>> followers_;
    std::vector<Symbol> predecessor_subgroup_;
    std::vector<Symbol> section_;
    unsigned r_ = 0;
};

SubgroupShift validate_subgroup_shift(GroupSpec spec, IncidenceMatrix m);

/// Element-level wrapper for F^n(g).
std::vector<GroupElement> follower_set(const SubgroupShift& shift, const GroupElement& g, unsigned n);

struct HaarKernel {
    Eigen::MatrixXd L;    // L(g,h) = 1/|F| on F(g)
    Eigen::VectorXd rho;  // uniform 1/|A|
};

HaarKernel haar_kernel(const SubgroupShift& shift);

/// nu^(l): gamma_l on every word of G_l, zero elsewhere.
CylinderDistribution haar_marginal(const SubgroupShift& shift, unsigned length, const Caps& caps = {});

/// G_l in lexicographic order.
std::vector<Word> enumerate_words(const SubgroupShift& shift, unsigned length, const Caps& caps = {});

/// Calls visit(word) for every word of G_l in lexicographic order.
template <class Visit>
void for_each_word(const SubgroupShift& shift, unsigned length, Visit&& visit) {
    if (length == 0) return;
    Word w(length, 0);
    std::vector<std::size_t> pos(length, 0);
    // Depth-first walk over follower choices; pos[i] indexes F(w[i-1]).
    std::size_t depth = 0;
    pos[0] = 0;
    while (true) {
        const std::size_t limit = depth == 0 ? shift.order() : shift.followers(w[depth - 1]).size();
        if (pos[depth] == limit) {
            if (depth == 0) return;
            --depth;
            ++pos[depth];
            continue;
        }
        w[depth] = depth == 0 ? static_cast<Symbol>(pos[0]) : shift.followers(w[depth - 1])[pos[depth]];
        if (depth + 1 == length) {
            visit(static_cast<const Word&>(w));
            ++pos[depth];
        } else {
            ++depth;
            pos[depth] = 0;
        }
    }
}

}  // namespace cesaro

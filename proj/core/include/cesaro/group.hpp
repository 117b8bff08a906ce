#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cesaro/caps.hpp"

namespace cesaro {

/// Position of an element in the canonical (lexicographic) order of its group.
using Symbol = std::uint32_t;

struct GroupElement {
    std::vector<std::uint32_t> residues;

    auto operator<=>(const GroupElement&) const = default;
};

std::string to_string(const GroupElement& g);

bool is_prime(std::uint64_t n) noexcept;

/// A finite Abelian p^s-torsion group Z_{p^s1} x ... x Z_{p^sd}.
class GroupSpec {
public:
    GroupSpec(std::uint32_t p, std::vector<std::uint32_t> exponents);

    std::uint32_t p() const noexcept { return p_; }
    const std::vector<std::uint32_t>& exponents() const noexcept { return exponents_; }
    std::size_t rank() const noexcept { return exponents_.size(); }
    /// Torsion exponent: max of the exponents, so p^s * g = 0 for every g.
    std::uint32_t s() const noexcept { return s_; }
    /// p^s.
    std::uint64_t torsion() const noexcept { return torsion_; }
    std::uint64_t order() const noexcept { return order_; }
    std::uint64_t modulus(std::size_t coord) const { return moduli_.at(coord); }

    GroupElement zero() const;
    bool contains(const GroupElement& g) const noexcept;

    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& g) const;
    GroupElement scalar_mul(std::int64_t c, const GroupElement& g) const;

    Symbol index_of(const GroupElement& g) const;
    GroupElement element_at(Symbol index) const;

    bool operator==(const GroupSpec& other) const noexcept {
        return p_ == other.p_ && exponents_ == other.exponents_;
    }

private:
    void require_member(const GroupElement& g) const;

    std::uint32_t p_;
    std::vector<std::uint32_t> exponents_;
    std::vector<std::uint64_t> moduli_;
    std::uint32_t s_ = 0;
    std::uint64_t torsion_ = 1;
    std::uint64_t order_ = 1;
};

/// All elements in lexicographic order of residue vectors; the first is 0.
std::vector<GroupElement> enumerate_elements(const GroupSpec& spec,
                                             std::uint64_t cap = Caps{}.enumeration);

/// c^{-1} mod p^s by extended Euclid. Throws ErrorKind::domain when p | c.
std::uint64_t unit_inverse(std::int64_t c, std::uint32_t p, std::uint32_t s);

/// Index-level arithmetic tables for the hot loops of the transfer DP and the
/// sampler. Built once per shift; symbol indices follow GroupSpec::index_of.
class GroupTable {
public:
    explicit GroupTable(const GroupSpec& spec);

    std::size_t order() const noexcept { return order_; }
    Symbol add(Symbol a, Symbol b) const noexcept { return add_[a * order_ + b]; }
    Symbol neg(Symbol a) const noexcept { return neg_[a]; }
    /// c * a for a scalar residue c in [0, p^s).
    Symbol scale(std::uint64_t c, Symbol a) const noexcept { return scale_[c * order_ + a]; }

private:
    std::size_t order_;
    std::vector<Symbol> add_;
    std::vector<Symbol> neg_;
    std::vector<Symbol> scale_;
};

}  // namespace cesaro

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cesaro/caps.hpp"
#include "cesaro/group.hpp"

namespace cesaro {

using Word = std::vector<Symbol>;

/// Probability table over all words of a fixed length m. Cells are indexed by
/// the mixed-radix code of the word with the first symbol most significant,
/// so ascending codes enumerate words in lexicographic order.
class CylinderDistribution {
public:
    CylinderDistribution(std::size_t alphabet, std::size_t length,
                         std::uint64_t cap = Caps{}.enumeration);

    std::size_t alphabet() const noexcept { return alphabet_; }
    std::size_t length() const noexcept { return length_; }
    std::size_t size() const noexcept { return cells_.size(); }

    double operator[](std::size_t code) const { return cells_[code]; }
    double& operator[](std::size_t code) { return cells_[code]; }
    double at(std::span<const Symbol> word) const { return cells_[encode(word)]; }

    std::size_t encode(std::span<const Symbol> word) const;
    Word decode(std::size_t code) const;

    double total() const noexcept;
    void scale(double factor) noexcept;
    /// this += weight * other.
    void accumulate(const CylinderDistribution& other, double weight);

    const std::vector<double>& cells() const noexcept { return cells_; }

private:
    std::size_t alphabet_;
    std::size_t length_;
    std::vector<double> cells_;
};

/// Half the L1 distance. Throws ErrorKind::domain on a word-length mismatch.
double tv_distance(const CylinderDistribution& a, const CylinderDistribution& b);

}  // namespace cesaro

#include "cesaro/cylinder.hpp"

#include <cmath>
#include <numeric>

#include "cesaro/errors.hpp"

namespace cesaro {

CylinderDistribution::CylinderDistribution(std::size_t alphabet, std::size_t length, std::uint64_t cap)
    : alphabet_(alphabet), length_(length) {
    if (alphabet == 0) fail(ErrorKind::domain, "empty alphabet");
    std::uint64_t cells = 1;
    for (std::size_t i = 0; i < length; ++i) {
        if (cells > cap / alphabet) fail(ErrorKind::resource, "cylinder table exceeds enumeration cap");
        cells *= alphabet;
    }
    if (cells > cap) fail(ErrorKind::resource, "cylinder table exceeds enumeration cap");
    cells_.assign(cells, 0.0);
}

std::size_t CylinderDistribution::encode(std::span<const Symbol> word) const {
    if (word.size() != length_) fail(ErrorKind::domain, "word length does not match the table");
    std::size_t code = 0;
    for (auto s : word) {
        if (s >= alphabet_) fail(ErrorKind::domain, "symbol outside the alphabet");
        code = code * alphabet_ + s;
    }
    return code;
}

Word CylinderDistribution::decode(std::size_t code) const {
    Word w(length_);
    for (std::size_t i = length_; i-- > 0;) {
        w[i] = static_cast<Symbol>(code % alphabet_);
        code /= alphabet_;
    }
    return w;
}

double CylinderDistribution::total() const noexcept {
    return std::accumulate(cells_.begin(), cells_.end(), 0.0);
}

void CylinderDistribution::scale(double factor) noexcept {
    for (auto& c : cells_) c *= factor;
}

void CylinderDistribution::accumulate(const CylinderDistribution& other, double weight) {
    if (other.length_ != length_ || other.alphabet_ != alphabet_)
        fail(ErrorKind::domain, "accumulating tables of different shape");
    for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] += weight * other.cells_[i];
}

double tv_distance(const CylinderDistribution& a, const CylinderDistribution& b) {
    if (a.length() != b.length()) fail(ErrorKind::domain, "tv_distance on different word lengths");
    if (a.alphabet() != b.alphabet()) fail(ErrorKind::structural, "tv_distance on different alphabets");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
    return 0.5 * sum;
}

}  // namespace cesaro

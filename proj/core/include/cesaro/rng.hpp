#pragma once

#include <cstdint>
#include <random>

namespace cesaro {

/// One reproducible random stream per (seed, stream index).
///
/// The engine is std::mt19937_64 seeded through std::seed_seq with the four
/// 32-bit words (seed_lo, seed_hi, index_lo, index_hi); both are fully
/// specified by the C++ standard. uniform() takes the top 53 bits of one
/// engine output and scales by 2^-53, giving a value in [0, 1).
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t index) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
        engine_.seed(seq);
    }

    double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform index in [0, n): floor(uniform() * n).
    std::size_t below(std::size_t n) noexcept {
        const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace cesaro

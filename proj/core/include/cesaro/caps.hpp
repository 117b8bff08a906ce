#pragma once

#include <cstdint>

namespace cesaro {

/// Desk-scale guardrails shared by every enumerating or dynamic-programming
/// operation. Exceeding a cap raises ErrorKind::resource instead of degrading.
struct Caps {
    std::uint64_t enumeration = 1'000'000;  // words held in one table
    std::uint64_t work = 200'000'000;       // |A|^(m+1) * (n+m) for the exact engine
    std::uint64_t brute = 20'000'000;       // allowed words enumerated by the oracle
};

}  // namespace cesaro

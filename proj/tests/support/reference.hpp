#pragma once

#include <Eigen/Dense>

#include "cesaro/measure.hpp"
#include "cesaro/shift.hpp"

namespace cesaro::testing {

/// Full 2-shift over Z2.
inline SubgroupShift full_shift() {
    return validate_subgroup_shift(GroupSpec(2, {1}), IncidenceMatrix(2, {1, 1, 1, 1}));
}

/// Z2 x Z2 with (a,b) -> (c,d) allowed iff c = b.
inline SubgroupShift two_block() {
    std::vector<std::uint8_t> bits(16, 0);
    for (Symbol g = 0; g < 4; ++g)
        for (Symbol h = 0; h < 4; ++h) bits[g * 4 + h] = (h >> 1) == (g & 1) ? 1 : 0;
    return validate_subgroup_shift(GroupSpec(2, {1, 1}), IncidenceMatrix(4, bits));
}

/// i.i.d. Bernoulli(0.7) on the full 2-shift.
inline MarkovMeasure bernoulli07() {
    Eigen::MatrixXd P(2, 2);
    P << 0.3, 0.7, 0.3, 0.7;
    return validate_measure(full_shift(), P);
}

/// A genuinely Markov (non i.i.d.) measure on the full 2-shift.
inline MarkovMeasure sticky_full() {
    Eigen::MatrixXd P(2, 2);
    P << 0.8, 0.2, 0.4, 0.6;
    return validate_measure(full_shift(), P);
}

/// From (a,b): to (b,0) with probability 0.6 and to (b,1) with 0.4.
inline MarkovMeasure two_block_measure() {
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(4, 4);
    for (Symbol g = 0; g < 4; ++g) {
        const Symbol b = g & 1;
        P(g, b * 2 + 0) = 0.6;
        P(g, b * 2 + 1) = 0.4;
    }
    return validate_measure(two_block(), P);
}

}  // namespace cesaro::testing

#pragma once

#include <optional>

#include <Eigen/Dense>

#include "cesaro/shift.hpp"

namespace cesaro {

/// A stationary Markov measure (pi, P) whose support is exactly the shift:
/// P(g,h) > 0 iff M(g,h) = 1.
class MarkovMeasure {
public:
    const SubgroupShift& shift() const noexcept { return shift_; }
    const Eigen::MatrixXd& transition() const noexcept { return P_; }
    const Eigen::VectorXd& stationary() const noexcept { return pi_; }

    double P(Symbol g, Symbol h) const { return P_(g, h); }
    double pi(Symbol g) const { return pi_(g); }

    /// mu-probability of the cylinder [w] at any position.
    double cylinder_probability(std::span<const Symbol> w) const;

    friend MarkovMeasure validate_measure(SubgroupShift shift, Eigen::MatrixXd P,
                                          std::optional<Eigen::VectorXd> pi);

private:
    MarkovMeasure(SubgroupShift shift, Eigen::MatrixXd P, Eigen::VectorXd pi)
        : shift_(std::move(shift)), P_(std::move(P)), pi_(std::move(pi)) {}

    SubgroupShift shift_;
    Eigen::MatrixXd P_;
    Eigen::VectorXd pi_;
};

/// Validates support and stochasticity. When pi is absent it is obtained from
/// a dense solve of pi (P - I) = 0 with one equation replaced by sum(pi) = 1.
MarkovMeasure validate_measure(SubgroupShift shift, Eigen::MatrixXd P,
                               std::optional<Eigen::VectorXd> pi = std::nullopt);

/// The Haar measure nu as a Markov measure (rho, L).
MarkovMeasure haar_measure(const SubgroupShift& shift);

/// Exact law of x_0 .. x_{m-1} under mu, as a table over A^m.
CylinderDistribution measure_marginal(const MarkovMeasure& mu, unsigned m, const Caps& caps = {});

}  // namespace cesaro

#include "cesaro/measure.hpp"

#include <cmath>

#include "cesaro/errors.hpp"

namespace cesaro {

namespace {
constexpr double kRowTolerance = 1e-12;
constexpr double kSuppliedPiTolerance = 1e-8;
constexpr double kSolvedPiTolerance = 1e-10;
}  // namespace

double MarkovMeasure::cylinder_probability(std::span<const Symbol> w) const {
    if (w.empty()) return 1.0;
    double p = pi_(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) p *= P_(w[i - 1], w[i]);
    return p;
}

MarkovMeasure validate_measure(SubgroupShift shift, Eigen::MatrixXd P, std::optional<Eigen::VectorXd> pi) {
    const auto n = static_cast<Eigen::Index>(shift.order());
    if (P.rows() != n || P.cols() != n)
        fail(ErrorKind::structural, "transition matrix must be " + std::to_string(n) + "x" + std::to_string(n));

    for (Eigen::Index g = 0; g < n; ++g) {
        for (Eigen::Index h = 0; h < n; ++h) {
            const double v = P(g, h);
            if (!std::isfinite(v) || v < 0.0)
                fail(ErrorKind::validation, "P(" + std::to_string(g) + "," + std::to_string(h) + ") is not a probability");
            const bool edge = shift.allowed(static_cast<Symbol>(g), static_cast<Symbol>(h));
            if (edge != (v > 0.0))
                fail(ErrorKind::compatibility, "P(" + std::to_string(g) + "," + std::to_string(h) +
                                                   (edge ? ") is zero on an allowed edge" : ") is positive on a forbidden edge"));
        }
        if (std::abs(P.row(g).sum() - 1.0) > kRowTolerance)
            fail(ErrorKind::validation, "row " + std::to_string(g) + " of P does not sum to 1");
    }

    Eigen::VectorXd stat;
    if (pi) {
        stat = *pi;
        if (stat.size() != n) fail(ErrorKind::structural, "stationary vector has the wrong length");
        if ((stat.transpose() * P - stat.transpose()).cwiseAbs().maxCoeff() > kSuppliedPiTolerance ||
            std::abs(stat.sum() - 1.0) > kSuppliedPiTolerance || stat.minCoeff() <= 0.0)
            fail(ErrorKind::validation, "supplied pi is not a positive stationary probability vector for P");
    } else {
        // (P^T - I) pi = 0 with the last equation replaced by the normalization.
        Eigen::MatrixXd A = P.transpose() - Eigen::MatrixXd::Identity(n, n);
        A.row(n - 1).setOnes();
        Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
        b(n - 1) = 1.0;
        stat = A.fullPivLu().solve(b);
        if ((stat.transpose() * P - stat.transpose()).cwiseAbs().maxCoeff() > kSolvedPiTolerance || stat.minCoeff() <= 0.0)
            fail(ErrorKind::validation, "stationary solve did not produce a positive invariant vector");
    }
    return MarkovMeasure(std::move(shift), std::move(P), std::move(stat));
}

MarkovMeasure haar_measure(const SubgroupShift& shift) {
    auto k = haar_kernel(shift);
    return validate_measure(shift, std::move(k.L), std::move(k.rho));
}

CylinderDistribution measure_marginal(const MarkovMeasure& mu, unsigned m, const Caps& caps) {
    if (m == 0) fail(ErrorKind::domain, "marginal needs a positive length");
    CylinderDistribution d(mu.shift().order(), m, caps.enumeration);
    for_each_word(mu.shift(), m, [&](const Word& w) { d[d.encode(w)] = mu.cylinder_probability(w); });
    return d;
}

}  // namespace cesaro

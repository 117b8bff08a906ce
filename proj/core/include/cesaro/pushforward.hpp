#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cesaro/caps.hpp"
#include "cesaro/cylinder.hpp"
#include "cesaro/measure.hpp"
#include "cesaro/regen.hpp"

namespace cesaro {

/// Coefficients of Phi^n = (id + sigma)^n reduced mod p^s:
/// (Phi^n x)_i = sum_k coeffs[k] * x_{i+k}.
struct PhiCoefficientRow {
    std::uint64_t n = 0;
    std::vector<std::uint64_t> coeffs;
};

PhiCoefficientRow phi_row(std::uint64_t n, const GroupSpec& spec);

/// (Phi^n x)_offset .. (Phi^n x)_{offset+m-1} for a finite window x.
Word apply_phi_window(const PhiCoefficientRow& row, const GroupTable& table, std::span<const Symbol> x,
                      std::size_t offset, std::size_t m);

/// Exact law of (Phi^n x)_0^{m-1} for x ~ mu.
///
/// Forward dynamic program over positions t = 0..n+m-1. The state is the
/// current symbol x_t together with the m partial sums
/// y_j = sum_{k <= t} coeffs[k-j] * x_k; coordinate j stops changing once
/// t > j + n, and the final y is the output word. Throws ErrorKind::resource
/// when |A|^(m+1) (n+m) exceeds caps.work.
CylinderDistribution exact_marginal(const MarkovMeasure& mu, std::uint64_t n, unsigned m, const Caps& caps = {});

/// Oracle: enumerates every allowed word of length n+m, weights it by
/// pi * prod P and applies Phi = id + sigma literally n times. Throws
/// ErrorKind::resource when |G_{n+m}| exceeds caps.brute.
CylinderDistribution brute_marginal(const MarkovMeasure& mu, std::uint64_t n, unsigned m, const Caps& caps = {});

/// brute_marginal in exact rational arithmetic, with the entries of (pi, P)
/// taken as the exact binary values of their doubles. Cells follow
/// CylinderDistribution codes.
std::vector<boost::multiprecision::cpp_rational> brute_marginal_rational(const MarkovMeasure& mu, std::uint64_t n,
                                                                         unsigned m, const Caps& caps = {});

struct MonteCarloOptions {
    std::uint64_t seed = 1;
    /// Trial t uses sampler stream first_stream + t.
    std::uint64_t first_stream = 0;
    /// Window start i for (Phi^n x)_i^{i+m-1}.
    std::size_t offset = 0;
};

/// Empirical law of (Phi^n x)_i^{i+m-1} over `trials` regenerative paths.
CylinderDistribution mc_marginal(const RegenSampler& sampler, std::uint64_t n, unsigned m, std::size_t trials,
                                 const MonteCarloOptions& options = {}, const Caps& caps = {});

}  // namespace cesaro

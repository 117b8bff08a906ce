#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cesaro/caps.hpp"
#include "cesaro/cylinder.hpp"
#include "cesaro/measure.hpp"

namespace cesaro {

/// Which iterates n enter a Cesaro average.
struct Subsequence {
    enum class Kind {
        all,       // every n
        power,     // p^a N
        m0,        // M_0(a)
        residue,   // n = j (mod p^a)
        m0_shift,  // M_j = M_0(a) + j
    };

    Kind kind = Kind::all;
    std::size_t a = 0;
    std::uint64_t j = 0;

    bool contains(std::uint64_t n, std::uint32_t p) const;
    /// Text form accepted by parse: all | pa:<a> | m0:<a> | res:<j>,<a> | mj:<j>,<a>.
    std::string tag() const;
    /// Throws ErrorKind::domain on malformed text.
    static Subsequence parse(const std::string& text);
};

enum class Engine { exact, mc };

struct CesaroOptions {
    Engine engine = Engine::exact;
    Caps caps{};
    std::size_t mc_trials = 20000;
    std::uint64_t seed = 1;
    std::optional<double> alpha;
};

struct CesaroEntry {
    std::uint64_t n = 0;
    double tv_n = 0.0;       // TV(law of (Phi^n x)_0^{m-1}, nu^(m))
    double cesaro_tv = 0.0;  // TV(running average through n, nu^(m))
};

struct CesaroReport {
    unsigned m = 1;
    std::uint64_t N = 0;
    std::string subsequence;
    std::vector<CesaroEntry> per_n;
    /// Average of the included marginals; all zeros when per_n is empty.
    CylinderDistribution mean;

    bool empty() const noexcept { return per_n.empty(); }
    /// cesaro_tv after the last included n (0 when empty).
    double final_tv() const noexcept { return per_n.empty() ? 0.0 : per_n.back().cesaro_tv; }
};

/// Walks n over the subsequence intersected with [0, N), accumulating the
/// running mean of the m-window marginals and its distance to nu^(m). The
/// exact engine refuses (ErrorKind::resource) when the largest n breaks the
/// work cap; the mc engine estimates each marginal from fresh streams.
CesaroReport cesaro_scan(const MarkovMeasure& mu, unsigned m, std::uint64_t N, const Subsequence& subsequence,
                         const CesaroOptions& options = {});

/// Cesaro means over the residue classes n = j (mod p^a), j < p^a, their
/// plain average, and the all-n mean over the same horizon. When p^a divides
/// N the average equals the all-n mean.
struct ResidueDecomposition {
    std::uint64_t N = 0;
    std::size_t a = 0;
    std::vector<CesaroReport> classes;
    CylinderDistribution average;
    CesaroReport all;
    /// TV(average, all.mean).
    double gap = 0.0;
};

ResidueDecomposition residue_decomposition(const MarkovMeasure& mu, unsigned m, std::uint64_t N, std::size_t a,
                                           const CesaroOptions& options = {});

}  // namespace cesaro

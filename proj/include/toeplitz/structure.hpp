#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toeplitz/builder.hpp"
#include "toeplitz/rational.hpp"
#include "toeplitz/sequence.hpp"

namespace toeplitz {

enum class PeriodicMode { declared, empirical };

// Positions of the p-periodic part inside the window. In declared mode the
// set comes from the construction records (steps whose period divides p);
// the empirical set relaxes this to "no visible violation in the window"
// and is therefore a superset.
std::vector<std::int64_t> periodic_part(const PartialFilling& filling, std::int64_t p,
                                        PeriodicMode mode);
std::vector<std::int64_t> periodic_part_empirical(const Sequence& x, std::int64_t p);

struct LevelDensity {
    std::size_t k = 0;
    std::int64_t period = 0;
    Rat per_density;          // density of Per_{p_k}, exact on the aligned prefix
    std::int64_t aligned_prefix = 0;
    std::int64_t remainder_cells = 0;  // window cells beyond the aligned prefix
};

struct DensityReport {
    std::string subject;
    std::int64_t window = 0;
    std::vector<LevelDensity> levels;   // nondecreasing per_density
    Rat defect;                         // d = 1 - density of the largest declared periodic part
    Rat aperiodic_density;              // in-window estimate (cells not covered by in-window periods)
    double banach_upper = 0.0;          // max/min sliding averages of the aperiodic indicator
    double banach_lower = 0.0;
    std::int64_t banach_subwindow = 0;

    std::string to_text() const;
    std::string to_csv() const;         // rows k,p_k,density
};

DensityReport regularity_defect(const PartialFilling& filling, std::int64_t banach_subwindow = 0);

// Subsequence of x along the sorted position set. For fillings, reading an
// unfilled cell is an error.
Sequence aperiodic_readout(const Sequence& x, const std::vector<std::int64_t>& aper);
Sequence aperiodic_readout(const PartialFilling& filling, const std::vector<std::int64_t>& aper);

// Rebuilds a readout filling from a sequence and its initial-position
// indicator: the k-th one of z marks n_k and its residue class mod p_k
// carries x's symbols. Throws when the class symbols disagree with x.
PartialFilling filling_from_indicator(const Sequence& x, const Sequence& z, const Scale& scale);

// Density report from a bare sequence: per-level empirical periodic parts
// (finite-window upper approximations of the declared sets).
DensityReport empirical_density_report(const Sequence& x, const Scale& scale,
                                       std::int64_t banach_subwindow = 0);

}  // namespace toeplitz

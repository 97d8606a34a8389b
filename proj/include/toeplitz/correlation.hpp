#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "toeplitz/rational.hpp"
#include "toeplitz/sequence.hpp"

namespace toeplitz {

class PartialFilling;
struct MobiusTable;

// Sample points n_1 < ... < n_T for partial Cesaro averages. Geometric
// spacing by default so long windows cost one pass, not T passes.
struct SampleSchedule {
    std::int64_t first = 10;
    std::int64_t factor = 2;                      // n, 2n, 4n, ...
    std::vector<std::int64_t> explicit_points;    // overrides the rule when nonempty

    std::vector<std::int64_t> points(std::int64_t n) const;
};

// Partial averages A_n = (1/n) sum_{i<=n} xi(i) eta(i) on the sampled n.
// Sums of integer-valued sequences are accumulated exactly in 64 bits, so
// the rational view is exact wherever it is exposed.
struct CorrelationSeries {
    std::vector<std::int64_t> sample_points;
    std::vector<std::int64_t> sums;      // integer partial sums at the sample points
    std::vector<double> averages;

    double last_average() const { return averages.back(); }
    Rat exact_average(std::size_t i) const { return Rat(sums[i], sample_points[i]); }
    // min/max of the averages over the trailing fraction of sample points
    std::pair<double, double> tail_range(double fraction = 0.25) const;
};

CorrelationSeries correlate(const Sequence& xi, const Sequence& eta,
                            const SampleSchedule& schedule = {});

// Eq-style strong-correlation check for a mobius readout filling: measures
// A_n for x against mu and compares with 6/pi^2 - 2*rho, where rho is the
// certified interval for the period-reciprocal sum of the scale. Refuses
// scales whose rho can reach 3/pi^2.
struct StrongCorrelation {
    double average = 0.0;          // A_n
    double bound = 0.0;            // 6/pi^2 - 2*rho_upper
    double rho_lower = 0.0;
    double rho_upper = 0.0;
    double tolerance = 0.0;        // finite-n slack applied to `holds`
    bool holds = false;
    std::int64_t initial_sum = 0;      // sum of x(i)mu(i) over initial positions
    std::int64_t repeated_sum = 0;     // same over repeated positions
};

StrongCorrelation strong_correlation_check(const PartialFilling& filling, const MobiusTable& table,
                                           std::int64_t n, double tolerance = 0.09);

}  // namespace toeplitz

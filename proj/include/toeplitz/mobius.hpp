#pragma once

#include <cstdint>
#include <vector>

#include "toeplitz/correlation.hpp"
#include "toeplitz/rational.hpp"
#include "toeplitz/sequence.hpp"

namespace toeplitz {

// mu(n) for 1 <= n <= n_max, one signed byte per value.
struct MobiusTable {
    std::int64_t n_max = 0;
    std::vector<std::int8_t> values;  // values[n], index 0 unused

    std::int8_t mu(std::int64_t n) const { return values[static_cast<std::size_t>(n)]; }
    Sequence to_sequence() const { return Sequence(values.begin() + 1, values.end()); }
};

// Default cap on the segment size, in elements.
inline constexpr std::int64_t kMaxSieveSegment = std::int64_t(1) << 26;

// Segmented sieve for the Mobius function. The output is independent of the
// segment size; segments are sieved on `threads` workers over disjoint
// ranges. Segments above `segment_cap` are rejected outright.
MobiusTable mobius_sieve(std::int64_t n_max, std::int64_t segment_size = std::int64_t(1) << 20,
                         unsigned threads = 1, std::int64_t segment_cap = kMaxSieveSegment);

std::vector<std::int64_t> primes_up_to(std::int64_t limit);

// Mertens partial sum M(n).
std::int64_t mertens(const MobiusTable& table, std::int64_t n);

// #{i <= n : |mu(i)| = 1} / n, exact.
Rat squarefree_density(const MobiusTable& table, std::int64_t n);

// Cesaro averages of mu against `pattern` repeated with its own length as
// period, sampled on `schedule` (see correlation.hpp) up to n.
CorrelationSeries periodic_correlation(const MobiusTable& table, const Sequence& pattern,
                                       std::int64_t n, const SampleSchedule& schedule = {});

// Lower estimate for prod_{j>=k} (1 - 1/q_j^2) over the squared primes,
// against the telescoping bound 1 - 1/q_k. `n_partial` is the index of the
// last prime-square factor multiplied explicitly; the rest of the product is
// replaced by its closed-form lower bound q/(q+1) taken at q = q_{n_partial}.
struct TailProductBound {
    double lower_estimate = 0.0;
    double bound = 0.0;
    bool holds = false;
};
TailProductBound tail_product_bound(std::int64_t k, std::int64_t n_partial);
TailProductBound tail_product_bound(std::int64_t k, std::int64_t n_partial,
                                    const std::vector<std::int64_t>& primes);

// Arithmetic progression a + j*p, membership x >= a with x = a (mod p).
struct Progression {
    std::int64_t period = 1;
    std::int64_t offset = 0;
};

// Density of {k <= n : k*M + r hits some progression} versus the divisor
// bound sum 1/p'_j with p'_j = p_j / gcd(p_j, M).
struct HitDensity {
    Rat empirical;
    double bound = 0.0;
};
HitDensity progression_hit_density(std::int64_t M, std::int64_t r,
                                   const std::vector<Progression>& progressions, std::int64_t n);

// Exact check that progressions with pairwise coprime periods are
// independent: density of the intersection over a full common period equals
// the product of 1/p_i. Throws if the periods are not pairwise coprime.
bool density_independence_check(const std::vector<std::int64_t>& periods,
                                const std::vector<std::int64_t>& residues);

}  // namespace toeplitz

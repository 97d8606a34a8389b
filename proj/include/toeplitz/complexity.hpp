#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "toeplitz/builder.hpp"
#include "toeplitz/rational.hpp"
#include "toeplitz/sequence.hpp"

namespace toeplitz {

struct CensusReport {
    std::int64_t block_length = 0;
    std::int64_t prefix_length = 0;
    std::int64_t count = 0;
    std::optional<double> zero_cap;  // set when counting only blocks with zero-frequency <= cap

    double entropy_estimate() const;  // log2(count)/n
};

// Distinct blocks of length n in the prefix of x. Blocks over alphabets of
// at most 4 symbols with n <= 32 are packed 2 bits per symbol, so the
// fingerprint is the block itself; longer blocks fall back to a rolling
// hash with an exact audit of colliding pairs.
CensusReport block_census(const Sequence& x, std::int64_t n,
                          std::optional<double> zero_cap = std::nullopt);

// Zero frequency of z[1, p_k] against the closed form
// (sum_{k'<k} 1/p_{k'}) - (k-1)/p_k, both exact.
struct ZeroFrequency {
    Rat measured;
    Rat formula;
    bool equal = false;
};
ZeroFrequency verify_zero_frequency(const PartialFilling& filling, std::size_t k);

// Every block B_{k,j} = z[j p_k + 1, (j+1) p_k] must keep the zeros of
// B_{k,0}: zeros may only be added, ones only removed.
bool verify_replacement(const Sequence& z, std::int64_t p_k, std::int64_t j_max);
bool verify_replacement(const PartialFilling& filling, std::size_t k, std::int64_t j_max);

// Steps after which the readout prefix shows "configuration C": filled runs
// of strictly decreasing lengths separated by single unfilled cells,
// starting at position 1, the first run ending with the symbol placed at
// that very step, and at least one unfilled cell after the last run (a
// longer unfilled tail is fine). Returned indices additionally satisfy
// k_{m+1} > k_m + m, taking the first qualifying occurrence for each m.
struct ClaimIndices {
    std::vector<std::int64_t> k;      // k[0] = k_1, ...
    bool complete = false;            // found all m <= m_max
    std::int64_t steps_simulated = 0;
};
ClaimIndices find_claim_indices(const Scale& scale, std::size_t m_max, std::int64_t window);

// First position of a block of m isolated ones, each gap and both flanks
// made of at least m zeros. Returns the position of the first 1 of the
// match, or nullopt.
std::optional<std::int64_t> sparse_pattern_search(const Sequence& z, std::int64_t m);

// Census curves of y versus x_y for the example construction.
struct EntropyContrast {
    std::vector<std::int64_t> lengths;
    std::vector<std::int64_t> census_y;
    std::vector<std::int64_t> census_x;
};
EntropyContrast example_7_2_entropy_contrast(const Example72& ex, std::int64_t n_min,
                                             std::int64_t n_max);

}  // namespace toeplitz

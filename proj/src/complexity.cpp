#include "toeplitz/complexity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace toeplitz {

double CensusReport::entropy_estimate() const {
    if (count <= 0 || block_length <= 0) return 0.0;
    return std::log2(static_cast<double>(count)) / static_cast<double>(block_length);
}

namespace {

// Distinct symbols, in first-appearance order, mapped through a 256-slot table.
struct AlphabetMap {
    std::array<int, 256> index;
    int size = 0;

    explicit AlphabetMap(const Sequence& x) {
        index.fill(-1);
        for (auto s : x) {
            auto u = static_cast<unsigned char>(s);
            if (index[u] < 0) index[u] = size++;
        }
    }
    int of(std::int8_t s) const { return index[static_cast<unsigned char>(s)]; }
};

CensusReport census_packed(const Sequence& x, std::int64_t n, std::optional<double> zero_cap,
                           const AlphabetMap& am) {
    const std::int64_t len = static_cast<std::int64_t>(x.size());
    const int shift = 2 * static_cast<int>(n - 1);
    std::uint64_t code = 0;
    std::int64_t zeros = 0;
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(1024);

    for (std::int64_t i = 0; i < len; ++i) {
        code >>= 2;
        code |= static_cast<std::uint64_t>(am.of(x[static_cast<std::size_t>(i)])) << shift;
        zeros += (x[static_cast<std::size_t>(i)] == 0);
        if (i >= n) zeros -= (x[static_cast<std::size_t>(i - n)] == 0);
        if (i >= n - 1) {
            if (!zero_cap || static_cast<double>(zeros) <=
                                 *zero_cap * static_cast<double>(n) + 1e-9)
                seen.insert(code);
        }
    }
    CensusReport rep;
    rep.block_length = n;
    rep.prefix_length = len;
    rep.count = static_cast<std::int64_t>(seen.size());
    rep.zero_cap = zero_cap;
    return rep;
}

CensusReport census_hashed(const Sequence& x, std::int64_t n, std::optional<double> zero_cap) {
    const std::int64_t len = static_cast<std::int64_t>(x.size());
    constexpr std::uint64_t kMul = 0x9e3779b97f4a7c15ULL;
    // base^n for the rolling update
    std::uint64_t top = 1;
    for (std::int64_t i = 0; i < n; ++i) top *= kMul;

    std::uint64_t h = 0;
    std::int64_t zeros = 0;
    // fingerprint -> first block start (0-based), for the collision audit
    std::unordered_map<std::uint64_t, std::int64_t> seen;
    seen.reserve(1024);
    std::int64_t audited = 0;

    for (std::int64_t i = 0; i < len; ++i) {
        h = h * kMul + static_cast<std::uint64_t>(static_cast<unsigned char>(x[static_cast<std::size_t>(i)])) + 1;
        zeros += (x[static_cast<std::size_t>(i)] == 0);
        if (i >= n) {
            h -= top * (static_cast<std::uint64_t>(static_cast<unsigned char>(x[static_cast<std::size_t>(i - n)])) + 1);
            zeros -= (x[static_cast<std::size_t>(i - n)] == 0);
        }
        if (i >= n - 1) {
            if (zero_cap && static_cast<double>(zeros) >
                                *zero_cap * static_cast<double>(n) + 1e-9)
                continue;
            std::int64_t start = i - n + 1;
            auto [it, inserted] = seen.emplace(h, start);
            if (!inserted && ((audited++ & 63) == 0)) {
                // exact re-comparison of a sample of repeated fingerprints
                if (!std::equal(x.begin() + it->second, x.begin() + it->second + n,
                                x.begin() + start))
                    throw std::runtime_error("block_census: fingerprint collision detected");
            }
        }
    }
    CensusReport rep;
    rep.block_length = n;
    rep.prefix_length = len;
    rep.count = static_cast<std::int64_t>(seen.size());
    rep.zero_cap = zero_cap;
    return rep;
}

}  // namespace

CensusReport block_census(const Sequence& x, std::int64_t n, std::optional<double> zero_cap) {
    if (n < 1) throw std::invalid_argument("block_census: block length must be positive");
    if (n > static_cast<std::int64_t>(x.size()))
        throw std::invalid_argument("block_census: block length exceeds the prefix");
    AlphabetMap am(x);
    if (am.size <= 4 && n <= 32) return census_packed(x, n, zero_cap, am);
    return census_hashed(x, n, zero_cap);
}

ZeroFrequency verify_zero_frequency(const PartialFilling& filling, std::size_t k) {
    if (k == 0 || k > filling.step_count())
        throw std::invalid_argument("verify_zero_frequency: no such step");
    const auto& rec = filling.step_record(k);
    if (rec.period <= 0 || rec.period > filling.window())
        throw std::invalid_argument("verify_zero_frequency: p_k must lie inside the window");
    const std::int64_t p_k = rec.period;
    if (filling.min_unfilled() <= p_k)
        throw std::runtime_error("verify_zero_frequency: [1, p_k] not fully filled");

    std::int64_t zeros = 0;
    for (std::int64_t pos = 1; pos <= p_k; ++pos)
        if (!filling.initial(pos)) ++zeros;

    // (sum_{k'<k} 1/p_{k'}) - (k-1)/p_k, over the common denominator p_k
    std::int64_t num = 0;
    for (std::size_t kp = 1; kp < k; ++kp) {
        auto p = filling.scale().period_at(kp);
        if (!p) throw std::logic_error("verify_zero_frequency: scale shorter than step list");
        num += p_k / *p;
    }
    num -= static_cast<std::int64_t>(k) - 1;

    ZeroFrequency out;
    out.measured = Rat(zeros, p_k);
    out.formula = Rat(num, p_k);
    out.equal = out.measured == out.formula;
    return out;
}

bool verify_replacement(const Sequence& z, std::int64_t p_k, std::int64_t j_max) {
    if (p_k < 1) throw std::invalid_argument("verify_replacement: period must be positive");
    if ((j_max + 1) * p_k > static_cast<std::int64_t>(z.size()))
        throw std::invalid_argument("verify_replacement: window too short for j_max");
    for (std::int64_t i = 1; i <= p_k; ++i) {
        if (at1(z, i) != 0) continue;
        for (std::int64_t j = 1; j <= j_max; ++j)
            if (at1(z, j * p_k + i) != 0) return false;
    }
    return true;
}

bool verify_replacement(const PartialFilling& filling, std::size_t k, std::int64_t j_max) {
    if (k == 0 || k > filling.step_count())
        throw std::invalid_argument("verify_replacement: no such step");
    const auto& rec = filling.step_record(k);
    if (rec.period <= 0) throw std::invalid_argument("verify_replacement: p_k beyond the window");
    const std::int64_t p_k = rec.period;
    if (filling.min_unfilled() <= (j_max + 1) * p_k)
        throw std::runtime_error("verify_replacement: window not filled up to (j_max+1) p_k");
    for (std::int64_t i = 1; i <= p_k; ++i) {
        if (filling.initial(i)) continue;  // z = 0 here
        for (std::int64_t j = 1; j <= j_max; ++j)
            if (filling.initial(j * p_k + i)) return false;
    }
    return true;
}

namespace {

// Tests whether the prefix shows configuration C with `needed` runs right
// after a step that filled position n_k. Run 1 must end exactly at n_k.
bool configuration_c(const PartialFilling& f, std::int64_t n_k, std::size_t needed) {
    const std::int64_t N = f.window();
    if (n_k >= N) return false;                 // no room for the trailing hole
    if (f.filled(n_k + 1)) return false;        // run 1 extends past this step's symbol
    std::int64_t prev_len = n_k;
    std::int64_t pos = n_k + 1;                 // always an unfilled cell
    for (std::size_t runs = 1; runs < needed; ++runs) {
        if (pos + 1 > N || !f.filled(pos + 1)) return false;  // separator must be single
        std::int64_t start = pos + 1, end = start;
        while (end + 1 <= N && f.filled(end + 1)) ++end;
        if (end == N) return false;             // window must end beyond the last hole of C
        std::int64_t len = end - start + 1;
        if (len >= prev_len) return false;      // strictly decreasing
        prev_len = len;
        pos = end + 1;
    }
    return true;  // trailing unfilled run of any length is acceptable
}

}  // namespace

ClaimIndices find_claim_indices(const Scale& scale, std::size_t m_max, std::int64_t window) {
    if (m_max == 0) throw std::invalid_argument("find_claim_indices: m_max must be positive");
    ReadoutBuilder b(scale, window);
    ClaimIndices out;
    while (!b.done() && out.k.size() < m_max) {
        std::int64_t n_k = b.step(0);
        std::int64_t k = static_cast<std::int64_t>(b.steps_taken());
        // spacing rule k_{m+1} > k_m + m; thins out early hits
        if (!out.k.empty() && k <= out.k.back() + static_cast<std::int64_t>(out.k.size()))
            continue;
        if (configuration_c(b.filling(), n_k, out.k.size() + 1)) out.k.push_back(k);
    }
    out.steps_simulated = static_cast<std::int64_t>(b.steps_taken());
    out.complete = out.k.size() == m_max;
    return out;
}

std::optional<std::int64_t> sparse_pattern_search(const Sequence& z, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("sparse_pattern_search: m must be positive");
    const std::int64_t len = static_cast<std::int64_t>(z.size());
    std::vector<std::int64_t> ones;
    for (std::int64_t i = 1; i <= len; ++i)
        if (at1(z, i) != 0) ones.push_back(i);

    const std::int64_t count = static_cast<std::int64_t>(ones.size());
    for (std::int64_t i = 0; i + m <= count; ++i) {
        // flank of m zeros before the first 1
        if (ones[static_cast<std::size_t>(i)] - m < 1) continue;
        if (i > 0 && ones[static_cast<std::size_t>(i - 1)] >= ones[static_cast<std::size_t>(i)] - m)
            continue;
        bool ok = true;
        for (std::int64_t j = 0; j + 1 < m; ++j) {
            std::int64_t gap = ones[static_cast<std::size_t>(i + j + 1)] -
                               ones[static_cast<std::size_t>(i + j)] - 1;
            if (gap < m) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        // flank of m zeros after the last 1
        std::int64_t last = ones[static_cast<std::size_t>(i + m - 1)];
        if (last + m > len) continue;
        if (i + m < count && ones[static_cast<std::size_t>(i + m)] <= last + m) continue;
        return ones[static_cast<std::size_t>(i)];
    }
    return std::nullopt;
}

EntropyContrast example_7_2_entropy_contrast(const Example72& ex, std::int64_t n_min,
                                             std::int64_t n_max) {
    if (n_min < 1 || n_max < n_min)
        throw std::invalid_argument("example_7_2_entropy_contrast: bad length range");
    EntropyContrast out;
    Sequence x = ex.filling.to_sequence();
    for (std::int64_t n = n_min; n <= n_max; ++n) {
        out.lengths.push_back(n);
        out.census_y.push_back(block_census(ex.y, n).count);
        out.census_x.push_back(block_census(x, n).count);
    }
    return out;
}

}  // namespace toeplitz

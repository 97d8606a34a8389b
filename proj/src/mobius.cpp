#include "toeplitz/mobius.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace toeplitz {

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
    std::vector<std::int64_t> primes;
    if (limit < 2) return primes;
    std::vector<char> composite(static_cast<std::size_t>(limit) + 1, 0);
    for (std::int64_t i = 2; i * i <= limit; ++i)
        if (!composite[static_cast<std::size_t>(i)])
            for (std::int64_t j = i * i; j <= limit; j += i)
                composite[static_cast<std::size_t>(j)] = 1;
    for (std::int64_t i = 2; i <= limit; ++i)
        if (!composite[static_cast<std::size_t>(i)]) primes.push_back(i);
    return primes;
}

namespace {

// Sieves mu over [lo, hi] (inclusive) given the base primes up to sqrt(hi).
void sieve_segment(std::int64_t lo, std::int64_t hi, const std::vector<std::int64_t>& base_primes,
                   std::int8_t* out) {
    const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
    std::vector<std::int8_t> mu(len, 1);
    std::vector<std::int64_t> rem(len);
    std::iota(rem.begin(), rem.end(), lo);

    for (std::int64_t p : base_primes) {
        if (p * p > hi) break;
        for (std::int64_t m = ((lo + p - 1) / p) * p; m <= hi; m += p) {
            std::size_t i = static_cast<std::size_t>(m - lo);
            mu[i] = static_cast<std::int8_t>(-mu[i]);
            rem[i] /= p;
        }
        std::int64_t p2 = p * p;
        for (std::int64_t m = ((lo + p2 - 1) / p2) * p2; m <= hi; m += p2)
            mu[static_cast<std::size_t>(m - lo)] = 0;
    }
    for (std::size_t i = 0; i < len; ++i) {
        // one prime factor above sqrt(hi) may remain
        if (mu[i] != 0 && rem[i] > 1) mu[i] = static_cast<std::int8_t>(-mu[i]);
        out[i] = mu[i];
    }
}

}  // namespace

MobiusTable mobius_sieve(std::int64_t n_max, std::int64_t segment_size, unsigned threads,
                         std::int64_t segment_cap) {
    if (n_max < 1) throw std::invalid_argument("mobius_sieve: n_max must be positive");
    if (segment_size < 1) throw std::invalid_argument("mobius_sieve: segment size must be positive");
    if (segment_size > segment_cap)
        throw std::invalid_argument("mobius_sieve: segment size exceeds the memory budget");
    if (threads == 0) threads = 1;

    MobiusTable table;
    table.n_max = n_max;
    table.values.assign(static_cast<std::size_t>(n_max) + 1, 0);

    std::int64_t root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n_max)));
    while ((root + 1) * (root + 1) <= n_max) ++root;
    const auto base_primes = primes_up_to(root);

    const std::int64_t n_segments = (n_max + segment_size - 1) / segment_size;
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::int64_t s = next.fetch_add(1);
            if (s >= n_segments) return;
            std::int64_t lo = 1 + s * segment_size;
            std::int64_t hi = std::min(n_max, lo + segment_size - 1);
            sieve_segment(lo, hi, base_primes, table.values.data() + lo);
        }
    };
    if (threads == 1 || n_segments == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(n_segments));
        pool.reserve(n);
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    table.values[1] = 1;
    return table;
}

std::int64_t mertens(const MobiusTable& table, std::int64_t n) {
    if (n < 1 || n > table.n_max) throw std::invalid_argument("mertens: n out of table range");
    std::int64_t sum = 0;
    for (std::int64_t i = 1; i <= n; ++i) sum += table.values[static_cast<std::size_t>(i)];
    return sum;
}

Rat squarefree_density(const MobiusTable& table, std::int64_t n) {
    if (n < 1 || n > table.n_max) throw std::invalid_argument("squarefree_density: n out of table range");
    std::int64_t count = 0;
    for (std::int64_t i = 1; i <= n; ++i)
        if (table.values[static_cast<std::size_t>(i)] != 0) ++count;
    return Rat(count, n);
}

CorrelationSeries periodic_correlation(const MobiusTable& table, const Sequence& pattern,
                                       std::int64_t n, const SampleSchedule& schedule) {
    if (pattern.empty()) throw std::invalid_argument("periodic_correlation: empty pattern");
    if (n < 1 || n > table.n_max)
        throw std::invalid_argument("periodic_correlation: n out of table range");
    const std::size_t L = pattern.size();
    auto points = schedule.points(n);

    CorrelationSeries series;
    series.sample_points = points;
    std::int64_t sum = 0;
    std::size_t next_point = 0;
    for (std::int64_t i = 1; i <= n && next_point < points.size(); ++i) {
        sum += static_cast<std::int64_t>(table.values[static_cast<std::size_t>(i)]) *
               pattern[static_cast<std::size_t>((i - 1) % L)];
        while (next_point < points.size() && points[next_point] == i) {
            series.sums.push_back(sum);
            series.averages.push_back(static_cast<double>(sum) / static_cast<double>(i));
            ++next_point;
        }
    }
    return series;
}

TailProductBound tail_product_bound(std::int64_t k, std::int64_t n_partial,
                                    const std::vector<std::int64_t>& primes) {
    if (k < 1) throw std::invalid_argument("tail_product_bound: k must be positive");
    if (n_partial < k) throw std::invalid_argument("tail_product_bound: n_partial must be >= k");
    if (static_cast<std::size_t>(n_partial) > primes.size())
        throw std::invalid_argument("tail_product_bound: prime list too short");

    long double partial = 1.0L;
    for (std::int64_t j = k; j <= n_partial; ++j) {
        long double q = static_cast<long double>(primes[static_cast<std::size_t>(j - 1)]);
        partial *= (1.0L - 1.0L / (q * q));
    }
    // factors beyond the cutoff: prod_{n>=a}(1-1/n^2) = (a-1)/a, taken at
    // a = q_{n_partial}+1 since the remaining primes are at least that large
    long double q_last = static_cast<long double>(primes[static_cast<std::size_t>(n_partial - 1)]);
    long double tail = q_last / (q_last + 1.0L);

    TailProductBound out;
    out.lower_estimate = static_cast<double>(partial * tail);
    out.bound = 1.0 - 1.0 / static_cast<double>(primes[static_cast<std::size_t>(k - 1)]);
    // at n_partial = k the two sides coincide exactly; allow the rounding tie
    out.holds = out.lower_estimate >= out.bound - 1e-12;
    return out;
}

TailProductBound tail_product_bound(std::int64_t k, std::int64_t n_partial) {
    if (k < 1) throw std::invalid_argument("tail_product_bound: k must be positive");
    if (n_partial < k) throw std::invalid_argument("tail_product_bound: n_partial must be >= k");
    // p_n < n (ln n + ln ln n) for n >= 6
    std::int64_t n = std::max<std::int64_t>(n_partial, 6);
    double bound = static_cast<double>(n) * (std::log(static_cast<double>(n)) +
                                             std::log(std::log(static_cast<double>(n))));
    auto primes = primes_up_to(static_cast<std::int64_t>(bound) + 16);
    while (primes.size() < static_cast<std::size_t>(n_partial))
        primes = primes_up_to(static_cast<std::int64_t>(bound *= 2));
    return tail_product_bound(k, n_partial, primes);
}

HitDensity progression_hit_density(std::int64_t M, std::int64_t r,
                                   const std::vector<Progression>& progressions, std::int64_t n) {
    if (M < 1) throw std::invalid_argument("progression_hit_density: M must be positive");
    if (r < 0) throw std::invalid_argument("progression_hit_density: r must be nonnegative");
    if (n < 1) throw std::invalid_argument("progression_hit_density: n must be positive");
    HitDensity out;
    out.empirical = Rat(0, 1);
    out.bound = 0.0;
    if (progressions.empty()) return out;

    for (const auto& a : progressions) {
        if (a.period < 1 || a.offset < 0)
            throw std::invalid_argument("progression_hit_density: bad progression");
        out.bound += 1.0 / (static_cast<double>(a.period) /
                            static_cast<double>(std::gcd(a.period, M)));
    }
    std::int64_t hits = 0;
    for (std::int64_t kk = 1; kk <= n; ++kk) {
        std::int64_t x = kk * M + r;
        for (const auto& a : progressions) {
            if (x >= a.offset && (x - a.offset) % a.period == 0) {
                ++hits;
                break;
            }
        }
    }
    out.empirical = Rat(hits, n);
    return out;
}

bool density_independence_check(const std::vector<std::int64_t>& periods,
                                const std::vector<std::int64_t>& residues) {
    if (periods.empty()) throw std::invalid_argument("density_independence_check: empty period list");
    if (periods.size() != residues.size())
        throw std::invalid_argument("density_independence_check: periods/residues size mismatch");
    for (auto p : periods)
        if (p < 1) throw std::invalid_argument("density_independence_check: periods must be positive");
    for (std::size_t i = 0; i < periods.size(); ++i)
        for (std::size_t j = i + 1; j < periods.size(); ++j)
            if (std::gcd(periods[i], periods[j]) != 1)
                throw std::invalid_argument("density_independence_check: periods must be pairwise coprime");

    __int128 full = 1;
    for (auto p : periods) {
        full *= p;
        if (full > (std::int64_t(1) << 40))
            throw std::invalid_argument("density_independence_check: period product too large to scan");
    }
    const std::int64_t P = static_cast<std::int64_t>(full);
    std::int64_t count = 0;
    for (std::int64_t x = 1; x <= P; ++x) {
        bool in_all = true;
        for (std::size_t i = 0; i < periods.size(); ++i) {
            if (x % periods[i] != ((residues[i] % periods[i]) + periods[i]) % periods[i]) {
                in_all = false;
                break;
            }
        }
        if (in_all) ++count;
    }
    Rat expected(1, 1);
    for (auto p : periods) expected = expected * Rat(1, p);
    return Rat(count, P) == expected;
}

}  // namespace toeplitz

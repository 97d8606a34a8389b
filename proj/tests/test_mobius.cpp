#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "toeplitz/mobius.hpp"

using namespace toeplitz;

namespace {

// Independent oracle: mu by trial division, straight from the case definition.
int mu_trial_division(std::int64_t n) {
    if (n == 1) return 1;
    int factors = 0;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;  // repeated prime factor
            ++factors;
        }
    }
    if (n > 1) ++factors;
    return (factors % 2 == 0) ? 1 : -1;
}

constexpr double kSixOverPiSq = 6.0 / (std::numbers::pi * std::numbers::pi);

}  // namespace

TEST_CASE("sieve matches the trial-division oracle up to 10^4") {
    auto table = mobius_sieve(10000);
    for (std::int64_t n = 1; n <= 10000; ++n) CHECK(table.mu(n) == mu_trial_division(n));
}

TEST_CASE("case-definition spot values") {
    auto table = mobius_sieve(100);
    CHECK(table.mu(1) == 1);
    CHECK(table.mu(12) == 0);   // 12 = 2^2 * 3
    CHECK(table.mu(30) == -1);  // three distinct primes
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23}) CHECK(table.mu(p) == -1);
    CHECK(mertens(table, 10) == -1);
}

TEST_CASE("mu(n) = 0 exactly when a prime square divides n") {
    auto table = mobius_sieve(5000);
    for (std::int64_t n = 1; n <= 5000; ++n) {
        bool square_divides = false;
        for (std::int64_t p = 2; p * p <= n; ++p)
            if (n % (p * p) == 0) {
                square_divides = true;
                break;
            }
        CHECK((table.mu(n) == 0) == square_divides);
    }
}

TEST_CASE("summatory identity: sum of mu over divisors vanishes") {
    auto table = mobius_sieve(10000);
    // accumulate sum_{d | n} mu(d) for every n via the divisor lattice
    std::vector<std::int64_t> divsum(10001, 0);
    for (std::int64_t d = 1; d <= 10000; ++d)
        for (std::int64_t n = d; n <= 10000; n += d) divsum[n] += table.mu(d);
    CHECK(divsum[1] == 1);
    for (std::int64_t n = 2; n <= 10000; ++n) CHECK(divsum[n] == 0);
}

TEST_CASE("segmented output does not depend on segment size or threads") {
    auto reference = mobius_sieve(10000);
    std::mt19937_64 rng(7);
    for (std::int64_t seg : {std::int64_t(1), std::int64_t(7), std::int64_t(64),
                             std::int64_t(999), std::int64_t(10000), std::int64_t(1) << 20}) {
        auto other = mobius_sieve(10000, seg);
        CHECK(other.values == reference.values);
    }
    auto threaded = mobius_sieve(10000, 512, 3);
    CHECK(threaded.values == reference.values);
}

TEST_CASE("sieve argument validation") {
    CHECK_THROWS_AS(mobius_sieve(0), std::invalid_argument);
    CHECK_THROWS_AS(mobius_sieve(10, 0), std::invalid_argument);
    CHECK_THROWS_AS(mobius_sieve(10, kMaxSieveSegment + 1), std::invalid_argument);
    CHECK_THROWS_AS(mobius_sieve(10, 512, 1, 256), std::invalid_argument);  // tighter cap
    CHECK_NOTHROW(mobius_sieve(10, 256, 1, 256));
}

TEST_CASE("squarefree density") {
    auto table = mobius_sieve(100000);
    CHECK(squarefree_density(table, 10) == Rat(7, 10));  // 4, 8, 9 excluded
    CHECK(squarefree_density(table, 1) == Rat(1, 1));
    CHECK(std::abs(squarefree_density(table, 100000).to_double() - kSixOverPiSq) < 1e-3);
    CHECK_THROWS(squarefree_density(table, 100001));
}

TEST_CASE("periodic correlation against repeated patterns") {
    auto table = mobius_sieve(100000);

    auto c = periodic_correlation(table, Sequence{1}, 10);
    CHECK(c.sample_points.back() == 10);
    CHECK(c.sums.back() == -1);  // Mertens M(10)
    CHECK(c.exact_average(c.sample_points.size() - 1) == Rat(-1, 10));

    auto zero = periodic_correlation(table, Sequence{0}, 1000);
    for (auto s : zero.sums) CHECK(s == 0);

    // asymptotic cancellation, engineering threshold at this n
    auto big = periodic_correlation(table, Sequence{1}, 100000);
    CHECK(std::abs(big.last_average()) < 5e-3);

    CHECK_THROWS(periodic_correlation(table, Sequence{}, 10));
}

TEST_CASE("prime-square tail product against the telescoping bound") {
    auto primes = primes_up_to(1000000);

    SUBCASE("k = 1 recovers 6/pi^2 from below") {
        auto r = tail_product_bound(1, static_cast<std::int64_t>(primes.size()), primes);
        CHECK(r.lower_estimate <= kSixOverPiSq + 1e-12);
        CHECK(r.lower_estimate > kSixOverPiSq - 1e-4);
        CHECK(r.bound == doctest::Approx(0.5));
        CHECK(r.holds);
    }
    SUBCASE("k = 2 divides out the first factor") {
        auto r = tail_product_bound(2, static_cast<std::int64_t>(primes.size()), primes);
        CHECK(r.lower_estimate == doctest::Approx(kSixOverPiSq / 0.75).epsilon(1e-3));
        CHECK(r.bound == doctest::Approx(2.0 / 3.0));
        CHECK(r.holds);
    }
    SUBCASE("single factor case: 1 - 1/q^2 >= 1 - 1/q") {
        for (std::int64_t k : {1, 2, 3, 10, 50}) {
            auto r = tail_product_bound(k, k, primes);
            CHECK(r.holds);
        }
    }
    SUBCASE("holds through k = 50 at a short cutoff") {
        for (std::int64_t k = 1; k <= 50; ++k) CHECK(tail_product_bound(k, 1000, primes).holds);
    }
    SUBCASE("prime list generated on demand") {
        auto r = tail_product_bound(3, 500);
        CHECK(r.holds);
    }
    CHECK_THROWS(tail_product_bound(0, 5));
    CHECK_THROWS(tail_product_bound(5, 4));
}

TEST_CASE("progression hit density versus the divisor bound") {
    SUBCASE("2k against 3k+1: density exactly 1/3") {
        // 2k = 1 mod 3 iff k = 2 mod 3
        std::int64_t n = 3000;
        auto r = progression_hit_density(2, 0, {{3, 1}}, n);
        CHECK(r.empirical == Rat(1000, 3000));
        CHECK(r.bound == doctest::Approx(1.0 / 3.0));
    }
    SUBCASE("M=1 against the even numbers") {
        auto r = progression_hit_density(1, 0, {{2, 0}}, 10000);
        CHECK(r.empirical == Rat(1, 2));
        CHECK(r.bound == doctest::Approx(0.5));
    }
    SUBCASE("6k never odd, bound collapses to 1") {
        auto r = progression_hit_density(6, 0, {{2, 1}}, 10000);
        CHECK(r.empirical == Rat(0, 1));
        CHECK(r.bound == doctest::Approx(1.0));  // p' = 2/gcd(2,6) = 1
    }
    SUBCASE("empty progression list") {
        auto r = progression_hit_density(2, 0, {}, 100);
        CHECK(r.empirical == Rat(0, 1));
        CHECK(r.bound == 0.0);
    }
}

TEST_CASE("density independence for coprime periodic sets") {
    CHECK(density_independence_check({2, 3}, {0, 0}));
    CHECK(density_independence_check({3, 5}, {1, 2}));
    CHECK(density_independence_check({4, 9, 5}, {3, 2, 0}));
    CHECK_THROWS_AS(density_independence_check({2, 4}, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(density_independence_check({2, 3}, {0}), std::invalid_argument);
}

TEST_CASE("table serializes through the sequence payload") {
    auto table = mobius_sieve(50);
    auto seq = table.to_sequence();
    REQUIRE(seq.size() == 50);
    CHECK(seq[0] == 1);
    CHECK(seq[1] == -1);
    CHECK(seq[3] == 0);
}

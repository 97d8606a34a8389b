#include <doctest.h>

#include <random>
#include <set>

#include "toeplitz/odometer.hpp"

using namespace toeplitz;

TEST_CASE("scale spec parsing") {
    auto explicit_scale = Scale::parse("3,9,27", 1000000);
    CHECK(explicit_scale.periods() == std::vector<std::int64_t>{3, 9, 27});

    auto rule = Scale::parse("3^k", 100);
    CHECK(rule.periods() == std::vector<std::int64_t>{3, 9, 27, 81});

    auto scaled = Scale::parse("5*2^k", 100);  // p_k = 10 * 2^(k-1)
    CHECK(scaled.periods() == std::vector<std::int64_t>{10, 20, 40, 80});

    CHECK_THROWS_AS(Scale::parse("", 100), std::invalid_argument);
    CHECK_THROWS_AS(Scale::parse("2,3", 100), std::invalid_argument);      // 2 does not divide 3
    CHECK_THROWS_AS(Scale::parse("9,3", 100), std::invalid_argument);      // not increasing
    CHECK_THROWS_AS(Scale::parse("1,2", 100), std::invalid_argument);      // below 2
    CHECK_THROWS_AS(Scale::parse("3^j", 100), std::invalid_argument);
    CHECK_THROWS_AS(Scale::parse("x^k", 100), std::invalid_argument);
    CHECK_THROWS_AS(Scale::parse("10^k", 5), std::invalid_argument);       // window below p_1
}

TEST_CASE("period lookup and rule extension") {
    auto s = Scale::parse("3^k", 100);
    CHECK(s.period_at(2) == 9);
    CHECK(!s.period_at(5).has_value());  // beyond the window
    CHECK_THROWS(s.period_at(0));
    CHECK(s.contains_period(27));
    CHECK(s.contains_period(243));       // rule-consistent beyond the window
    CHECK(!s.contains_period(12));

    auto e = Scale::from_periods({7, 42, 84});
    CHECK(e.contains_period(84));
    CHECK(!e.contains_period(168));      // explicit lists do not extend
}

TEST_CASE("rho interval") {
    auto s = Scale::parse("10^k", 1000000);
    CHECK(s.rho_truncated() == Rat(111111, 1000000));
    CHECK(s.rho_tail_upper() == doctest::Approx(1.0 / 9e6));
    CHECK(s.rho_upper() > s.rho_lower());
}

TEST_CASE("successor carries like an adding machine") {
    auto s = Scale::from_periods({2, 4, 8});
    CHECK(successor({{1, 3, 7}}, s).residues == std::vector<std::int64_t>{0, 0, 0});
    CHECK(successor(zero_point(s), s).residues == std::vector<std::int64_t>{1, 1, 1});

    auto t = Scale::from_periods({3, 9});
    OdometerPoint g = zero_point(t);
    for (int i = 0; i < 9; ++i) g = successor(g, t);
    CHECK(g.residues == zero_point(t).residues);  // orbit of length p_2
}

TEST_CASE("point validation") {
    auto s = Scale::from_periods({2, 4, 8});
    CHECK_THROWS_AS(validate_point({{1, 2}}, s), std::invalid_argument);        // wrong arity
    CHECK_THROWS_AS(validate_point({{1, 2, 4}}, s), std::invalid_argument);     // 2 mod 2 != 1
    CHECK_THROWS_AS(validate_point({{0, 4, 4}}, s), std::invalid_argument);     // residue out of range
    CHECK_THROWS_AS(validate_point({{-1, 1, 1}}, s), std::invalid_argument);
    CHECK_NOTHROW(validate_point({{1, 3, 3}}, s));
}

TEST_CASE("projection tracks n mod p_k along the orbit") {
    auto s = Scale::from_periods({3, 9, 27});
    CHECK(project({{1, 4, 13}}, 2) == 4);
    CHECK_THROWS(project({{1, 4, 13}}, 4));

    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        std::int64_t n = static_cast<std::int64_t>(rng() % 2000);
        OdometerPoint g = zero_point(s);
        for (std::int64_t i = 0; i < n; ++i) g = successor(g, s);
        for (std::size_t k = 1; k <= 3; ++k) CHECK(project(g, k) == n % *s.period_at(k));
    }
}

TEST_CASE("successor is a bijection on the truncation") {
    auto s = Scale::from_periods({4, 16, 64});  // p_K = 64 compatible points
    OdometerPoint g = zero_point(s);
    std::set<std::vector<std::int64_t>> seen;
    for (int i = 0; i < 64; ++i) {
        CHECK(seen.insert(g.residues).second);  // no repeats before the full orbit
        g = successor(g, s);
    }
    CHECK(g.residues == zero_point(s).residues);
    // coordinate period divides p_k
    auto t = Scale::from_periods({5, 10, 40});
    for (std::size_t k = 1; k <= 3; ++k) {
        OdometerPoint h{{2, 7, 17}};
        OdometerPoint walked = h;
        for (std::int64_t i = 0; i < *t.period_at(k); ++i) walked = successor(walked, t);
        CHECK(project(walked, k) == project(h, k));
    }
}

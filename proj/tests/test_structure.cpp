#include <doctest.h>

#include <algorithm>
#include <random>

#include "toeplitz/builder.hpp"
#include "toeplitz/sequence_io.hpp"
#include "toeplitz/structure.hpp"

using namespace toeplitz;

TEST_CASE("declared periodic part follows the placement records") {
    // first staged prefix: positions = 1..4 mod 7
    auto f = build_block_scheme({{7, parse_block("0100")}}, 70);
    auto per = periodic_part(f, 7, PeriodicMode::declared);
    REQUIRE(per.size() == 40);
    for (auto pos : per) CHECK(((pos % 7) >= 1 && (pos % 7) <= 4));

    // ternary readout: level 1 lives on 1 mod 3
    auto s = Scale::parse("3^k", 100);
    auto r = build_readout(Sequence(80, 0), s, 81);
    auto per3 = periodic_part(r, 3, PeriodicMode::declared);
    for (auto pos : per3) CHECK(pos % 3 == 1);
    CHECK(per3.size() == 27);

    // p = 9 adds the level-2 class
    auto per9 = periodic_part(r, 9, PeriodicMode::declared);
    CHECK(per9.size() == 27 + 9);
}

TEST_CASE("empirical periodic part") {
    Sequence constant(50, 1);
    for (std::int64_t p : {1, 2, 7}) {
        auto per = periodic_part_empirical(constant, p);
        CHECK(per.size() == 50);  // every position
    }
    CHECK_THROWS_AS(periodic_part_empirical(constant, 50), std::invalid_argument);
    CHECK_THROWS_AS(periodic_part_empirical(constant, 51), std::invalid_argument);

    // declared is contained in empirical on a complete window
    auto s = Scale::parse("3^k", 400);
    std::mt19937_64 rng(11);
    Sequence y(300);
    for (auto& v : y) v = static_cast<std::int8_t>(rng() % 2);
    auto f = build_readout(y, s, 243);
    auto declared = periodic_part(f, 9, PeriodicMode::declared);
    auto empirical = periodic_part(f, 9, PeriodicMode::empirical);
    CHECK(std::includes(empirical.begin(), empirical.end(), declared.begin(), declared.end()));
}

TEST_CASE("defect report on the staged prefix") {
    auto f = build_block_scheme({{7, parse_block("0100")}, {6, parse_block("000100000")}}, 84);
    auto rep = regularity_defect(f);
    CHECK(rep.defect == Rat(3, 14));
    CHECK(rep.levels.size() == 2);
    CHECK(rep.levels[0].per_density == Rat(4, 7));
    CHECK(rep.levels[1].per_density == Rat(4, 7) + Rat(9, 42));
    CHECK(rep.levels[0].per_density <= rep.levels[1].per_density);  // union increases
    // d + covered densities = 1 exactly
    CHECK(rep.defect + Rat(4, 7) + Rat(9, 42) == Rat(1, 1));
    // window 84 = two full periods: aperiodic cells are exactly the stars
    CHECK(rep.aperiodic_density == Rat(3, 14));
}

TEST_CASE("defect of a readout window is one minus the truncated rho") {
    auto s = Scale::parse("3^k", 243);
    auto f = build_readout(Sequence(243, 0), s, 243);
    Rat rho(0, 1);
    for (auto p : s.periods()) rho = rho + Rat(1, p);
    auto rep = regularity_defect(f, 27);
    CHECK(rep.defect == Rat(1, 1) - rho);
    CHECK(rep.levels.back().per_density == rho);
    CHECK(rep.banach_lower <= rep.aperiodic_density.to_double());
    CHECK(rep.banach_upper >= rep.aperiodic_density.to_double());
    // densities constant across aligned windows: counted value equals the formula
    for (const auto& l : rep.levels) CHECK(l.aligned_prefix % l.period == 0);
}

TEST_CASE("defect vanishes when in-window periods cover everything") {
    // hand-built filling: one step, period 2, both residues in the first copy
    PartialFilling f(Scale::from_periods({2, 4}), 8, "test");
    auto step = f.begin_step();
    f.set_step_meta(step, 1, 2);
    f.push_first_copy_cells(step, {1, 2});
    for (std::int64_t pos = 1; pos <= 8; ++pos) f.write(pos, 0, step);
    auto rep = regularity_defect(f);
    CHECK(rep.defect == Rat(0, 1));
    CHECK(rep.aperiodic_density == Rat(0, 1));
}

TEST_CASE("per-period density is constant across aligned windows") {
    auto s = Scale::parse("3^k", 400);
    auto f = build_readout(Sequence(300, 0), s, 243);
    // count level-1 membership on [1, 81] and [1, 243]
    auto per = periodic_part(f, 3, PeriodicMode::declared);
    auto count_upto = [&](std::int64_t n) {
        return std::count_if(per.begin(), per.end(), [&](std::int64_t p) { return p <= n; });
    };
    CHECK(Rat(count_upto(81), 81) == Rat(count_upto(243), 243));
}

TEST_CASE("report renders as text and csv") {
    auto f = build_block_scheme({{7, parse_block("0100")}}, 70);
    auto rep = regularity_defect(f);
    auto text = rep.to_text();
    CHECK(text.find("defect") != std::string::npos);
    auto csv = rep.to_csv();
    CHECK(csv.rfind("k,p_k,density", 0) == 0);
}

TEST_CASE("aperiodic readout") {
    // unfilled positions in the position set are a contract violation
    auto f1 = build_block_scheme({{7, parse_block("0100")}}, 70);
    std::vector<std::int64_t> stars;
    for (std::int64_t i = 1; i <= 70; ++i)
        if (!f1.filled(i)) stars.push_back(i);
    CHECK_THROWS_AS(aperiodic_readout(f1, stars), std::runtime_error);

    // after more steps fill them, the readout carries at most one 1 per block span
    std::vector<QR> qr{{7, 4}, {6, 3}};
    for (int i = 0; i < 24; ++i) qr.push_back({2, 1});
    auto blocks = schedule_ones(qr, qr.size());
    auto partial = build_block_scheme({blocks[0], blocks[1]}, 1764);
    std::vector<std::int64_t> aper;
    for (std::int64_t i = 1; i <= 1764; ++i)
        if (!partial.filled(i)) aper.push_back(i);
    auto full = build_block_scheme(blocks, 1764);
    REQUIRE(full.complete());
    auto readout = aperiodic_readout(full, aper);
    // every later block has length 9 and a single 1, and each step consumes
    // the leftmost nine unfilled cells, so the readout groups by nine
    for (std::size_t i = 0; i + 9 <= readout.size(); i += 9) {
        int ones = 0;
        for (std::size_t j = i; j < i + 9; ++j) ones += (readout[j] != 0);
        CHECK(ones <= 1);
    }

    // a complete window has an empty aperiodic part
    auto s = Scale::parse("3^k", 100);
    auto complete = build_readout(Sequence(81, 0), s, 81);
    std::vector<std::int64_t> empty_set;
    for (std::int64_t i = 1; i <= 81; ++i)
        if (!complete.filled(i)) empty_set.push_back(i);
    CHECK(empty_set.empty());
    CHECK(aperiodic_readout(complete, empty_set).empty());

    // plain-sequence overload
    Sequence x{5, 6, 7, 8};
    CHECK(aperiodic_readout(x, {2, 4}) == Sequence{6, 8});
    CHECK_THROWS(aperiodic_readout(x, {4, 2}));
    CHECK_THROWS(aperiodic_readout(x, {0}));
}

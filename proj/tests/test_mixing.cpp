#include <doctest.h>

#include <random>

#include "toeplitz/builder.hpp"
#include "toeplitz/mixing.hpp"
#include "toeplitz/sequence_io.hpp"

using namespace toeplitz;

namespace {

// regular base prefix: the two staged blocks, then thin weight-one steps
// until the window is complete
PartialFilling regular_base(std::int64_t window) {
    std::vector<BlockStep> steps{{7, parse_block("0100")}, {6, parse_block("000100000")}};
    std::vector<QR> qr{{7, 4}, {6, 3}};
    for (int i = 0; i < 24; ++i) qr.push_back({2, 1});
    auto all = schedule_ones(qr, qr.size());
    for (std::size_t i = 2; i < all.size(); ++i) steps.push_back(all[i]);
    return build_block_scheme(steps, window);
}

}  // namespace

TEST_CASE("window rotation mechanics") {
    Sequence x = parse_block("0100");
    rotate_window(x, 1, 4);
    CHECK(render_block(x) == "1000");
    rotate_window(x, 1, 4, true);
    CHECK(render_block(x) == "0100");

    Sequence two = parse_block("01000100");
    rotate_window(two, 1, 4);
    rotate_window(two, 5, 4);
    CHECK(render_block(two) == "10001000");

    CHECK_THROWS(rotate_window(x, 0, 2));
    CHECK_THROWS(rotate_window(x, 3, 9));
}

TEST_CASE("empty plan leaves the sequence unchanged") {
    WindowPlan plan;
    plan.radius = 1;
    plan.period = 7;
    plan.thinning = 2;
    Sequence x = parse_block("0100100");
    CHECK(apply_window_shift(x, plan) == x);
}

TEST_CASE("overlapping windows are rejected") {
    WindowPlan plan;
    plan.radius = 2;  // length 5
    plan.period = 7;
    plan.thinning = 2;
    plan.window_starts = {1, 4};
    Sequence x(20, 0);
    CHECK_THROWS_AS(apply_window_shift(x, plan), std::invalid_argument);
}

TEST_CASE("period detection on the regular base") {
    auto f = regular_base(100000);
    Sequence x0 = f.to_sequence();
    const Scale& scale = f.scale();

    // the leading block 0100 recurs with the first period
    CHECK(detect_period(x0, 1, 4, scale) == 7);
    // a span covering all residues needs the second period
    CHECK(detect_period(x0, 1, 7, scale) == 42);

    Sequence constant(1000, 1);
    CHECK(detect_period(constant, 5, 9, scale) == 7);  // least scale period

    std::mt19937_64 rng(1);
    Sequence noise(1000);
    for (auto& v : noise) v = static_cast<std::int8_t>(rng() % 2);
    CHECK_THROWS_AS(detect_period(noise, 400, 460, scale), std::runtime_error);
    CHECK_THROWS(detect_period(x0, 0, 4, scale));
}

TEST_CASE("three-step plan: invertibility, density, and coverage") {
    const std::int64_t N = 100000;
    auto f = regular_base(N);
    Sequence x0 = f.to_sequence();
    const Scale& scale = f.scale();

    const std::int64_t a1 = 42 * 1190 + 4;  // the span [a1-3, a1+3] sits on levels 1-2
    std::vector<WindowPlan> plans;

    auto p1 = plan_step(x0, 1, 3, 16, scale, plans, a1);
    CHECK(p1.period == 42);
    CHECK(p1.density() == Rat(7, 672));
    Sequence x1 = apply_window_shift(x0, p1);
    plans.push_back(p1);

    // re-detection with a longer block containing rotated windows jumps to a
    // strictly larger scale period
    const std::int64_t a2 = a1 - 672;
    CHECK(detect_period(x1, a2 - 171, a2 + 171, scale) == 1344);

    auto p2 = plan_step(x1, 2, 171, 16, scale, plans, a2);
    CHECK(p2.period == 1344);
    CHECK(p2.density() == Rat(343, 21504));
    Sequence x2 = apply_window_shift(x1, p2);
    plans.push_back(p2);

    auto p3 = plan_step(x2, 3, 3, 32, scale, plans, a2 + 11088);
    CHECK(p3.period == 672);
    Sequence x3 = apply_window_shift(x2, p3);
    plans.push_back(p3);

    CHECK(total_density(plans) < 0.05);  // summability budget for three steps

    // exact inverse: rotate right in reverse order
    Sequence back = x3;
    for (auto it = plans.rbegin(); it != plans.rend(); ++it)
        back = apply_window_shift(back, *it, true);
    CHECK(back == x0);

    // changed cells stay within the density budget
    std::int64_t diff = 0;
    for (std::size_t i = 0; i < x0.size(); ++i) diff += (x0[i] != x3[i]);
    CHECK(static_cast<double>(diff) / static_cast<double>(N) <= total_density(plans) + 1e-3);

    // no cell is touched by more plans than exist
    std::vector<int> coverage(N + 1, 0);
    int max_cov = 0;
    for (const auto& plan : plans)
        for (auto s : plan.window_starts)
            for (std::int64_t i = s; i < s + plan.window_length(); ++i)
                max_cov = std::max(max_cov, ++coverage[static_cast<std::size_t>(i)]);
    CHECK(max_cov <= static_cast<int>(plans.size()));
}

TEST_CASE("plan constraints are enforced") {
    const std::int64_t N = 100000;
    auto f = regular_base(N);
    Sequence x0 = f.to_sequence();
    const Scale& scale = f.scale();
    const std::int64_t a1 = 42 * 1190 + 4;

    // q = 2 leaves no recoverable gap between windows: 42*2 - 7 < 2*42
    CHECK_THROWS_AS(plan_step(x0, 1, 3, 2, scale, {}, a1), std::invalid_argument);
    // p*q outside the scale
    CHECK_THROWS_AS(plan_step(x0, 1, 3, 5, scale, {}, a1), std::invalid_argument);
    // central block out of bounds
    CHECK_THROWS_AS(plan_step(x0, 1, 3, 16, scale, {}, 2), std::invalid_argument);

    // endpoint too close to an earlier window
    auto p1 = plan_step(x0, 1, 3, 16, scale, {}, a1);
    Sequence x1 = apply_window_shift(x0, p1);
    CHECK_THROWS_AS(plan_step(x1, 2, 3, 16, scale, {p1}, a1 + 672 + 42), std::runtime_error);
}

TEST_CASE("plans serialize to one-line text") {
    WindowPlan plan;
    plan.step = 2;
    plan.radius = 171;
    plan.period = 1344;
    plan.thinning = 16;
    plan.anchor = 49312;
    plan.window_starts = {6133, 27637, 70645};
    auto parsed = WindowPlan::from_text(plan.to_text());
    CHECK(parsed.step == plan.step);
    CHECK(parsed.radius == plan.radius);
    CHECK(parsed.period == plan.period);
    CHECK(parsed.thinning == plan.thinning);
    CHECK(parsed.anchor == plan.anchor);
    CHECK(parsed.window_starts == plan.window_starts);

    CHECK_THROWS(WindowPlan::from_text("k=1 nonsense"));
    CHECK_THROWS(WindowPlan::from_text("k=1 r=2 p=7"));  // starts missing
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "toeplitz/odometer.hpp"
#include "toeplitz/rational.hpp"
#include "toeplitz/sequence.hpp"

namespace toeplitz {

// One conjugacy step of the window-shift construction: every q-th periodic
// occurrence of the anchor block (the central one excluded) becomes a
// window whose contents get rotated one position to the left.
struct WindowPlan {
    std::size_t step = 0;          // k
    std::int64_t radius = 0;       // r_k; window length is 2r+1
    std::int64_t period = 0;       // p_k, detected, must belong to the scale
    std::int64_t thinning = 0;     // q_k
    std::int64_t anchor = 0;       // center of the excluded central occurrence
    std::vector<std::int64_t> window_starts;  // of the selected windows

    std::int64_t window_length() const { return 2 * radius + 1; }
    Rat density() const { return Rat(2 * radius + 1, period * thinning); }  // rho_k

    std::string to_text() const;
    static WindowPlan from_text(const std::string& line);
};

// Least scale period p such that the block x[first, last] recurs at every
// in-window translate by multiples of p. Throws when no represented period
// confirms recurrence.
std::int64_t detect_period(const Sequence& x, std::int64_t first, std::int64_t last,
                           const Scale& scale);

// Builds the step-k plan: detects the period of the central block
// x[anchor-r, anchor+r], selects every q-th occurrence, and checks the
// placement rules — disjointness, an invertibility margin of at least two
// clean periods between consecutive windows, and endpoints at distance
// >= floor(p_{k'} q_{k'} / 4) from the endpoints of every earlier window.
WindowPlan plan_step(const Sequence& x, std::size_t k, std::int64_t r, std::int64_t q,
                     const Scale& scale, const std::vector<WindowPlan>& previous,
                     std::int64_t anchor);

// Cyclic one-step rotation of x[start, start+length-1] in place; left unless
// `invert`, which undoes it.
void rotate_window(Sequence& x, std::int64_t start, std::int64_t length, bool invert = false);

// Cyclic left rotation by one inside each plan window. `invert` rotates
// right instead, undoing the forward map exactly.
Sequence apply_window_shift(const Sequence& x, const WindowPlan& plan, bool invert = false);

// Sum of the plan densities rho_k.
double total_density(const std::vector<WindowPlan>& plans);

}  // namespace toeplitz

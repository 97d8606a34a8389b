#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "toeplitz/odometer.hpp"
#include "toeplitz/rational.hpp"
#include "toeplitz/sequence.hpp"

namespace toeplitz {

struct MobiusTable;

// One construction step: the step's first (initial) position, its period
// (0 when the period lies beyond the represented window), and — for the
// block scheme — the cells of the first copy inside [1, p_k].
struct StepRecord {
    std::int64_t first_pos = 0;
    std::int64_t period = 0;  // 0 = beyond window
    std::int64_t cells_begin = -1;  // into PartialFilling::first_copy_cells(); -1 = {first_pos}
    std::int64_t cells_count = 1;
};

// A window of cells, each unfilled or filled once with (symbol, step,
// initial flag). Cells are never overwritten; the build would throw first.
class PartialFilling {
public:
    PartialFilling(Scale scale, std::int64_t window, std::string construction);

    std::int64_t window() const { return window_; }
    const Scale& scale() const { return scale_; }
    const std::string& construction() const { return construction_; }

    bool filled(std::int64_t pos) const { return step_[static_cast<std::size_t>(pos)] != 0; }
    std::int8_t symbol(std::int64_t pos) const { return symbol_[static_cast<std::size_t>(pos)]; }
    // 1-based step index of the cell's writer; 0 if unfilled.
    std::int32_t step_of(std::int64_t pos) const { return step_[static_cast<std::size_t>(pos)]; }
    bool initial(std::int64_t pos) const;

    std::size_t step_count() const { return steps_.size(); }
    const StepRecord& step_record(std::size_t k) const { return steps_[k - 1]; }
    const std::vector<StepRecord>& steps() const { return steps_; }
    const std::vector<std::int64_t>& first_copy_cells() const { return first_copy_cells_; }
    // the first copy of step k: {n_k} for the readout scheme, the block
    // cells inside [1, p_k] for the block scheme
    std::vector<std::int64_t> step_first_copy(std::size_t k) const;

    // smallest unfilled position, window+1 when complete
    std::int64_t min_unfilled() const;
    bool complete() const { return unfilled_count_ == 0; }
    std::int64_t unfilled_count() const { return unfilled_count_; }

    // throws if any cell is unfilled
    Sequence to_sequence() const;
    // '*' for unfilled cells; symbols as digits
    std::string render(std::int64_t prefix_len = -1) const;

    // construction hooks (builders below)
    void write(std::int64_t pos, std::int8_t sym, std::int32_t step);
    std::int32_t begin_step();
    void set_step_meta(std::int32_t step, std::int64_t first_pos, std::int64_t period);
    void push_first_copy_cells(std::int32_t step, const std::vector<std::int64_t>& cells);

private:
    Scale scale_;
    std::int64_t window_ = 0;
    std::string construction_;
    std::vector<std::int8_t> symbol_;   // index 0 unused
    std::vector<std::int32_t> step_;    // 0 = unfilled
    std::vector<StepRecord> steps_;
    std::vector<std::int64_t> first_copy_cells_;
    std::int64_t unfilled_count_ = 0;
    mutable std::int64_t frontier_ = 0;  // all of [1, frontier_] is filled
};

// --------------------------------------------------------------------------
// Readout scheme: step k places y_k at the first unfilled position and
// repeats it with period p_k across the window.
// --------------------------------------------------------------------------

// Incremental driver, one construction step per call. Used directly by the
// configuration search in complexity.hpp.
class ReadoutBuilder {
public:
    ReadoutBuilder(const Scale& scale, std::int64_t window, std::string tag = "readout");

    std::int64_t next_position() const { return filling_.min_unfilled(); }
    bool done() const { return filling_.complete(); }
    std::size_t steps_taken() const { return filling_.step_count(); }

    // performs step k with symbol y_k; returns n_k
    std::int64_t step(std::int8_t symbol);

    const PartialFilling& filling() const { return filling_; }
    PartialFilling take() && { return std::move(filling_); }

private:
    PartialFilling filling_;
};

// Fills the window from an explicit y; throws if y runs out first.
PartialFilling build_readout(const Sequence& y, const Scale& scale, std::int64_t window);

// Readout with y_k = mu(n_k); every initial position n then carries mu(n).
PartialFilling mobius_fill(const Scale& scale, std::int64_t window, const MobiusTable& table);

// z(n) = 1 iff position n holds an initial (first-placement) symbol.
Sequence initial_indicator(const PartialFilling& filling);

// --------------------------------------------------------------------------
// Block scheme: step k writes B_k into the leftmost unfilled cells of
// [1, p_k] and repeats the copy with period p_k.
// --------------------------------------------------------------------------

struct BlockStep {
    std::int64_t q = 0;  // period ratio q_k, p_k = q_1...q_k
    Sequence block;      // length r_k * Q_{k-1}, with Q_k = prod (q_i - r_i)
};

PartialFilling build_block_scheme(const std::vector<BlockStep>& steps, std::int64_t window);

// All-zero blocks carrying a single 1 whose in-block position cycles through
// every residue class modulo each Q_k (fair round-robin over levels). The
// (q_k, r_k) pairs fix the block lengths.
struct QR {
    std::int64_t q = 0;
    std::int64_t r = 0;
};
std::vector<BlockStep> schedule_ones(const std::vector<QR>& qr, std::size_t count);

// --------------------------------------------------------------------------
// Example construction: y is zero except for blocks A_m of length m written
// at y[k_m+1, k_m+m], with the k_m supplied by find_claim_indices.
// --------------------------------------------------------------------------

struct Example72 {
    Sequence y;
    PartialFilling filling;
    std::vector<std::int64_t> k_indices;
};

using BlockSource = std::function<Sequence(std::size_t m)>;

// Default A_m: chosen so that the short spans with 1 at both ends appear as
// early as possible, then chunks of the (length, lex) enumeration of all
// binary words, so every word is eventually covered.
Sequence default_example72_block(std::size_t m);

Example72 build_example_7_2(const Scale& scale, std::int64_t window,
                            const std::vector<std::int64_t>& k_indices,
                            const BlockSource& blocks = default_example72_block);

}  // namespace toeplitz

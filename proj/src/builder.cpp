#include "toeplitz/builder.hpp"

#include <algorithm>
#include <stdexcept>

#include "toeplitz/mobius.hpp"

namespace toeplitz {

PartialFilling::PartialFilling(Scale scale, std::int64_t window, std::string construction)
    : scale_(std::move(scale)), window_(window), construction_(std::move(construction)) {
    if (window < 1) throw std::invalid_argument("PartialFilling: window must be positive");
    symbol_.assign(static_cast<std::size_t>(window) + 1, 0);
    step_.assign(static_cast<std::size_t>(window) + 1, 0);
    unfilled_count_ = window;
}

bool PartialFilling::initial(std::int64_t pos) const {
    std::int32_t s = step_of(pos);
    if (s == 0) return false;
    const StepRecord& rec = steps_[static_cast<std::size_t>(s - 1)];
    // the first copy lives inside [1, p_k]; repeats start at p_k + 1
    if (rec.period > 0) return pos <= rec.period;
    return pos == rec.first_pos;
}

std::vector<std::int64_t> PartialFilling::step_first_copy(std::size_t k) const {
    const StepRecord& rec = steps_.at(k - 1);
    if (rec.cells_begin < 0) return {rec.first_pos};
    auto b = first_copy_cells_.begin() + rec.cells_begin;
    return std::vector<std::int64_t>(b, b + rec.cells_count);
}

std::int64_t PartialFilling::min_unfilled() const {
    while (frontier_ < window_ && step_[static_cast<std::size_t>(frontier_ + 1)] != 0) ++frontier_;
    return frontier_ + 1;
}

Sequence PartialFilling::to_sequence() const {
    if (!complete()) throw std::runtime_error("PartialFilling: window has unfilled cells");
    return Sequence(symbol_.begin() + 1, symbol_.end());
}

std::string PartialFilling::render(std::int64_t prefix_len) const {
    if (prefix_len < 0 || prefix_len > window_) prefix_len = window_;
    std::string out;
    out.reserve(static_cast<std::size_t>(prefix_len));
    for (std::int64_t i = 1; i <= prefix_len; ++i) {
        if (!filled(i)) {
            out += '*';
        } else {
            std::int8_t v = symbol(i);
            out += v < 0 ? '-' : static_cast<char>('0' + v);
        }
    }
    return out;
}

void PartialFilling::write(std::int64_t pos, std::int8_t sym, std::int32_t step) {
    if (pos < 1 || pos > window_) throw std::out_of_range("PartialFilling: position outside window");
    auto i = static_cast<std::size_t>(pos);
    if (step_[i] != 0) throw std::logic_error("PartialFilling: cell written twice");
    symbol_[i] = sym;
    step_[i] = step;
    --unfilled_count_;
}

std::int32_t PartialFilling::begin_step() {
    steps_.push_back({});
    return static_cast<std::int32_t>(steps_.size());
}

void PartialFilling::set_step_meta(std::int32_t step, std::int64_t first_pos, std::int64_t period) {
    auto& rec = steps_.at(static_cast<std::size_t>(step - 1));
    rec.first_pos = first_pos;
    rec.period = period;
}

void PartialFilling::push_first_copy_cells(std::int32_t step, const std::vector<std::int64_t>& cells) {
    auto& rec = steps_.at(static_cast<std::size_t>(step - 1));
    rec.cells_begin = static_cast<std::int64_t>(first_copy_cells_.size());
    rec.cells_count = static_cast<std::int64_t>(cells.size());
    first_copy_cells_.insert(first_copy_cells_.end(), cells.begin(), cells.end());
}

// --------------------------------------------------------------------------
// readout scheme
// --------------------------------------------------------------------------

namespace {

Scale check_readout_scale(Scale scale) {
    if (scale.periods().front() < 3)
        throw std::invalid_argument("readout scheme requires p_1 >= 3");
    return scale;
}

}  // namespace

ReadoutBuilder::ReadoutBuilder(const Scale& scale, std::int64_t window, std::string tag)
    : filling_(check_readout_scale(scale), window, std::move(tag)) {}

std::int64_t ReadoutBuilder::step(std::int8_t sym) {
    if (done()) throw std::logic_error("ReadoutBuilder: window already complete");
    std::int32_t k = filling_.begin_step();
    std::int64_t n_k = filling_.min_unfilled();
    auto p = filling_.scale().period_at(static_cast<std::size_t>(k));
    std::int64_t window = filling_.window();
    if (p && *p <= window) {
        filling_.set_step_meta(k, n_k, *p);
        for (std::int64_t pos = n_k; pos <= window; pos += *p) filling_.write(pos, sym, k);
    } else {
        // period beyond the window: the symbol appears once
        filling_.set_step_meta(k, n_k, 0);
        filling_.write(n_k, sym, k);
    }
    return n_k;
}

PartialFilling build_readout(const Sequence& y, const Scale& scale, std::int64_t window) {
    ReadoutBuilder b(scale, window);
    std::size_t k = 0;
    while (!b.done()) {
        if (k >= y.size()) throw std::runtime_error("build_readout: y exhausted before window filled");
        b.step(y[k++]);
    }
    return std::move(b).take();
}

PartialFilling mobius_fill(const Scale& scale, std::int64_t window, const MobiusTable& table) {
    if (table.n_max < window)
        throw std::invalid_argument("mobius_fill: table shorter than the window");
    ReadoutBuilder b(scale, window, "mobius");
    while (!b.done()) b.step(table.mu(b.next_position()));
    return std::move(b).take();
}

Sequence initial_indicator(const PartialFilling& filling) {
    if (!filling.complete())
        throw std::runtime_error("initial_indicator: window has unfilled cells");
    Sequence z(static_cast<std::size_t>(filling.window()));
    for (std::int64_t i = 1; i <= filling.window(); ++i)
        z[static_cast<std::size_t>(i - 1)] = filling.initial(i) ? 1 : 0;
    return z;
}

// --------------------------------------------------------------------------
// block scheme
// --------------------------------------------------------------------------

PartialFilling build_block_scheme(const std::vector<BlockStep>& steps, std::int64_t window) {
    if (steps.empty()) throw std::invalid_argument("build_block_scheme: no steps");

    // periods p_k = q_1...q_k; the scale of the filling
    std::vector<std::int64_t> periods;
    __int128 p = 1;
    for (const auto& st : steps) {
        if (st.q < 2) throw std::invalid_argument("build_block_scheme: q_k must be at least 2");
        p *= st.q;
        if (p > INT64_MAX / 2) throw std::invalid_argument("build_block_scheme: period overflow");
        periods.push_back(static_cast<std::int64_t>(p));
    }
    if (window < periods.front())
        throw std::invalid_argument("build_block_scheme: window shorter than p_1");

    PartialFilling f(Scale::from_periods(periods), window, "block");

    std::int64_t Q_prev = 1;  // Q_{k-1} = prod_{i<k} (q_i - r_i)
    for (std::size_t k = 0; k < steps.size(); ++k) {
        const auto& st = steps[k];
        const std::int64_t len = static_cast<std::int64_t>(st.block.size());
        if (len == 0 || len % Q_prev != 0)
            throw std::invalid_argument("build_block_scheme: block length must be a multiple of Q_{k-1}");
        const std::int64_t r = len / Q_prev;
        if (r >= st.q)
            throw std::invalid_argument("build_block_scheme: r_k must be smaller than q_k");
        const std::int64_t p_k = periods[k];

        // leftmost unfilled cells of [1, p_k]
        std::vector<std::int64_t> cells;
        cells.reserve(static_cast<std::size_t>(len));
        for (std::int64_t pos = 1; pos <= std::min(p_k, window) &&
                                   cells.size() < static_cast<std::size_t>(len); ++pos)
            if (!f.filled(pos)) cells.push_back(pos);
        if (cells.empty()) break;  // window already complete; later steps have no effect here

        std::int32_t step = f.begin_step();
        f.set_step_meta(step, cells.front(), p_k);
        f.push_first_copy_cells(step, cells);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            for (std::int64_t pos = cells[i]; pos <= window; pos += p_k)
                f.write(pos, st.block[i], step);
        }
        Q_prev *= (st.q - r);
    }
    return f;
}

std::vector<BlockStep> schedule_ones(const std::vector<QR>& qr, std::size_t count) {
    if (count > qr.size())
        throw std::invalid_argument("schedule_ones: not enough (q,r) pairs");
    std::vector<std::int64_t> Q;  // Q[k] = prod_{i<=k} (q_i - r_i), Q[0] = 1
    Q.push_back(1);
    for (const auto& e : qr) {
        if (e.q < 2 || e.r < 1 || e.r >= e.q)
            throw std::invalid_argument("schedule_ones: need 1 <= r_k < q_k");
        Q.push_back(Q.back() * (e.q - e.r));
    }

    std::vector<BlockStep> out;
    out.reserve(count);
    // level targets cycle 1 | 1 2 | 1 2 3 | ... so each level is revisited
    // forever; c[t] walks the residues mod Q_t in order
    std::size_t round = 1, index = 1;
    std::vector<std::int64_t> c(count + 1, 0);
    for (std::size_t m = 1; m <= count; ++m) {
        const std::int64_t len = qr[m - 1].r * Q[m - 1];
        Sequence block(static_cast<std::size_t>(len), 0);
        if (m == 1) {
            block[0] = 1;
        } else {
            std::size_t t = index;
            std::int64_t pos = c[t] % Q[t];
            ++c[t];
            block[static_cast<std::size_t>(pos)] = 1;
            if (++index > round) {
                ++round;
                index = 1;
            }
        }
        out.push_back({qr[m - 1].q, std::move(block)});
    }
    return out;
}

// --------------------------------------------------------------------------
// example construction with prescribed k_m
// --------------------------------------------------------------------------

namespace {

// Position j (0-based) of the stream 0 1 00 01 10 11 000 001 ... of all
// binary words ordered by length, then lexicographically.
std::int8_t enumeration_stream_at(std::int64_t j) {
    std::int64_t L = 1;
    std::int64_t block_total = 2;  // L * 2^L
    while (j >= block_total) {
        j -= block_total;
        ++L;
        block_total = L * (std::int64_t(1) << L);
    }
    std::int64_t word = j / L;
    std::int64_t bit = j % L;
    return static_cast<std::int8_t>((word >> (L - 1 - bit)) & 1);
}

const char* const kRichBlocks[5] = {"1", "11", "111", "1011", "11011"};

}  // namespace

Sequence default_example72_block(std::size_t m) {
    if (m == 0) throw std::invalid_argument("default_example72_block: m must be positive");
    if (m <= 5) return parse_block(kRichBlocks[m - 1]);
    // chunks of the full enumeration; offset = total length of chunks 6..m-1
    std::int64_t offset = 0;
    for (std::size_t i = 6; i < m; ++i) offset += static_cast<std::int64_t>(i);
    Sequence block(m);
    for (std::size_t i = 0; i < m; ++i)
        block[i] = enumeration_stream_at(offset + static_cast<std::int64_t>(i));
    return block;
}

Example72 build_example_7_2(const Scale& scale, std::int64_t window,
                            const std::vector<std::int64_t>& k_indices, const BlockSource& blocks) {
    if (k_indices.empty()) throw std::invalid_argument("build_example_7_2: no k indices");
    for (std::size_t m = 0; m < k_indices.size(); ++m) {
        if (m > 0 && k_indices[m] <= k_indices[m - 1] + static_cast<std::int64_t>(m))
            throw std::invalid_argument("build_example_7_2: k indices violate k_{m+1} > k_m + m");
    }

    std::vector<Sequence> a;  // A_1 .. A_M
    a.reserve(k_indices.size());
    for (std::size_t m = 1; m <= k_indices.size(); ++m) {
        Sequence blk = blocks(m);
        if (blk.size() != m)
            throw std::invalid_argument("build_example_7_2: block A_m must have length m");
        a.push_back(std::move(blk));
    }

    auto y_at = [&](std::int64_t k) -> std::int8_t {  // 1-based step index
        for (std::size_t m = 0; m < k_indices.size(); ++m) {
            std::int64_t lo = k_indices[m] + 1;
            std::int64_t hi = k_indices[m] + static_cast<std::int64_t>(m) + 1;
            if (k >= lo && k <= hi) return a[m][static_cast<std::size_t>(k - lo)];
        }
        return 0;
    };

    ReadoutBuilder b(scale, window);
    Sequence y;
    while (!b.done()) {
        std::int8_t sym = y_at(static_cast<std::int64_t>(b.steps_taken()) + 1);
        y.push_back(sym);
        b.step(sym);
    }
    Example72 out{std::move(y), std::move(b).take(), k_indices};
    return out;
}

}  // namespace toeplitz

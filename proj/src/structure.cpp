#include "toeplitz/structure.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace toeplitz {

namespace {

// true at index pos (1-based) when the cell belongs to a step whose period
// divides p and fits the window
std::vector<char> declared_mask(const PartialFilling& f, std::int64_t p) {
    std::vector<char> step_in(f.step_count() + 1, 0);
    for (std::size_t k = 1; k <= f.step_count(); ++k) {
        const auto& rec = f.step_record(k);
        step_in[k] = (rec.period > 0 && rec.period <= f.window() && p % rec.period == 0) ? 1 : 0;
    }
    std::vector<char> mask(static_cast<std::size_t>(f.window()) + 1, 0);
    for (std::int64_t pos = 1; pos <= f.window(); ++pos) {
        std::int32_t s = f.step_of(pos);
        if (s && step_in[static_cast<std::size_t>(s)]) mask[static_cast<std::size_t>(pos)] = 1;
    }
    return mask;
}

}  // namespace

std::vector<std::int64_t> periodic_part(const PartialFilling& filling, std::int64_t p,
                                        PeriodicMode mode) {
    if (p < 1) throw std::invalid_argument("periodic_part: period must be positive");
    if (mode == PeriodicMode::declared) {
        auto mask = declared_mask(filling, p);
        std::vector<std::int64_t> out;
        for (std::int64_t pos = 1; pos <= filling.window(); ++pos)
            if (mask[static_cast<std::size_t>(pos)]) out.push_back(pos);
        return out;
    }
    return periodic_part_empirical(filling.to_sequence(), p);
}

std::vector<std::int64_t> periodic_part_empirical(const Sequence& x, std::int64_t p) {
    const std::int64_t len = static_cast<std::int64_t>(x.size());
    if (p >= len)
        throw std::invalid_argument("periodic_part: empirical mode needs p < window length");
    // ok(n) = x(n) agrees with every in-window translate x(n + mp)
    std::vector<char> ok(static_cast<std::size_t>(len) + 1, 1);
    for (std::int64_t n = len - p; n >= 1; --n)
        ok[static_cast<std::size_t>(n)] =
            (at1(x, n) == at1(x, n + p)) && ok[static_cast<std::size_t>(n + p)];
    std::vector<std::int64_t> out;
    for (std::int64_t n = 1; n <= len; ++n)
        if (ok[static_cast<std::size_t>(n)]) out.push_back(n);
    return out;
}

DensityReport regularity_defect(const PartialFilling& filling, std::int64_t banach_subwindow) {
    DensityReport rep;
    rep.subject = filling.construction();
    rep.window = filling.window();

    const std::int64_t N = filling.window();

    // per-step densities of the declared periodic classes
    Rat covered(0, 1);
    std::vector<char> in_window_step(filling.step_count() + 1, 0);
    for (std::size_t k = 1; k <= filling.step_count(); ++k) {
        const auto& rec = filling.step_record(k);
        if (rec.period > 0 && rec.period <= N) {
            in_window_step[k] = 1;
            covered = covered + Rat(rec.cells_count, rec.period);
        }
    }
    rep.defect = Rat(1, 1) - covered;

    // density of Per_{p_k} for every distinct in-window period, counted
    // exactly on the largest aligned prefix
    std::vector<std::int64_t> periods;
    for (std::size_t k = 1; k <= filling.step_count(); ++k)
        if (in_window_step[k]) periods.push_back(filling.step_record(k).period);
    std::sort(periods.begin(), periods.end());
    periods.erase(std::unique(periods.begin(), periods.end()), periods.end());

    std::size_t level_index = 0;
    for (auto p : periods) {
        auto mask = declared_mask(filling, p);
        std::int64_t aligned = (N / p) * p;
        std::int64_t count = 0;
        for (std::int64_t pos = 1; pos <= aligned; ++pos)
            count += mask[static_cast<std::size_t>(pos)];
        LevelDensity ld;
        ld.k = ++level_index;
        ld.period = p;
        ld.aligned_prefix = aligned;
        ld.remainder_cells = N - aligned;
        ld.per_density = aligned > 0 ? Rat(count, aligned) : Rat(0, 1);
        rep.levels.push_back(ld);
    }

    // cells not covered by any in-window period (sentinel steps + unfilled)
    std::vector<char> aper(static_cast<std::size_t>(N) + 1, 0);
    std::int64_t aper_count = 0;
    for (std::int64_t pos = 1; pos <= N; ++pos) {
        std::int32_t s = filling.step_of(pos);
        bool covered_cell = s && in_window_step[static_cast<std::size_t>(s)];
        if (!covered_cell) {
            aper[static_cast<std::size_t>(pos)] = 1;
            ++aper_count;
        }
    }
    rep.aperiodic_density = Rat(aper_count, N);

    if (banach_subwindow > 0 && banach_subwindow <= N) {
        rep.banach_subwindow = banach_subwindow;
        std::int64_t run = 0;
        for (std::int64_t pos = 1; pos <= banach_subwindow; ++pos)
            run += aper[static_cast<std::size_t>(pos)];
        std::int64_t lo = run, hi = run;
        for (std::int64_t pos = banach_subwindow + 1; pos <= N; ++pos) {
            run += aper[static_cast<std::size_t>(pos)];
            run -= aper[static_cast<std::size_t>(pos - banach_subwindow)];
            lo = std::min(lo, run);
            hi = std::max(hi, run);
        }
        rep.banach_lower = static_cast<double>(lo) / static_cast<double>(banach_subwindow);
        rep.banach_upper = static_cast<double>(hi) / static_cast<double>(banach_subwindow);
    }
    return rep;
}

std::string DensityReport::to_text() const {
    std::ostringstream os;
    os << "subject " << subject << "\n";
    os << "window " << window << "\n";
    for (const auto& l : levels)
        os << "per_density k=" << l.k << " p=" << l.period << " density=" << l.per_density
           << " aligned_prefix=" << l.aligned_prefix << " remainder=" << l.remainder_cells << "\n";
    os << "defect " << defect << "\n";
    os << "aperiodic_density " << aperiodic_density << "\n";
    if (banach_subwindow > 0)
        os << "banach subwindow=" << banach_subwindow << " lower=" << banach_lower
           << " upper=" << banach_upper << "\n";
    return os.str();
}

std::string DensityReport::to_csv() const {
    std::ostringstream os;
    os << "k,p_k,density\n";
    for (const auto& l : levels)
        os << l.k << ',' << l.period << ',' << l.per_density.to_double() << "\n";
    return os.str();
}

Sequence aperiodic_readout(const Sequence& x, const std::vector<std::int64_t>& aper) {
    Sequence out;
    out.reserve(aper.size());
    for (std::size_t i = 0; i < aper.size(); ++i) {
        if (i > 0 && aper[i] <= aper[i - 1])
            throw std::invalid_argument("aperiodic_readout: positions must be strictly increasing");
        if (aper[i] < 1 || aper[i] > static_cast<std::int64_t>(x.size()))
            throw std::out_of_range("aperiodic_readout: position outside window");
        out.push_back(at1(x, aper[i]));
    }
    return out;
}

PartialFilling filling_from_indicator(const Sequence& x, const Sequence& z, const Scale& scale) {
    if (x.size() != z.size())
        throw std::invalid_argument("filling_from_indicator: sequence/indicator length mismatch");
    const std::int64_t N = static_cast<std::int64_t>(x.size());
    PartialFilling f(scale, N, "readout");
    std::int64_t k = 0;
    for (std::int64_t pos = 1; pos <= N; ++pos) {
        if (at1(z, pos) == 0) continue;
        ++k;
        std::int32_t step = f.begin_step();
        auto p = scale.period_at(static_cast<std::size_t>(k));
        if (p && *p <= N) {
            f.set_step_meta(step, pos, *p);
            for (std::int64_t c = pos; c <= N; c += *p) {
                if (at1(x, c) != at1(x, pos))
                    throw std::runtime_error(
                        "filling_from_indicator: class symbols disagree with the sequence");
                f.write(c, at1(x, pos), step);
            }
        } else {
            f.set_step_meta(step, pos, 0);
            f.write(pos, at1(x, pos), step);
        }
    }
    if (!f.complete())
        throw std::runtime_error("filling_from_indicator: cells left uncovered by the indicator");
    return f;
}

DensityReport empirical_density_report(const Sequence& x, const Scale& scale,
                                       std::int64_t banach_subwindow) {
    DensityReport rep;
    rep.subject = "empirical";
    rep.window = static_cast<std::int64_t>(x.size());
    const std::int64_t N = rep.window;

    std::vector<char> in_union(static_cast<std::size_t>(N) + 1, 0);
    Rat sup(0, 1);
    std::size_t level = 0;
    for (auto p : scale.periods()) {
        if (p >= N) break;
        auto per = periodic_part_empirical(x, p);
        for (auto pos : per) in_union[static_cast<std::size_t>(pos)] = 1;
        std::int64_t aligned = (N / p) * p;
        std::int64_t count = 0;
        for (std::int64_t pos = 1; pos <= aligned; ++pos)
            count += in_union[static_cast<std::size_t>(pos)];
        LevelDensity ld;
        ld.k = ++level;
        ld.period = p;
        ld.aligned_prefix = aligned;
        ld.remainder_cells = N - aligned;
        ld.per_density = aligned > 0 ? Rat(count, aligned) : Rat(0, 1);
        rep.levels.push_back(ld);
        if (ld.per_density > sup) sup = ld.per_density;
    }
    rep.defect = Rat(1, 1) - sup;

    std::int64_t aper_count = 0;
    for (std::int64_t pos = 1; pos <= N; ++pos)
        if (!in_union[static_cast<std::size_t>(pos)]) ++aper_count;
    rep.aperiodic_density = Rat(aper_count, N);

    if (banach_subwindow > 0 && banach_subwindow <= N) {
        rep.banach_subwindow = banach_subwindow;
        std::int64_t run = 0;
        for (std::int64_t pos = 1; pos <= banach_subwindow; ++pos)
            run += !in_union[static_cast<std::size_t>(pos)];
        std::int64_t lo = run, hi = run;
        for (std::int64_t pos = banach_subwindow + 1; pos <= N; ++pos) {
            run += !in_union[static_cast<std::size_t>(pos)];
            run -= !in_union[static_cast<std::size_t>(pos - banach_subwindow)];
            lo = std::min(lo, run);
            hi = std::max(hi, run);
        }
        rep.banach_lower = static_cast<double>(lo) / static_cast<double>(banach_subwindow);
        rep.banach_upper = static_cast<double>(hi) / static_cast<double>(banach_subwindow);
    }
    return rep;
}

Sequence aperiodic_readout(const PartialFilling& filling, const std::vector<std::int64_t>& aper) {
    Sequence out;
    out.reserve(aper.size());
    for (std::size_t i = 0; i < aper.size(); ++i) {
        if (i > 0 && aper[i] <= aper[i - 1])
            throw std::invalid_argument("aperiodic_readout: positions must be strictly increasing");
        if (aper[i] < 1 || aper[i] > filling.window())
            throw std::out_of_range("aperiodic_readout: position outside window");
        if (!filling.filled(aper[i]))
            throw std::runtime_error("aperiodic_readout: unfilled cell in the position set");
        out.push_back(filling.symbol(aper[i]));
    }
    return out;
}

}  // namespace toeplitz

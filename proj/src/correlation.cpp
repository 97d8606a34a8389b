#include "toeplitz/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "toeplitz/builder.hpp"
#include "toeplitz/mobius.hpp"

namespace toeplitz {

std::vector<std::int64_t> SampleSchedule::points(std::int64_t n) const {
    if (n < 1) throw std::invalid_argument("SampleSchedule: n must be positive");
    std::vector<std::int64_t> pts;
    if (!explicit_points.empty()) {
        pts = explicit_points;  // used as given
    } else {
        if (first < 1 || factor < 2) throw std::invalid_argument("SampleSchedule: bad rule");
        for (std::int64_t v = first; v < n; v *= factor) pts.push_back(v);
        pts.push_back(n);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    while (!pts.empty() && pts.front() < 1) pts.erase(pts.begin());
    if (pts.back() > n) throw std::invalid_argument("SampleSchedule: point beyond n");
    return pts;
}

std::pair<double, double> CorrelationSeries::tail_range(double fraction) const {
    if (averages.empty()) throw std::logic_error("CorrelationSeries: empty series");
    std::size_t count = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                     std::ceil(fraction * averages.size())));
    auto begin = averages.end() - static_cast<std::ptrdiff_t>(count);
    auto [lo, hi] = std::minmax_element(begin, averages.end());
    return {*lo, *hi};
}

CorrelationSeries correlate(const Sequence& xi, const Sequence& eta, const SampleSchedule& schedule) {
    const std::int64_t n = static_cast<std::int64_t>(std::min(xi.size(), eta.size()));
    if (n == 0) throw std::invalid_argument("correlate: empty input");
    auto points = schedule.points(n);
    if (points.back() > static_cast<std::int64_t>(xi.size()) ||
        points.back() > static_cast<std::int64_t>(eta.size()))
        throw std::invalid_argument("correlate: sequences shorter than the sample schedule");

    CorrelationSeries series;
    series.sample_points = points;
    std::int64_t sum = 0;
    std::size_t next_point = 0;
    for (std::int64_t i = 1; i <= n && next_point < points.size(); ++i) {
        sum += static_cast<std::int64_t>(at1(xi, i)) * static_cast<std::int64_t>(at1(eta, i));
        while (next_point < points.size() && points[next_point] == i) {
            series.sums.push_back(sum);
            series.averages.push_back(static_cast<double>(sum) / static_cast<double>(i));
            ++next_point;
        }
    }
    return series;
}

StrongCorrelation strong_correlation_check(const PartialFilling& filling, const MobiusTable& table,
                                           std::int64_t n, double tolerance) {
    if (filling.construction() != "mobius")
        throw std::invalid_argument("strong_correlation_check: filling must come from mobius_fill");
    if (n < 1 || n > filling.window())
        throw std::invalid_argument("strong_correlation_check: n outside the window");
    if (n > table.n_max)
        throw std::invalid_argument("strong_correlation_check: table shorter than n");

    constexpr double three_over_pi2 = 3.0 / (std::numbers::pi * std::numbers::pi);
    StrongCorrelation out;
    out.rho_lower = filling.scale().rho_lower();
    out.rho_upper = filling.scale().rho_upper();
    out.tolerance = tolerance;
    if (out.rho_upper >= three_over_pi2)
        throw std::invalid_argument("strong_correlation_check: scale violates rho < 3/pi^2");

    std::int64_t init_sum = 0, rep_sum = 0;
    for (std::int64_t i = 1; i <= n; ++i) {
        if (!filling.filled(i))
            throw std::runtime_error("strong_correlation_check: unfilled cell in [1, n]");
        std::int64_t term = static_cast<std::int64_t>(filling.symbol(i)) *
                            static_cast<std::int64_t>(table.mu(i));
        (filling.initial(i) ? init_sum : rep_sum) += term;
    }
    out.initial_sum = init_sum;
    out.repeated_sum = rep_sum;
    out.average = static_cast<double>(init_sum + rep_sum) / static_cast<double>(n);
    out.bound = 6.0 / (std::numbers::pi * std::numbers::pi) - 2.0 * out.rho_upper;
    out.holds = out.average >= out.bound - tolerance;
    return out;
}

}  // namespace toeplitz

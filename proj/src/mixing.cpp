#include "toeplitz/mixing.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace toeplitz {

std::int64_t detect_period(const Sequence& x, std::int64_t first, std::int64_t last,
                           const Scale& scale) {
    const std::int64_t len = static_cast<std::int64_t>(x.size());
    if (first < 1 || last > len || first > last)
        throw std::invalid_argument("detect_period: block span outside the window");

    for (std::int64_t p : scale.periods()) {
        bool ok = true;
        bool confirmed = false;  // vacuous recurrence (no in-window translate) does not count
        for (std::int64_t shift = -((first - 1) / p) * p; ok && last + shift <= len; shift += p) {
            if (shift == 0) continue;
            confirmed = true;
            for (std::int64_t i = first; i <= last; ++i) {
                if (at1(x, i) != at1(x, i + shift)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok && confirmed) return p;
    }
    throw std::runtime_error("detect_period: no scale period confirms recurrence in the window");
}

WindowPlan plan_step(const Sequence& x, std::size_t k, std::int64_t r, std::int64_t q,
                     const Scale& scale, const std::vector<WindowPlan>& previous,
                     std::int64_t anchor) {
    const std::int64_t len = static_cast<std::int64_t>(x.size());
    if (r < 1) throw std::invalid_argument("plan_step: radius must be positive");
    if (q < 2) throw std::invalid_argument("plan_step: thinning must be at least 2");
    if (anchor - r < 1 || anchor + r > len)
        throw std::invalid_argument("plan_step: central block outside the window");

    WindowPlan plan;
    plan.step = k;
    plan.radius = r;
    plan.thinning = q;
    plan.anchor = anchor;
    plan.period = detect_period(x, anchor - r, anchor + r, scale);

    if (!scale.contains_period(plan.period * q))
        throw std::invalid_argument("plan_step: p_k * q_k is not a scale period");
    // untouched stretch between consecutive windows must expose whole periods
    if (plan.period * q - (2 * r + 1) < 2 * plan.period)
        throw std::invalid_argument("plan_step: thinning too small to keep the periodic part recoverable");

    const std::int64_t stride = plan.period * q;
    for (std::int64_t a = anchor - (stride * ((anchor - 1) / stride)); a + r <= len; a += stride) {
        if (a == anchor || a - r < 1) continue;
        plan.window_starts.push_back(a - r);
    }
    std::sort(plan.window_starts.begin(), plan.window_starts.end());
    if (plan.window_starts.empty())
        throw std::runtime_error("plan_step: no selectable occurrence inside the window");

    // endpoints must stay far from the windows of every earlier step
    for (const auto& prev : previous) {
        const std::int64_t margin = prev.period * prev.thinning / 4;
        for (std::int64_t s : plan.window_starts) {
            const std::int64_t ends[2] = {s, s + plan.window_length() - 1};
            for (std::int64_t ps : prev.window_starts) {
                const std::int64_t pends[2] = {ps, ps + prev.window_length() - 1};
                for (auto e : ends)
                    for (auto pe : pends)
                        if (std::abs(e - pe) < margin)
                            throw std::runtime_error(
                                "plan_step: window endpoint too close to an earlier window");
            }
        }
    }
    return plan;
}

void rotate_window(Sequence& x, std::int64_t start, std::int64_t length, bool invert) {
    if (start < 1 || length < 1 || start + length - 1 > static_cast<std::int64_t>(x.size()))
        throw std::invalid_argument("rotate_window: window outside the sequence");
    auto b = x.begin() + (start - 1);
    if (!invert)
        std::rotate(b, b + 1, b + length);  // leftmost symbol moves to the right end
    else
        std::rotate(b, b + length - 1, b + length);
}

Sequence apply_window_shift(const Sequence& x, const WindowPlan& plan, bool invert) {
    const std::int64_t L = plan.window_length();
    Sequence out = x;
    std::int64_t prev_end = 0;
    for (std::int64_t s : plan.window_starts) {
        if (s <= prev_end) throw std::invalid_argument("apply_window_shift: overlapping windows");
        prev_end = s + L - 1;
        rotate_window(out, s, L, invert);
    }
    return out;
}

double total_density(const std::vector<WindowPlan>& plans) {
    double sum = 0.0;
    for (const auto& p : plans) sum += p.density().to_double();
    return sum;
}

std::string WindowPlan::to_text() const {
    std::ostringstream os;
    os << "k=" << step << " r=" << radius << " p=" << period << " q=" << thinning
       << " anchor=" << anchor << " starts=";
    for (std::size_t i = 0; i < window_starts.size(); ++i) {
        if (i) os << ',';
        os << window_starts[i];
    }
    return os.str();
}

WindowPlan WindowPlan::from_text(const std::string& line) {
    WindowPlan plan;
    std::istringstream is(line);
    std::string token;
    bool have_starts = false;
    while (is >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("WindowPlan: malformed token '" + token + "'");
        std::string key = token.substr(0, eq);
        std::string val = token.substr(eq + 1);
        auto to_int = [&](const std::string& s) {
            std::int64_t v = 0;
            auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
                throw std::invalid_argument("WindowPlan: malformed integer '" + s + "'");
            return v;
        };
        if (key == "k") plan.step = static_cast<std::size_t>(to_int(val));
        else if (key == "r") plan.radius = to_int(val);
        else if (key == "p") plan.period = to_int(val);
        else if (key == "q") plan.thinning = to_int(val);
        else if (key == "anchor") plan.anchor = to_int(val);
        else if (key == "starts") {
            have_starts = true;
            std::size_t pos = 0;
            while (pos < val.size()) {
                auto comma = val.find(',', pos);
                if (comma == std::string::npos) comma = val.size();
                plan.window_starts.push_back(to_int(val.substr(pos, comma - pos)));
                pos = comma + 1;
            }
        } else {
            throw std::invalid_argument("WindowPlan: unknown key '" + key + "'");
        }
    }
    if (plan.period < 1 || plan.radius < 0 || plan.thinning < 1 || !have_starts)
        throw std::invalid_argument("WindowPlan: incomplete plan line");
    return plan;
}

}  // namespace toeplitz

#include "toeplitz/odometer.hpp"

#include <charconv>
#include <stdexcept>

namespace toeplitz {

namespace {

std::int64_t parse_int(const std::string& s, std::size_t from, std::size_t to) {
    std::int64_t v = 0;
    auto res = std::from_chars(s.data() + from, s.data() + to, v);
    if (res.ec != std::errc{} || res.ptr != s.data() + to)
        throw std::invalid_argument("Scale: malformed integer in spec '" + s + "'");
    return v;
}

void validate_chain(const std::vector<std::int64_t>& p) {
    if (p.empty()) throw std::invalid_argument("Scale: empty period list");
    if (p.front() < 2) throw std::invalid_argument("Scale: periods must be >= 2");
    for (std::size_t i = 1; i < p.size(); ++i) {
        if (p[i] <= p[i - 1]) throw std::invalid_argument("Scale: periods must be strictly increasing");
        if (p[i] % p[i - 1] != 0) throw std::invalid_argument("Scale: each period must divide the next");
    }
}

}  // namespace

Scale Scale::from_periods(std::vector<std::int64_t> periods) {
    validate_chain(periods);
    Scale s;
    s.periods_ = std::move(periods);
    s.kind_ = Kind::explicit_list;
    std::string spec;
    for (std::size_t i = 0; i < s.periods_.size(); ++i) {
        if (i) spec += ',';
        spec += std::to_string(s.periods_[i]);
    }
    s.spec_ = spec;
    return s;
}

Scale Scale::parse(const std::string& spec, std::int64_t window_bound) {
    if (spec.empty()) throw std::invalid_argument("Scale: empty spec");
    auto caret = spec.find('^');
    if (caret == std::string::npos) {
        // explicit comma list
        std::vector<std::int64_t> periods;
        std::size_t pos = 0;
        while (pos <= spec.size()) {
            auto comma = spec.find(',', pos);
            if (comma == std::string::npos) comma = spec.size();
            periods.push_back(parse_int(spec, pos, comma));
            pos = comma + 1;
            if (comma == spec.size()) break;
        }
        return from_periods(std::move(periods));
    }
    // rule form: "b^k" or "c*b^k"
    if (spec.substr(caret) != "^k")
        throw std::invalid_argument("Scale: rule spec must end in '^k': '" + spec + "'");
    std::int64_t coeff = 1;
    std::size_t base_from = 0;
    auto star = spec.find('*');
    if (star != std::string::npos) {
        coeff = parse_int(spec, 0, star);
        base_from = star + 1;
    }
    std::int64_t base = parse_int(spec, base_from, caret);
    if (base < 2 || coeff < 1)
        throw std::invalid_argument("Scale: rule needs base >= 2 and positive coefficient");
    if (window_bound < coeff * base)
        throw std::invalid_argument("Scale: window bound below the first period");
    std::vector<std::int64_t> periods;
    for (__int128 p = static_cast<__int128>(coeff) * base; p <= window_bound; p *= base)
        periods.push_back(static_cast<std::int64_t>(p));
    validate_chain(periods);
    Scale s;
    s.periods_ = std::move(periods);
    s.kind_ = (star == std::string::npos) ? Kind::power_rule : Kind::scaled_power_rule;
    s.rule_base_ = base;
    s.rule_coeff_ = coeff;
    s.spec_ = spec;
    return s;
}

bool Scale::contains_period(std::int64_t v) const {
    for (auto p : periods_)
        if (p == v) return true;
    if (kind_ == Kind::explicit_list) return false;
    // rule scales extend beyond the window: check v = coeff * base^k
    if (v <= max_period() || v % rule_coeff_ != 0) return false;
    std::int64_t q = v / rule_coeff_;
    while (q % rule_base_ == 0) q /= rule_base_;
    return q == 1;
}

Rat Scale::rho_truncated() const {
    // common denominator p_K keeps everything integral
    std::int64_t pk = max_period();
    std::int64_t num = 0;
    for (auto p : periods_) num += pk / p;
    return Rat(num, pk);
}

double Scale::rho_tail_upper() const {
    if (kind_ == Kind::explicit_list) {
        // if the chain continues at all it at least doubles, so the tail is
        // at most 1/p_K; an explicit list used as a finite scale also stays
        // below this
        return 1.0 / static_cast<double>(max_period());
    }
    // geometric tail: sum_{k>K} 1/(c b^k) = 1/(p_K (b-1))
    return 1.0 / (static_cast<double>(max_period()) * static_cast<double>(rule_base_ - 1));
}

void validate_point(const OdometerPoint& g, const Scale& scale) {
    const auto& p = scale.periods();
    if (g.residues.size() != p.size())
        throw std::invalid_argument("OdometerPoint: residue count does not match scale");
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (g.residues[i] < 0 || g.residues[i] >= p[i])
            throw std::invalid_argument("OdometerPoint: residue out of range");
        if (i > 0 && g.residues[i] % p[i - 1] != g.residues[i - 1])
            throw std::invalid_argument("OdometerPoint: residues not compatible along the chain");
    }
}

OdometerPoint successor(const OdometerPoint& g, const Scale& scale) {
    validate_point(g, scale);
    OdometerPoint out = g;
    const auto& p = scale.periods();
    for (std::size_t i = 0; i < p.size(); ++i)
        out.residues[i] = (out.residues[i] + 1) % p[i];
    return out;
}

std::int64_t project(const OdometerPoint& g, std::size_t k) {
    if (k == 0 || k > g.residues.size())
        throw std::invalid_argument("project: level index out of range");
    return g.residues[k - 1];
}

OdometerPoint zero_point(const Scale& scale) {
    OdometerPoint g;
    g.residues.assign(scale.levels(), 0);
    return g;
}

}  // namespace toeplitz

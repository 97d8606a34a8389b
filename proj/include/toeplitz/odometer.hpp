#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toeplitz/rational.hpp"

namespace toeplitz {

// A scale is a divisibility chain p_1 | p_2 | ... of periods defining an
// adding machine. Only the periods not exceeding a window bound are kept
// explicitly; deeper levels are represented by the "beyond window" sentinel
// (period_at returns nullopt). For rule-generated scales the tail of the
// period-reciprocal sum is known exactly, for explicit lists it is bounded
// by 1/p_K (the chain at least doubles at every level).
class Scale {
public:
    enum class Kind { explicit_list, power_rule, scaled_power_rule };

    static Scale from_periods(std::vector<std::int64_t> periods);
    // "3,9,27" | "3^k" | "5*2^k"; rule forms are expanded while p_k <= window_bound.
    static Scale parse(const std::string& spec, std::int64_t window_bound);

    std::size_t levels() const { return periods_.size(); }
    const std::vector<std::int64_t>& periods() const { return periods_; }
    std::int64_t max_period() const { return periods_.back(); }

    // 1-based level index; nullopt = period beyond the represented window.
    std::optional<std::int64_t> period_at(std::size_t k) const {
        if (k == 0) throw std::invalid_argument("Scale: level index is 1-based");
        if (k > periods_.size()) return std::nullopt;
        return periods_[k - 1];
    }

    // True if v is p_k for some represented level, or a rule-consistent
    // deeper period.
    bool contains_period(std::int64_t v) const;

    Rat rho_truncated() const;              // sum of 1/p_k over represented levels
    double rho_tail_upper() const;          // certified bound on the unrepresented tail
    double rho_lower() const { return rho_truncated().to_double(); }
    double rho_upper() const { return rho_truncated().to_double() + rho_tail_upper(); }

    const std::string& spec() const { return spec_; }
    Kind kind() const { return kind_; }

private:
    Scale() = default;
    std::vector<std::int64_t> periods_;
    Kind kind_ = Kind::explicit_list;
    std::int64_t rule_base_ = 0;    // p_k = rule_coeff_ * rule_base_^k
    std::int64_t rule_coeff_ = 1;
    std::string spec_;
};

// Point of the truncated inverse limit: residues g_k mod p_k with
// g_{k+1} = g_k (mod p_k).
struct OdometerPoint {
    std::vector<std::int64_t> residues;
};

void validate_point(const OdometerPoint& g, const Scale& scale);

// g + 1, coordinatewise mod p_k.
OdometerPoint successor(const OdometerPoint& g, const Scale& scale);

std::int64_t project(const OdometerPoint& g, std::size_t k);

OdometerPoint zero_point(const Scale& scale);

}  // namespace toeplitz

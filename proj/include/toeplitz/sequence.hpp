#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace toeplitz {

// One-sided symbolic sequence over a small integer alphabet. Position n of
// the mathematical object lives at index n-1; helpers below keep that
// translation in one place.
using Sequence = std::vector<std::int8_t>;

inline std::int8_t at1(const Sequence& x, std::int64_t pos) { return x[static_cast<std::size_t>(pos - 1)]; }

// "0100" -> {0,1,0,0}; accepts digits and '-' prefixed digits separated optionally.
Sequence parse_block(const std::string& text);

// Renders a {0,1,...} sequence as its digit string ('-1' symbols become '-').
std::string render_block(const Sequence& x);

}  // namespace toeplitz

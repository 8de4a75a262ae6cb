#pragma once

#include <cstdint>
#include <string>

namespace padic {

// Exact accumulator for rescaled norms and losses. Sums of per-coordinate
// terms bounded by 2^62 stay exact here for any realistic sample count.
using Wide = __int128;
using UWide = unsigned __int128;

std::string to_string(Wide v);
Wide wide_from_string(const std::string& s);

}  // namespace padic

#pragma once

#include "dioph/enclosure.hpp"

#include <string>

namespace dioph {

enum class Rounding { Down, Up, Nearest };

/// Scientific-notation decimal with `digits` significant digits, rounded in
/// the given direction ("1.2345000000000000e-03"). Exact zero prints as "0".
/// Directed rounding keeps printed enclosure endpoints rigorous.
std::string format_decimal(const Rat& x, int digits, Rounding mode);

/// Parses a decimal or scientific literal ("0.25", "-1e-3", "7/5") exactly.
Rat parse_rational(const std::string& text);

}  // namespace dioph

#pragma once

#include "dioph/enclosure.hpp"

#include <vector>

namespace dioph {

using IntVector = std::vector<Int>;

/// LLL reduction of the rows of `basis` (linearly independent integer
/// vectors) with parameter delta, using exact rational Gram-Schmidt.
std::vector<IntVector> lll_reduce(std::vector<IntVector> basis, const Rat& delta = Rat(3, 4));

Int squared_norm(const IntVector& v);

}  // namespace dioph

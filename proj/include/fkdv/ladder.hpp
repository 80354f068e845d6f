#pragma once

#include <span>
#include <vector>

#include "fkdv/grid.hpp"

namespace fkdv {

/// Outcome of evaluating a quantity on boxes of growing length: the discrete
/// stand-in for "finite on the real line" versus "infinite".
enum class SeriesClass { Convergent, Divergent, Inconclusive };

const char* to_string(SeriesClass c);

/// Convergent when every successive relative change is at most 1% (or all
/// values are zero); Divergent when every successive step grows by at least
/// 5%; Inconclusive otherwise.
SeriesClass classify_ladder(std::span<const double> values);

/// Grids of lengths L0, 2 L0, ... with the point count doubled alongside so
/// the spacing stays fixed.
std::vector<Grid> doubling_ladder(double length0, std::size_t n0, int rungs);

}  // namespace fkdv

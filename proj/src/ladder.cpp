#include "fkdv/ladder.hpp"

#include <cmath>

#include "fkdv/errors.hpp"

namespace fkdv {

const char* to_string(SeriesClass c) {
  switch (c) {
    case SeriesClass::Convergent: return "CONVERGENT";
    case SeriesClass::Divergent: return "DIVERGENT";
    case SeriesClass::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

SeriesClass classify_ladder(std::span<const double> values) {
  if (values.size() < 2) throw InvalidArgument("a ladder needs at least two rungs");
  bool all_zero = true, plateau = true, growth = true;
  for (double v : values) {
    if (!std::isfinite(v)) return SeriesClass::Divergent;
    if (v != 0.0) all_zero = false;
  }
  if (all_zero) return SeriesClass::Convergent;
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    const double prev = values[k], next = values[k + 1];
    if (prev == 0.0) {
      plateau = false;
      if (next <= 0.0) growth = false;
      continue;
    }
    const double change = (next - prev) / std::abs(prev);
    if (std::abs(change) > 0.01) plateau = false;
    if (change < 0.05) growth = false;
  }
  if (plateau) return SeriesClass::Convergent;
  if (growth) return SeriesClass::Divergent;
  return SeriesClass::Inconclusive;
}

std::vector<Grid> doubling_ladder(double length0, std::size_t n0, int rungs) {
  if (rungs < 1) throw InvalidArgument("ladder needs at least one rung");
  std::vector<Grid> out;
  for (int k = 0; k < rungs; ++k)
    out.emplace_back(n0 << k, std::ldexp(length0, k));
  return out;
}

}  // namespace fkdv

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cmap/bounds.hpp"

namespace cmap {

enum class PrivateMemoryMode {
  Unit,  // N = K and M_p = N/K = 1
  Zero,  // N = K and M_p = 0
};

struct SweepPoint {
  int lambda = 0;
  int r = 0;
  int t = 0;
  PrivateMemoryMode mode = PrivateMemoryMode::Unit;
};

SystemParams sweep_params(const SweepPoint& point);

/// Points in (r, t) order.
std::vector<SweepPoint> sweep_grid(int lambda, const std::vector<int>& rs, int t_lo, int t_hi,
                                   PrivateMemoryMode mode);

namespace serial {
std::vector<BoundsReport> evaluate_sweep(const std::vector<SweepPoint>& points);
}
namespace parallel {
std::vector<BoundsReport> evaluate_sweep(const std::vector<SweepPoint>& points);
}

/// Header plus one row per report. Throws SchemeInvariantError if a row
/// breaks man_lb <= rate_achievable.
void write_sweep_csv(std::ostream& out, const std::vector<BoundsReport>& rows, bool decimal);

}  // namespace cmap

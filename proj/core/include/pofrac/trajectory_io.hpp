#pragma once

#include <string>

#include "pofrac/solver.hpp"

namespace pofrac {

// CSV with header `t,x1,x2,x3`, one row per grid point, 17 significant
// digits, '.' decimal separator and LF line endings regardless of locale.
std::string trajectory_to_csv(const Trajectory& traj);
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

}  // namespace pofrac

#include "pofrac/trajectory_io.hpp"

#include <fstream>
#include <stdexcept>

#include "pofrac/version.hpp"

namespace pofrac {

std::string trajectory_to_csv(const Trajectory& traj) {
  std::string out = "t,x1,x2,x3\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    out += format_double(traj.times[i]);
    for (int c = 0; c < 3; ++c) {
      out += ',';
      out += format_double(traj.states[i][static_cast<std::size_t>(c)]);
    }
    out += '\n';
  }
  return out;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << trajectory_to_csv(traj);
}

}  // namespace pofrac

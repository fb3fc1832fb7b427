#ifndef VP1D_SNAPSHOT_HPP
#define VP1D_SNAPSHOT_HPP

#include <string>

#include "vp1d/phase_space.hpp"

namespace vp1d {

// Flat binary phase-space snapshot: a 64-byte self-describing header
//   magic "VP1DSNAP" | u32 version | u32 model | u32 n_x | u32 n_v
//   f64 x_min | f64 x_max | f64 v_max | f64 mass_g | f64 t
// followed by n_x*n_v doubles of f and n_x*n_v doubles of g in storage
// order (native endianness). Round-trips are bit exact.
void write_snapshot(const SystemState& state, const std::string& path);

SystemState read_snapshot(const std::string& path);

} // namespace vp1d

#endif

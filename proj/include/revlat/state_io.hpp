#pragma once

// Versioned little-endian container for fixed-point leapfrog states.
//
//   offset  type        field
//   0       char[8]     magic "RVLFXST\0"
//   8       u32         format version (1)
//   12      u32         sites M
//   16      i32         field scale exponent s
//   20      i32         coefficient scale exponent p
//   24      i64         step counter l
//   32      u64         lattice spacing (IEEE-754 bits)
//   40      u64         time step (IEEE-754 bits)
//   48      u64[M]      potential V_m (IEEE-754 bits)
//   ...     i64[M]      R_{2l}
//   ...     i64[M]      I_{2l+1}
//   ...     i64[M]      I_{2l-1}
//
// Storing the lattice and potential bit-exactly lets a later process rebuild
// the identical kernel and continue (or reverse) the evolution bit for bit.

#include <filesystem>
#include <iosfwd>

#include "revlat/reversible.hpp"

namespace revlat {

inline constexpr std::uint32_t kStateFormatVersion = 1;

struct StoredState {
  FixedState state;
  LatticeConfig config;
  PotentialProfile potential;
  int coef_exp = Kernel::kDefaultCoefExp;

  Kernel kernel() const { return Kernel(config, potential, coef_exp); }
};

void write_state(std::ostream& out, const StoredState& stored);
StoredState read_state(std::istream& in);

void save_state(const std::filesystem::path& path, const StoredState& stored);
StoredState load_state(const std::filesystem::path& path);

}  // namespace revlat

#pragma once

// First-order (centered space, forward time) Schroedinger scheme
//
//   psi_{m,n+1} = psi_{m,n} + i [eps (psi_{m+1,n} - 2 psi_{m,n} + psi_{m-1,n}) - tau V_m psi_{m,n}]
//
// It is only approximately unitary and serves as the non-reversible baseline.

#include <vector>

#include "revlat/lattice.hpp"

namespace revlat {

struct AsymmetricRun {
  LatticeConfig config;
  PotentialProfile potential;
  ComplexField state;
  long step_index = 0;
};

AsymmetricRun asymmetric_step(const AsymmetricRun& run);

/// Dense M x M one-step evolution matrix, column-major: entry (row, col) is
/// at [col * M + row].
std::vector<Complex> asymmetric_matrix(const LatticeConfig& config, const PotentialProfile& potential);

struct UnitarityReport {
  double max_column_norm_defect = 0.0;     ///< max_j | ||col_j|| - 1 |
  double max_offdiag_inner_product = 0.0;  ///< max_{j<k} |<col_j, col_k>|
};

UnitarityReport unitarity_deviation(const LatticeConfig& config, const PotentialProfile& potential);

}  // namespace revlat

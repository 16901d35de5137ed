#pragma once

// Grover search assembled from lattice operators: a phase rotation R_L(v) of
// the marked site and a diffusion D(x, y) with x on the diagonal and y
// everywhere else.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "revlat/lattice.hpp"

namespace revlat {

struct GroverState {
  std::vector<Complex> amplitudes;
  std::size_t marked = 0;

  /// Equal superposition 1/sqrt(M).
  static GroverState uniform(std::size_t sites, std::size_t marked);
  std::size_t size() const { return amplitudes.size(); }
  double norm_sq() const;
  double marked_probability() const;
};

/// Marked amplitude C / sqrt(M), every unmarked amplitude c / sqrt(M).
/// Normalization is exact: C^2 / M + (M - 1) c^2 / M = 1.
struct ReducedAmplitudes {
  double C = 1.0;
  double c = 1.0;
  std::size_t M = 2;

  double marked_probability() const { return C * C / static_cast<double>(M); }
  double norm_sq() const;
};

struct DiffusionParams {
  Complex x;
  Complex y;
  std::size_t M;
};

/// x = -1 + 2/M, y = 2/M. Throws ParameterError for M < 2.
DiffusionParams optimal_df_params(std::size_t M);

struct UnitarityResiduals {
  double norm;           ///< | |x|^2 + (M-1)|y|^2 - 1 |
  double orthogonality;  ///< | x y* + x* y + (M-2)|y|^2 |
};

UnitarityResiduals check_unitarity_constraints(const DiffusionParams& params);

/// Multiplies the marked amplitude by e^{-i v}.
GroverState apply_rl(const GroverState& state, double v);

/// out_m = x in_m + y sum_{j != m} in_j, in O(M).
GroverState apply_df(const GroverState& state, const DiffusionParams& params);

/// Infinitesimal long-range hopping D_L(eps): x = 1 - (M-1) i eps, y = i eps.
DiffusionParams infinitesimal_params(std::size_t M, double epsilon);

/// Rotates the marked site by e^{+i v} (an attractive well of depth v) and
/// then applies D_L(eps). For v = pi/2 and eps > 0 the marked magnitude
/// grows by O(sqrt(M) eps).
GroverState infinitesimal_step(const GroverState& state, double epsilon, double v);

/// apply_df(apply_rl(state, pi), params).
GroverState grover_step(const GroverState& state, const DiffusionParams& params);

/// Exact two-amplitude form of grover_step with optimal parameters:
///   C' = (1 - 2/M) C + 2 (M-1)/M c,   c' = (1 - 2/M) c - (2/M) C.
ReducedAmplitudes reduced_step(const ReducedAmplitudes& amps);

struct OptimalIterations {
  long n_star;
  double success_probability;
};

/// First peak of C_N^2 / M along the reduced recursion from (1, 1).
OptimalIterations optimal_iterations(std::size_t M);

using Histogram = std::vector<std::uint64_t>;

/// i.i.d. draws with probability |amp_m|^2 / sum |amp|^2, reproducible from
/// (seed, shots). Throws StateError for a zero-norm state.
Histogram sample_measurement(const GroverState& state, std::uint64_t seed, std::uint64_t shots);

enum class GroverMode { full, reduced };

struct GroverTrace {
  std::vector<double> marked_probability;  ///< index n = after n iterations
  std::vector<double> norms;               ///< squared norm after n iterations
  Histogram histogram;
  GroverState final_state;
};

GroverTrace grover_run(std::size_t M, std::size_t marked, long iterations, GroverMode mode, std::uint64_t seed,
                       std::uint64_t shots = 1000);

}  // namespace revlat

#pragma once

// Exactly reversible (centered space, centered time) leapfrog
//
//   psi_{n+1} = psi_{n-1} + i [2 eps Lap(psi_n) - 2 tau V psi_n]
//
// in staggered real/imaginary form. Only R at even time steps and I at odd
// time steps are stored; the forward step never needs anything else:
//
//   R_{2l+2} = R_{2l}   - F(I_{2l+1})
//   I_{2l+3} = I_{2l+1} + F(R_{2l+2})
//
// with F(C)_m = 2 eps (C_{m+1} - 2 C_m + C_{m-1}) - 2 tau V_m C_m.
//
// In fixed-point mode F is evaluated over integers with a floor, and the
// backward step subtracts exactly the same floored values from unmodified
// operands, so forward/backward round trips are bit exact.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "revlat/lattice.hpp"

namespace revlat {

enum class Direction { forward, backward };

/// The hopping/potential kernel F bound to one lattice and potential.
///
/// For fixed-point operands the coefficients 2 eps and 2 tau V_m are
/// quantized as floor(c * 2^p), products are formed in 128-bit integers and
/// floor-shifted right by p. The output carries the operand's scale exponent.
class Kernel {
 public:
  static constexpr int kDefaultCoefExp = 30;

  Kernel(const LatticeConfig& config, const PotentialProfile& potential, int coef_exp = kDefaultCoefExp);

  RealField operator()(const RealField& c) const;
  FixedPointField operator()(const FixedPointField& c) const;

  const LatticeConfig& config() const { return config_; }
  const PotentialProfile& potential() const { return potential_; }
  int coef_exp() const { return coef_exp_; }
  std::int64_t hopping_coef() const { return hop_q_; }
  std::span<const std::int64_t> potential_coefs() const { return pot_q_; }

 private:
  LatticeConfig config_;
  PotentialProfile potential_;
  int coef_exp_;
  std::int64_t hop_q_;
  std::vector<std::int64_t> pot_q_;
};

RealField kernel_F(const RealField& c, const PotentialProfile& potential, const LatticeConfig& config);
FixedPointField kernel_F(const FixedPointField& c, const PotentialProfile& potential, const LatticeConfig& config,
                         int coef_exp = Kernel::kDefaultCoefExp);

/// R at time 2l, I at time 2l+1 and I at time 2l-1 (kept for the invariant).
template <typename Field>
struct StaggeredState {
  Field r_even;
  Field i_odd;
  Field i_prev;
  long l = 0;
};

using FloatState = StaggeredState<RealField>;
using FixedState = StaggeredState<FixedPointField>;

/// Seeds from R_0 and I_{-1}: I_1 = I_{-1} + F(R_0).
FloatState seed_from_history(RealField r0, RealField i_before, const Kernel& kernel);
FixedState seed_from_history(FixedPointField r0, FixedPointField i_before, const Kernel& kernel);

/// Seeds from R_0 and I_1 directly; I_{-1} = I_1 - F(R_0).
FloatState seed_from_pair(RealField r0, RealField i1, const Kernel& kernel);
FixedState seed_from_pair(FixedPointField r0, FixedPointField i1, const Kernel& kernel);

/// Quantizes R and I_odd at scale 2^s and rebuilds I_prev with the fixed kernel
/// so the fixed state is internally consistent.
FixedState quantize_state(const FloatState& state, int scale_exp, const Kernel& kernel);
FloatState dequantize_state(const FixedState& state);

FloatState leapfrog_step(const FloatState& state, const Kernel& kernel, Direction direction = Direction::forward);
FixedState leapfrog_step(const FixedState& state, const Kernel& kernel, Direction direction = Direction::forward);

/// psi_l = R_{2l} + i I_{2l+1}.
ComplexField reconstruct_complex(const FloatState& state);
ComplexField reconstruct_complex(const FixedState& state);

/// P_l = sum R_{2l}^2 + sum I_{2l+1}^2. Not conserved by the leapfrog.
double total_probability(const FloatState& state);
double total_probability(const FixedState& state);

/// sum R_{2l}^2 + sum I_{2l+1} I_{2l-1}. Exactly conserved in exact arithmetic.
double staggered_invariant(const FloatState& state);
double staggered_invariant(const FixedState& state);

struct TraceOptions {
  std::size_t record_every = 1;    ///< 0 records only the initial state
  std::size_t snapshot_every = 0;  ///< 0 disables snapshots
};

struct TraceRecord {
  long l;
  double probability;
  double invariant;
};

struct Snapshot {
  long l;
  ComplexField psi;
};

/// Append-only per-step log, ordered by l in the direction of the run.
class EvolutionTrace {
 public:
  void append(TraceRecord record);
  void append_snapshot(Snapshot snapshot);

  const std::vector<TraceRecord>& records() const { return records_; }
  const std::vector<Snapshot>& snapshots() const { return snapshots_; }

 private:
  std::vector<TraceRecord> records_;
  std::vector<Snapshot> snapshots_;
};

template <typename Field>
std::pair<StaggeredState<Field>, EvolutionTrace> evolve(StaggeredState<Field> state, const Kernel& kernel,
                                                        long n_steps, const TraceOptions& options = {},
                                                        Direction direction = Direction::forward);

extern template std::pair<FloatState, EvolutionTrace> evolve(FloatState, const Kernel&, long, const TraceOptions&,
                                                             Direction);
extern template std::pair<FixedState, EvolutionTrace> evolve(FixedState, const Kernel&, long, const TraceOptions&,
                                                             Direction);

/// One step of the complex second-order scheme: returns psi_{n+1} from
/// psi_n and psi_{n-1}. Reference form used to cross-check the staggered
/// stepper and the spectral solution.
ComplexField symmetric_step(const ComplexField& psi_n, const ComplexField& psi_nm1, const PotentialProfile& potential,
                            const LatticeConfig& config);

}  // namespace revlat

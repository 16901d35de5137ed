#include "revlat/reversible.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "revlat/errors.hpp"

namespace revlat {
namespace {

__extension__ using i128 = __int128;

constexpr std::int64_t kInt64Max = std::numeric_limits<std::int64_t>::max();
constexpr std::int64_t kInt64Min = std::numeric_limits<std::int64_t>::min();

std::int64_t narrow(i128 v, const char* what) {
  if (v > kInt64Max || v < kInt64Min) throw RangeError(std::string(what) + ": result exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

void require_same_scale(const FixedPointField& a, const FixedPointField& b) {
  if (a.scale_exp != b.scale_exp) throw ParameterError("fixed-point fields must share one scale exponent");
}

// dst op= delta, entrywise, with overflow detection.
void accumulate(FixedPointField& dst, const FixedPointField& delta, bool subtract) {
  require_same_scale(dst, delta);
  for (std::size_t m = 0; m < dst.size(); ++m) {
    std::int64_t out;
    const bool overflow = subtract ? __builtin_sub_overflow(dst.ints[m], delta.ints[m], &out)
                                   : __builtin_add_overflow(dst.ints[m], delta.ints[m], &out);
    if (overflow) throw RangeError("leapfrog update overflows 64-bit integers");
    dst.ints[m] = out;
  }
}

void accumulate(RealField& dst, const RealField& delta, bool subtract) {
  for (std::size_t m = 0; m < dst.size(); ++m) dst.values[m] += subtract ? -delta.values[m] : delta.values[m];
}

template <typename Field>
void check_state(const StaggeredState<Field>& s, const Kernel& kernel) {
  const auto& cfg = kernel.config();
  require_sites(s.r_even.size(), cfg, "staggered state R");
  require_sites(s.i_odd.size(), cfg, "staggered state I");
  require_sites(s.i_prev.size(), cfg, "staggered state I_prev");
  if constexpr (std::is_same_v<Field, FixedPointField>) {
    require_same_scale(s.r_even, s.i_odd);
    require_same_scale(s.r_even, s.i_prev);
  }
}

template <typename Field>
StaggeredState<Field> step_impl(const StaggeredState<Field>& state, const Kernel& kernel, Direction direction) {
  check_state(state, kernel);
  StaggeredState<Field> next = state;
  if (direction == Direction::forward) {
    accumulate(next.r_even, kernel(state.i_odd), true);
    next.i_prev = state.i_odd;
    accumulate(next.i_odd, kernel(next.r_even), false);
    ++next.l;
  } else {
    // Undo the I update, then the R update, then recover I_{2l-1} for the invariant.
    accumulate(next.i_odd, kernel(state.r_even), true);
    accumulate(next.r_even, kernel(next.i_odd), false);
    next.i_prev = next.i_odd;
    accumulate(next.i_prev, kernel(next.r_even), true);
    --next.l;
  }
  return next;
}

double sum_sq(const RealField& f) {
  double s = 0.0;
  for (double v : f.values) s += v * v;
  return s;
}

double dot(const RealField& a, const RealField& b) {
  double s = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) s += a.values[m] * b.values[m];
  return s;
}

}  // namespace

Kernel::Kernel(const LatticeConfig& config, const PotentialProfile& potential, int coef_exp)
    : config_(config), potential_(potential), coef_exp_(coef_exp) {
  require_sites(potential.size(), config, "kernel potential");
  if (coef_exp < 0 || coef_exp > 62) throw ParameterError("coefficient exponent must lie in [0, 62]");
  hop_q_ = quantize_value(2.0 * config.epsilon(), coef_exp);
  pot_q_.reserve(potential.size());
  for (double v : potential.values) pot_q_.push_back(quantize_value(2.0 * config.time_step() * v, coef_exp));
}

RealField Kernel::operator()(const RealField& c) const {
  require_sites(c.size(), config_, "kernel operand");
  const double two_eps = 2.0 * config_.epsilon();
  const double two_tau = 2.0 * config_.time_step();
  const auto& x = c.values;
  RealField out{std::vector<double>(x.size())};
  for (std::size_t m = 0; m < x.size(); ++m) {
    out.values[m] = two_eps * (x[config_.right(m)] - 2.0 * x[m] + x[config_.left(m)]) -
                    two_tau * potential_.values[m] * x[m];
  }
  return out;
}

FixedPointField Kernel::operator()(const FixedPointField& c) const {
  require_sites(c.size(), config_, "kernel operand");
  const auto& x = c.ints;
  FixedPointField out{std::vector<std::int64_t>(x.size()), c.scale_exp};
  for (std::size_t m = 0; m < x.size(); ++m) {
    const i128 lap = static_cast<i128>(x[config_.right(m)]) + x[config_.left(m)] - 2 * static_cast<i128>(x[m]);
    i128 hop, pot, sum;
    if (__builtin_mul_overflow(lap, static_cast<i128>(hop_q_), &hop) ||
        __builtin_mul_overflow(static_cast<i128>(pot_q_[m]), static_cast<i128>(x[m]), &pot) ||
        __builtin_sub_overflow(hop, pot, &sum)) {
      throw RangeError("fixed-point kernel product overflows 128-bit intermediate");
    }
    // Arithmetic right shift of a signed value is floor division by 2^p.
    out.ints[m] = narrow(sum >> coef_exp_, "fixed-point kernel");
  }
  return out;
}

RealField kernel_F(const RealField& c, const PotentialProfile& potential, const LatticeConfig& config) {
  return Kernel(config, potential)(c);
}

FixedPointField kernel_F(const FixedPointField& c, const PotentialProfile& potential, const LatticeConfig& config,
                         int coef_exp) {
  return Kernel(config, potential, coef_exp)(c);
}

FloatState seed_from_history(RealField r0, RealField i_before, const Kernel& kernel) {
  FloatState s{std::move(r0), std::move(i_before), {}, 0};
  s.i_prev = s.i_odd;
  accumulate(s.i_odd, kernel(s.r_even), false);
  return s;
}

FixedState seed_from_history(FixedPointField r0, FixedPointField i_before, const Kernel& kernel) {
  require_same_scale(r0, i_before);
  FixedState s{std::move(r0), std::move(i_before), {}, 0};
  s.i_prev = s.i_odd;
  accumulate(s.i_odd, kernel(s.r_even), false);
  return s;
}

FloatState seed_from_pair(RealField r0, RealField i1, const Kernel& kernel) {
  FloatState s{std::move(r0), std::move(i1), {}, 0};
  s.i_prev = s.i_odd;
  accumulate(s.i_prev, kernel(s.r_even), true);
  return s;
}

FixedState seed_from_pair(FixedPointField r0, FixedPointField i1, const Kernel& kernel) {
  require_same_scale(r0, i1);
  FixedState s{std::move(r0), std::move(i1), {}, 0};
  s.i_prev = s.i_odd;
  accumulate(s.i_prev, kernel(s.r_even), true);
  return s;
}

FixedState quantize_state(const FloatState& state, int scale_exp, const Kernel& kernel) {
  FixedState s = seed_from_pair(quantize(state.r_even, scale_exp), quantize(state.i_odd, scale_exp), kernel);
  s.l = state.l;
  return s;
}

FloatState dequantize_state(const FixedState& state) {
  return {dequantize(state.r_even), dequantize(state.i_odd), dequantize(state.i_prev), state.l};
}

FloatState leapfrog_step(const FloatState& state, const Kernel& kernel, Direction direction) {
  return step_impl(state, kernel, direction);
}

FixedState leapfrog_step(const FixedState& state, const Kernel& kernel, Direction direction) {
  return step_impl(state, kernel, direction);
}

ComplexField reconstruct_complex(const FloatState& state) {
  ComplexField psi{std::vector<Complex>(state.r_even.size()), Space::coordinate};
  for (std::size_t m = 0; m < psi.size(); ++m) psi.values[m] = {state.r_even.values[m], state.i_odd.values[m]};
  return psi;
}

ComplexField reconstruct_complex(const FixedState& state) { return reconstruct_complex(dequantize_state(state)); }

double total_probability(const FloatState& state) { return sum_sq(state.r_even) + sum_sq(state.i_odd); }

double total_probability(const FixedState& state) { return total_probability(dequantize_state(state)); }

double staggered_invariant(const FloatState& state) {
  return sum_sq(state.r_even) + dot(state.i_odd, state.i_prev);
}

double staggered_invariant(const FixedState& state) { return staggered_invariant(dequantize_state(state)); }

void EvolutionTrace::append(TraceRecord record) {
  const auto n = records_.size();
  if (n >= 1) {
    const long last = records_[n - 1].l;
    const bool ok = n >= 2 ? (record.l - last) * (last - records_[n - 2].l) > 0 : record.l != last;
    if (!ok) throw StateError("trace records must stay ordered by l");
  }
  records_.push_back(record);
}

void EvolutionTrace::append_snapshot(Snapshot snapshot) { snapshots_.push_back(std::move(snapshot)); }

template <typename Field>
std::pair<StaggeredState<Field>, EvolutionTrace> evolve(StaggeredState<Field> state, const Kernel& kernel,
                                                        long n_steps, const TraceOptions& options,
                                                        Direction direction) {
  if (n_steps < 0) throw ParameterError("n_steps must be non-negative");
  check_state(state, kernel);

  EvolutionTrace trace;
  auto record = [&](long step) {
    if (step == 0 || (options.record_every > 0 && step % static_cast<long>(options.record_every) == 0)) {
      trace.append({state.l, total_probability(state), staggered_invariant(state)});
    }
    if (options.snapshot_every > 0 && step % static_cast<long>(options.snapshot_every) == 0) {
      trace.append_snapshot({state.l, reconstruct_complex(state)});
    }
  };

  record(0);
  for (long step = 1; step <= n_steps; ++step) {
    state = leapfrog_step(state, kernel, direction);
    record(step);
  }
  return {std::move(state), std::move(trace)};
}

template std::pair<FloatState, EvolutionTrace> evolve(FloatState, const Kernel&, long, const TraceOptions&, Direction);
template std::pair<FixedState, EvolutionTrace> evolve(FixedState, const Kernel&, long, const TraceOptions&, Direction);

ComplexField symmetric_step(const ComplexField& psi_n, const ComplexField& psi_nm1, const PotentialProfile& potential,
                            const LatticeConfig& config) {
  require_sites(psi_n.size(), config, "symmetric_step psi_n");
  require_sites(psi_nm1.size(), config, "symmetric_step psi_{n-1}");
  require_sites(potential.size(), config, "symmetric_step potential");
  const double two_eps = 2.0 * config.epsilon();
  const double two_tau = 2.0 * config.time_step();
  const Complex I{0.0, 1.0};
  const auto& x = psi_n.values;

  ComplexField next{std::vector<Complex>(x.size()), Space::coordinate};
  for (std::size_t m = 0; m < x.size(); ++m) {
    const Complex lap = x[config.right(m)] - 2.0 * x[m] + x[config.left(m)];
    next.values[m] = psi_nm1.values[m] + I * (two_eps * lap - two_tau * potential.values[m] * x[m]);
  }
  return next;
}

}  // namespace revlat

#include "revlat/grover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "revlat/errors.hpp"
#include "revlat/rng.hpp"

namespace revlat {
namespace {

void require_marked(std::size_t M, std::size_t marked) {
  if (marked >= M) throw ParameterError("marked index " + std::to_string(marked) + " outside [0, M)");
}

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

GroverState expand(const ReducedAmplitudes& amps, std::size_t marked) {
  const double inv = 1.0 / std::sqrt(static_cast<double>(amps.M));
  GroverState s{std::vector<Complex>(amps.M, amps.c * inv), marked};
  s.amplitudes[marked] = amps.C * inv;
  return s;
}

}  // namespace

GroverState GroverState::uniform(std::size_t sites, std::size_t marked) {
  if (sites < 2) throw ParameterError("Grover search needs M >= 2");
  require_marked(sites, marked);
  return {std::vector<Complex>(sites, 1.0 / std::sqrt(static_cast<double>(sites))), marked};
}

double GroverState::norm_sq() const {
  CompensatedSum s;
  for (const auto& a : amplitudes) s.add(std::norm(a));
  return s.value();
}

double GroverState::marked_probability() const { return std::norm(amplitudes.at(marked)); }

double ReducedAmplitudes::norm_sq() const {
  const double Md = static_cast<double>(M);
  return C * C / Md + (Md - 1.0) * c * c / Md;
}

DiffusionParams optimal_df_params(std::size_t M) {
  if (M < 2) throw ParameterError("optimal diffusion needs M >= 2");
  const double y = 2.0 / static_cast<double>(M);
  return {Complex{-1.0 + y, 0.0}, Complex{y, 0.0}, M};
}

UnitarityResiduals check_unitarity_constraints(const DiffusionParams& p) {
  const double Md = static_cast<double>(p.M);
  const double yy = std::norm(p.y);
  const double norm = std::abs(std::norm(p.x) + (Md - 1.0) * yy - 1.0);
  const Complex cross = p.x * std::conj(p.y) + std::conj(p.x) * p.y;
  const double orth = std::abs(cross + (Md - 2.0) * yy);
  return {norm, orth};
}

GroverState apply_rl(const GroverState& state, double v) {
  require_marked(state.size(), state.marked);
  GroverState out = state;
  out.amplitudes[state.marked] *= std::polar(1.0, -v);
  return out;
}

GroverState apply_df(const GroverState& state, const DiffusionParams& params) {
  if (params.M != state.size()) throw ParameterError("diffusion size does not match state length");
  CompensatedSum re, im;
  for (const auto& a : state.amplitudes) {
    re.add(a.real());
    im.add(a.imag());
  }
  const Complex total{re.value(), im.value()};
  // x a_m + y (total - a_m)
  GroverState out = state;
  const Complex diag = params.x - params.y;
  for (auto& a : out.amplitudes) a = diag * a + params.y * total;
  return out;
}

DiffusionParams infinitesimal_params(std::size_t M, double epsilon) {
  const double Md = static_cast<double>(M);
  return {Complex{1.0, -(Md - 1.0) * epsilon}, Complex{0.0, epsilon}, M};
}

GroverState infinitesimal_step(const GroverState& state, double epsilon, double v) {
  return apply_df(apply_rl(state, -v), infinitesimal_params(state.size(), epsilon));
}

GroverState grover_step(const GroverState& state, const DiffusionParams& params) {
  return apply_df(apply_rl(state, std::numbers::pi), params);
}

ReducedAmplitudes reduced_step(const ReducedAmplitudes& amps) {
  if (amps.M < 2) throw ParameterError("reduced recursion needs M >= 2");
  const double Md = static_cast<double>(amps.M);
  const double keep = 1.0 - 2.0 / Md;
  return {keep * amps.C + 2.0 * (Md - 1.0) / Md * amps.c, keep * amps.c - 2.0 / Md * amps.C, amps.M};
}

OptimalIterations optimal_iterations(std::size_t M) {
  if (M < 2) throw ParameterError("optimal_iterations needs M >= 2");
  ReducedAmplitudes amps{1.0, 1.0, M};
  OptimalIterations best{0, amps.marked_probability()};
  for (long n = 1;; ++n) {
    amps = reduced_step(amps);
    const double p = amps.marked_probability();
    if (!(p > best.success_probability)) break;
    best = {n, p};
  }
  return best;
}

Histogram sample_measurement(const GroverState& state, std::uint64_t seed, std::uint64_t shots) {
  if (shots < 1) throw ParameterError("shots must be >= 1");
  std::vector<double> cdf(state.size());
  double total = 0.0;
  for (std::size_t m = 0; m < state.size(); ++m) {
    total += std::norm(state.amplitudes[m]);
    cdf[m] = total;
  }
  if (!(total > 0.0)) throw StateError("cannot sample a zero-norm state");

  const CounterRng rng(seed);
  Histogram hist(state.size(), 0);
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const double u = rng.uniform(shot) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    // u < total in exact arithmetic; the fallback may land on a trailing
    // zero-probability bin, so walk back to the last populated one.
    if (it == cdf.end()) --it;
    while (std::norm(state.amplitudes[static_cast<std::size_t>(it - cdf.begin())]) == 0.0 && it != cdf.begin()) --it;
    ++hist[static_cast<std::size_t>(it - cdf.begin())];
  }
  return hist;
}

GroverTrace grover_run(std::size_t M, std::size_t marked, long iterations, GroverMode mode, std::uint64_t seed,
                       std::uint64_t shots) {
  if (iterations < 0) throw ParameterError("iterations must be >= 0");
  GroverTrace trace;
  auto state = GroverState::uniform(M, marked);

  if (mode == GroverMode::full) {
    const auto params = optimal_df_params(M);
    trace.marked_probability.push_back(state.marked_probability());
    trace.norms.push_back(state.norm_sq());
    for (long n = 0; n < iterations; ++n) {
      state = grover_step(state, params);
      trace.marked_probability.push_back(state.marked_probability());
      trace.norms.push_back(state.norm_sq());
    }
  } else {
    ReducedAmplitudes amps{1.0, 1.0, M};
    trace.marked_probability.push_back(amps.marked_probability());
    trace.norms.push_back(amps.norm_sq());
    for (long n = 0; n < iterations; ++n) {
      amps = reduced_step(amps);
      trace.marked_probability.push_back(amps.marked_probability());
      trace.norms.push_back(amps.norm_sq());
    }
    state = expand(amps, marked);
  }

  trace.histogram = sample_measurement(state, seed, shots);
  trace.final_state = std::move(state);
  return trace;
}

}  // namespace revlat

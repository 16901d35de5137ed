// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "revlat/asymmetric.hpp"
#include "revlat/grover.hpp"
#include "revlat/lattice.hpp"
#include "revlat/reversible.hpp"
#include "revlat/rng.hpp"
#include "revlat/spectral.hpp"

using namespace revlat;

namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

PotentialProfile random_potential(std::size_t M, std::uint64_t seed, double amplitude) {
  const CounterRng rng(seed);
  PotentialProfile V = PotentialProfile::zero(M);
  for (std::size_t m = 0; m < M; ++m) V.values[m] = amplitude * (2.0 * rng.uniform(m) - 1.0);
  return V;
}

RealField part(const ComplexField& psi, bool imag) {
  RealField out{std::vector<double>(psi.size())};
  for (std::size_t m = 0; m < psi.size(); ++m) out.values[m] = imag ? psi.values[m].imag() : psi.values[m].real();
  return out;
}

ComplexField gaussian(const LatticeConfig& cfg, double center, double width, double k0) {
  const double params[] = {center, width, k0};
  return init_state(InitKind::gaussian, params, cfg);
}

double norm_a(const FloatState& s, const LatticeConfig& cfg) { return std::sqrt(l2_norm_a(reconstruct_complex(s), cfg)); }

// Worst lattice mode ka = pi: R_0 = (-1)^m, I_{-1} = 0.
FloatState worst_mode(const Kernel& F, std::size_t M) {
  RealField r{std::vector<double>(M)};
  for (std::size_t m = 0; m < M; ++m) r.values[m] = m % 2 == 0 ? 1.0 : -1.0;
  return seed_from_history(r, RealField{std::vector<double>(M, 0.0)}, F);
}

void criterion1(Check& v) {
  const std::size_t M = 256;
  const LatticeConfig cfg = LatticeConfig::from_epsilon(M, 1.0, 0.2);
  const long n = 10000;
  std::size_t total = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Kernel F(cfg, random_potential(M, seed, 0.5));
    const CounterRng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const auto psi = gaussian(cfg, 64.0 + 128.0 * rng.uniform(0), 8.0, 2.0 * rng.uniform(1) - 1.0);
    const auto start = seed_from_history(quantize(part(psi, false), 30), quantize(part(psi, true), 30), F);
    const auto fwd = evolve(start, F, n, {0, 0}).first;
    const auto back = evolve(fwd, F, n, {0, 0}, Direction::backward).first;
    for (std::size_t m = 0; m < M; ++m) {
      total += start.r_even.ints[m] != back.r_even.ints[m];
      total += start.i_odd.ints[m] != back.i_odd.ints[m];
      total += start.i_prev.ints[m] != back.i_prev.ints[m];
    }
    total += back.l != start.l;
  }
  v.detail << "M=256 eps=0.2, 50 seeds x (1e4 fwd + 1e4 bwd): mismatches=" << total << ' ';
  v.require(total == 0, "integer mismatches");
}

void criterion2(Check& v) {
  const std::size_t M = 256;
  const LatticeConfig cfg = LatticeConfig::from_epsilon(M, 1.0, 0.2);
  const Kernel F(cfg, PotentialProfile::zero(M));
  const auto psi = gaussian(cfg, 128.0, 10.0, 0.5);
  const auto [state, trace] = evolve(seed_from_history(part(psi, false), part(psi, true), F), F, 10000);
  const auto& recs = trace.records();
  const double inv0 = recs.front().invariant, p0 = recs.front().probability;
  double inv_drift = 0.0, p_dev = 0.0;
  for (const auto& r : recs) {
    inv_drift = std::max(inv_drift, std::abs(r.invariant - inv0) / std::abs(inv0));
    p_dev = std::max(p_dev, std::abs(r.probability - p0));
  }
  v.detail << "invariant relative drift=" << inv_drift << " P_l max deviation=" << p_dev << ' ';
  v.require(inv_drift <= 1e-9, "invariant drift");
  v.require(p_dev >= 100.0 * inv_drift && p_dev > 0.0, "P_l oscillation");
}

void criterion3(Check& v) {
  const LatticeConfig cfg(3, 1.0, 0.1);
  const Kernel F(cfg, PotentialProfile::zero(3));
  auto s = seed_from_history(RealField{{1.0, 0.0, 0.0}}, RealField{{0.0, 0.0, 0.0}}, F);
  double err = 0.0;
  auto cmp = [&](const RealField& got, std::vector<double> want) {
    for (std::size_t m = 0; m < 3; ++m) err = std::max(err, std::abs(got.values[m] - want[m]));
  };
  cmp(s.i_odd, {-0.4, 0.2, 0.2});
  const double inv0 = staggered_invariant(s);
  s = leapfrog_step(s, F);
  cmp(s.r_even, {0.76, 0.12, 0.12});
  cmp(s.i_odd, {-0.656, 0.328, 0.328});
  const double inv1 = staggered_invariant(s);
  err = std::max({err, std::abs(inv0 - 1.0), std::abs(inv1 - 1.0)});
  v.detail << "max error=" << err << ' ';
  v.require(err <= 1e-14, "fixture values");
}

void criterion4(Check& v) {
  const std::size_t M = 64;
  {
    const LatticeConfig cfg = LatticeConfig::from_epsilon(M, 1.0, 0.2);
    const Kernel F(cfg, PotentialProfile::zero(M));
    const auto psi = gaussian(cfg, 32.0, 4.0, 1.0);
    auto s = seed_from_history(part(psi, false), part(psi, true), F);
    const double n0 = norm_a(s, cfg);
    double worst = 0.0;
    for (long chunk = 0; chunk < 100; ++chunk) {
      s = evolve(s, F, 1000, {0, 0}).first;
      worst = std::max(worst, norm_a(s, cfg) / n0);
    }
    v.detail << "eps=0.2 max norm ratio over 1e5 steps=" << worst << "; ";
    v.require(worst <= 10.0, "eps=0.2 bounded");
  }
  {
    const LatticeConfig cfg = LatticeConfig::from_epsilon(M, 1.0, 0.3);
    const Kernel F(cfg, PotentialProfile::zero(M));
    auto s = worst_mode(F, M);
    const double n0 = norm_a(s, cfg);
    long when = -1;
    for (long n = 1; n <= 1000 && when < 0; ++n) {
      s = leapfrog_step(s, F);
      if (norm_a(s, cfg) > 1e6 * n0) when = n;
    }
    v.detail << "eps=0.3 exceeds 1e6x at step " << when << "; ";
    v.require(when > 0, "eps=0.3 growth");
  }
  const LatticeConfig probe = LatticeConfig::from_epsilon(M, 1.0, 0.2);
  const auto s02 = classify_stability(0.2, probe).verdict;
  const auto s03 = classify_stability(0.3, probe).verdict;
  const auto s025 = classify_stability(0.25, probe).verdict;
  v.detail << "verdicts " << to_string(s02) << '/' << to_string(s03) << '/' << to_string(s025) << "; ";
  v.require(s02 == Verdict::stable && s03 == Verdict::unstable && s025 == Verdict::marginal, "verdicts");
  {
    const LatticeConfig cfg = LatticeConfig::from_epsilon(M, 1.0, 0.25);
    const Kernel F(cfg, PotentialProfile::zero(M));
    auto s = worst_mode(F, M);
    double lo = INFINITY, hi = 0.0;
    for (long n = 1; n <= 10000; ++n) {
      s = leapfrog_step(s, F);
      if (n >= 100 && (n % 100 == 0)) {
        const double ratio = norm_a(s, cfg) / static_cast<double>(n);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
    }
    v.detail << "eps=0.25 norm/n in [" << lo << ", " << hi << "]";
    v.require(hi <= 2.0 * lo, "eps=0.25 linear growth");
  }
}

void criterion5(Check& v) {
  double err = 0.0, parseval = 0.0, roots = 0.0;
  for (double eps : {0.05, 0.2}) {
    for (std::size_t M = 8; M <= 64; ++M) {
      const LatticeConfig cfg = LatticeConfig::from_epsilon(M, 1.0, eps);
      const auto zero = PotentialProfile::zero(M);
      const CounterRng rng(M * 131 + static_cast<std::uint64_t>(eps * 100));
      ComplexField psi0{std::vector<Complex>(M)};
      for (std::size_t m = 0; m < M; ++m) psi0.values[m] = {2.0 * rng.uniform(2 * m) - 1.0, 2.0 * rng.uniform(2 * m + 1) - 1.0};
      const auto psi1 = asymmetric_step({cfg, zero, psi0, 0}).state;
      ComplexField prev = psi0, cur = psi1;
      for (long n = 2; n <= 100; ++n) {
        auto next = symmetric_step(cur, prev, zero, cfg);
        prev = std::move(cur);
        cur = std::move(next);
      }
      const auto spec = spectral_evolve(psi0, psi1, cfg, 100);
      for (std::size_t m = 0; m < M; ++m) err = std::max(err, std::abs(cur.values[m] - spec.values[m]));
      const double norm = l2_norm_a(cur, cfg);
      parseval = std::max(parseval, std::abs(spectrum_norm_sq(dft(cur, cfg)) - norm) / norm);
    }
  }
  for (int i = 0; i < 1000; ++i) {
    const double f = -2.0 + 4.0 * i / 999.0;
    const auto [vp, vm] = characteristic_roots(f);
    roots = std::max(roots, std::abs(vp * vm + 1.0));
  }
  v.detail << "max entrywise error=" << err << " parseval=" << parseval << " |v+v- + 1|=" << roots << ' ';
  v.require(err <= 1e-10, "spectral vs direct");
  v.require(parseval <= 1e-10, "parseval");
  v.require(roots <= 1e-14, "root product");
}

void criterion6(Check& v) {
  const std::size_t M = 16;
  const auto zero = PotentialProfile::zero(M);
  const double d1 = unitarity_deviation(LatticeConfig(M, 1.0, 0.1), zero).max_column_norm_defect;
  const double d2 = unitarity_deviation(LatticeConfig(M, 1.0, 0.05), zero).max_column_norm_defect;
  const double expected = std::sqrt(1.06) - 1.0;
  v.detail << "defect=" << d1 << " (expected " << expected << ") halving ratio=" << d1 / d2 << ' ';
  v.require(std::abs(d1 - expected) <= 1e-12, "column norm defect");
  v.require(d1 / d2 >= 2.0 && d1 / d2 <= 8.0, "halving ratio");
}

void criterion7(Check& v) {
  const auto s = grover_step(GroverState::uniform(4, 2), optimal_df_params(4));
  const double p = s.marked_probability();
  const auto hist = sample_measurement(s, 2024, 10000);
  v.detail << "P(marked)=" << p << " marked shots=" << hist[2] << "/10000 ";
  v.require(std::abs(p - 1.0) <= 1e-12, "marked probability");
  v.require(hist[2] == 10000, "sampling");
}

void criterion8(Check& v) {
  double ratio_lo = INFINITY, ratio_hi = 0.0, worst_margin = INFINITY, trace_err = 0.0;
  for (std::size_t M = 16; M <= 4096; M *= 2) {
    const auto best = optimal_iterations(M);
    const double ratio = static_cast<double>(best.n_star) / std::sqrt(static_cast<double>(M));
    ratio_lo = std::min(ratio_lo, ratio);
    ratio_hi = std::max(ratio_hi, ratio);
    worst_margin = std::min(worst_margin, best.success_probability - (1.0 - 2.0 / static_cast<double>(M)));
    if (M <= 1024) {
      const long n = 2 * best.n_star + 2;
      const auto full = grover_run(M, M / 3, n, GroverMode::full, 1, 1);
      const auto red = grover_run(M, M / 3, n, GroverMode::reduced, 1, 1);
      for (std::size_t i = 0; i < full.marked_probability.size(); ++i) {
        trace_err = std::max(trace_err, std::abs(full.marked_probability[i] - red.marked_probability[i]));
      }
      for (std::size_t m = 0; m < M; ++m) {
        trace_err = std::max(trace_err, std::abs(full.final_state.amplitudes[m] - red.final_state.amplitudes[m]));
      }
    }
  }
  v.detail << "N*/sqrt(M) in [" << ratio_lo << ", " << ratio_hi << "] min success margin=" << worst_margin
           << " full vs reduced=" << trace_err << ' ';
  v.require(ratio_lo >= 0.70 && ratio_hi <= 0.90, "query scaling");
  v.require(worst_margin >= 0.0, "success probability");
  v.require(trace_err <= 1e-10, "full vs reduced");
}

void criterion9(Check& v) {
  double residual = 0.0, norm_err = 0.0;
  for (std::size_t M = 2; M <= (std::size_t{1} << 20); M *= 2) {
    for (std::size_t Mv : {M, M + 1}) {
      const auto r = check_unitarity_constraints(optimal_df_params(Mv));
      residual = std::max({residual, r.norm, r.orthogonality});
    }
  }
  for (std::size_t M = 2; M <= (std::size_t{1} << 16); M *= 2) {
    const auto p = optimal_df_params(M);
    auto s = GroverState::uniform(M, M - 1);
    const long n = optimal_iterations(M).n_star + 2;
    for (long i = 0; i < n; ++i) {
      const double before = s.norm_sq();
      s = grover_step(s, p);
      norm_err = std::max(norm_err, std::abs(s.norm_sq() - before));
    }
  }
  v.detail << "max unitarity residual=" << residual << " max per-step norm change=" << norm_err << ' ';
  v.require(residual <= 1e-12, "residuals");
  v.require(norm_err <= 1e-12, "norm preservation");
}

void criterion10(Check& v) {
  const auto s = infinitesimal_step(GroverState::uniform(4, 0), 0.05, kPi / 2);
  const double err = std::abs(s.amplitudes[0] - Complex{0.075, 0.575});
  const std::size_t M = 1024;
  const auto u = GroverState::uniform(M, 0);
  double lo = INFINITY, hi = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double eps = 1e-3 * i;
    const auto t = infinitesimal_step(u, eps, kPi / 2);
    const double slope = (std::abs(t.amplitudes[0]) - std::abs(u.amplitudes[0])) / eps;
    lo = std::min(lo, slope);
    hi = std::max(hi, slope);
  }
  v.detail << "amplitude error=" << err << " slope spread=" << hi / lo - 1.0 << ' ';
  v.require(err <= 1e-12, "M=4 amplitude");
  v.require(hi <= 1.2 * lo && lo > 0.0, "slope linearity");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria = {
      {"bit-exact fixed-point reversibility", criterion1},
      {"staggered invariant conservation", criterion2},
      {"three-site hand-check fixture", criterion3},
      {"stability threshold", criterion4},
      {"spectral solution equivalence", criterion5},
      {"asymmetric scheme non-unitarity", criterion6},
      {"Grover exact case M=4", criterion7},
      {"Grover query scaling", criterion8},
      {"diffusion unitarity constraints", criterion9},
      {"infinitesimal amplification", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "[exception: " << e.what() << "] ";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !v.pass;
    std::printf("%s criterion %zu (%s): %s(%.2fs)\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                v.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

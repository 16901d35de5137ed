#pragma once

// Lattice Fourier analysis of the reversible scheme at V = 0.
//
// Each momentum mode obeys hat_{n+1} = hat_{n-1} - 2 i f hat_n with
// f = 4 eps sin^2(ka/2). Its characteristic roots v_pm = -i f pm sqrt(1 - f^2)
// satisfy v_+ v_- = -1; they have unit modulus iff |f| <= 1 and coincide at
// |f| = 1, where the solution grows linearly in n. Hence the scheme is stable
// iff 4|eps| < 1.
//
// The infinite-lattice transform is realized on the periodic M-site lattice
// with modes k_j = 2 pi j / (M a) and dk = 2 pi / (M a):
//
//   hat_j  = a / sqrt(2 pi) * sum_m exp(-i m a k_j) psi_m
//   psi_m  = dk / sqrt(2 pi) * sum_j exp(+i m a k_j) hat_j
//
// which makes sum_j |hat_j|^2 dk == sum_m |psi_m|^2 a exactly.

#include <cstddef>

#include "revlat/lattice.hpp"

namespace revlat {

struct MomentumSpectrum {
  std::vector<Complex> values;
  LatticeConfig config;

  std::size_t size() const { return values.size(); }
};

/// k_j a = 2 pi j / M for j in [0, M).
double mode_ka(std::size_t j, std::size_t sites);

MomentumSpectrum dft(const ComplexField& field, const LatticeConfig& config);
ComplexField idft(const MomentumSpectrum& spectrum);

/// sum_j |hat_j|^2 dk.
double spectrum_norm_sq(const MomentumSpectrum& spectrum);

double f_epsilon(double ka, double epsilon);

/// psi_nm1 - 2 i f psi_n.
Complex momentum_step(Complex psi_n, Complex psi_nm1, double f);

struct RootPair {
  Complex v_plus;
  Complex v_minus;
};

/// For |f| > 1 the square root is taken as i sqrt(f^2 - 1), keeping both
/// roots on the imaginary axis.
RootPair characteristic_roots(double f);

enum class Verdict { stable, marginal, unstable };

const char* to_string(Verdict verdict);

struct StabilityReport {
  double epsilon = 0.0;
  Verdict verdict = Verdict::stable;
  double worst_ka = 0.0;
  double worst_root_modulus = 0.0;
};

/// Verdict from the strict criterion (stable iff 4|eps| < 1, marginal iff
/// 4|eps| == 1); the worst mode is the lattice mode with the largest root
/// modulus, ties broken by the largest |f|.
StabilityReport classify_stability(double epsilon, const LatticeConfig& config);

/// Closed-form solution of the mode recursion at step n from hat_0, hat_1.
/// Uses the theta parametrization f = sin(theta) for |f| < 1, the simple-pole
/// residue form for |f| > 1 and the linear-in-n double-root form at |f| == 1.
Complex closed_form(Complex psi0_hat, Complex psi1_hat, double f, long n);

/// Coordinate-space solution of the complex leapfrog at step n (V = 0),
/// computed mode by mode from the closed form.
ComplexField spectral_evolve(const ComplexField& psi0, const ComplexField& psi1, const LatticeConfig& config, long n);

}  // namespace revlat

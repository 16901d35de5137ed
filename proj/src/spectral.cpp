#include "revlat/spectral.hpp"

#include <cmath>
#include <numbers>

#include "revlat/errors.hpp"

namespace revlat {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

// i^n, exact.
Complex i_power(long n) {
  static constexpr double re[4] = {1.0, 0.0, -1.0, 0.0};
  static constexpr double im[4] = {0.0, 1.0, 0.0, -1.0};
  const long k = ((n % 4) + 4) % 4;
  return {re[k], im[k]};
}

// exp(-i 2 pi j m / M) with the exponent reduced mod M, so twiddles are exact
// at the quarter points.
Complex twiddle(std::size_t jm, std::size_t M, int sign) {
  const double angle = 2.0 * kPi * static_cast<double>(jm % M) / static_cast<double>(M);
  return std::polar(1.0, sign * angle);
}

}  // namespace

double mode_ka(std::size_t j, std::size_t sites) {
  return 2.0 * kPi * static_cast<double>(j) / static_cast<double>(sites);
}

MomentumSpectrum dft(const ComplexField& field, const LatticeConfig& config) {
  require_sites(field.size(), config, "dft input");
  if (field.space != Space::coordinate) throw ParameterError("dft expects a coordinate-space field");
  const std::size_t M = config.sites();
  const double scale = config.spacing() / std::sqrt(2.0 * kPi);

  MomentumSpectrum out{std::vector<Complex>(M), config};
  for (std::size_t j = 0; j < M; ++j) {
    Complex sum{};
    for (std::size_t m = 0; m < M; ++m) sum += twiddle(j * m, M, -1) * field.values[m];
    out.values[j] = scale * sum;
  }
  return out;
}

ComplexField idft(const MomentumSpectrum& spectrum) {
  const auto& config = spectrum.config;
  require_sites(spectrum.size(), config, "idft input");
  const std::size_t M = config.sites();
  const double dk = 2.0 * kPi / (static_cast<double>(M) * config.spacing());
  const double scale = dk / std::sqrt(2.0 * kPi);

  ComplexField out{std::vector<Complex>(M), Space::coordinate};
  for (std::size_t m = 0; m < M; ++m) {
    Complex sum{};
    for (std::size_t j = 0; j < M; ++j) sum += twiddle(j * m, M, +1) * spectrum.values[j];
    out.values[m] = scale * sum;
  }
  return out;
}

double spectrum_norm_sq(const MomentumSpectrum& spectrum) {
  const double dk = 2.0 * kPi / (static_cast<double>(spectrum.size()) * spectrum.config.spacing());
  double sum = 0.0;
  for (const auto& v : spectrum.values) sum += std::norm(v);
  return sum * dk;
}

double f_epsilon(double ka, double epsilon) {
  const double s = std::sin(0.5 * ka);
  return 4.0 * epsilon * s * s;
}

Complex momentum_step(Complex psi_n, Complex psi_nm1, double f) { return psi_nm1 - 2.0 * kI * f * psi_n; }

RootPair characteristic_roots(double f) {
  const double disc = 1.0 - f * f;
  const Complex root = disc >= 0.0 ? Complex{std::sqrt(disc), 0.0} : Complex{0.0, std::sqrt(f * f - 1.0)};
  const Complex shift{0.0, -f};
  return {shift + root, shift - root};
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::stable:
      return "stable";
    case Verdict::marginal:
      return "marginal";
    case Verdict::unstable:
      return "unstable";
  }
  return "unknown";
}

StabilityReport classify_stability(double epsilon, const LatticeConfig& config) {
  StabilityReport report;
  report.epsilon = epsilon;
  const double crit = 4.0 * std::abs(epsilon);
  report.verdict = crit < 1.0 ? Verdict::stable : (crit == 1.0 ? Verdict::marginal : Verdict::unstable);

  double worst_f = -1.0;
  for (std::size_t j = 0; j < config.sites(); ++j) {
    const double ka = mode_ka(j, config.sites());
    const double f = f_epsilon(ka, epsilon);
    const auto [vp, vm] = characteristic_roots(f);
    const double modulus = std::max(std::abs(vp), std::abs(vm));
    if (modulus > report.worst_root_modulus || (modulus == report.worst_root_modulus && std::abs(f) > worst_f)) {
      report.worst_root_modulus = modulus;
      report.worst_ka = ka;
      worst_f = std::abs(f);
    }
  }
  return report;
}

Complex closed_form(Complex psi0_hat, Complex psi1_hat, double f, long n) {
  if (n < 0) throw ParameterError("closed_form needs n >= 0");
  const double nd = static_cast<double>(n);

  if (std::abs(f) == 1.0) {
    // Double root v0 = -i sign(f): hat_n = ((1 - n) hat_0 + n hat_1 / v0) v0^n,
    // with 1 / v0 = conj(v0).
    const Complex v0{0.0, -f};
    const Complex v0n = f > 0.0 ? i_power(-n) : i_power(n);
    return ((1.0 - nd) * psi0_hat + nd * psi1_hat * std::conj(v0)) * v0n;
  }

  if (std::abs(f) < 1.0) {
    // f = sin(theta): v_+ = e^{-i theta}, v_- = -e^{i theta}.
    const double theta = std::asin(f);
    const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;
    const Complex plus = (std::polar(1.0, theta) * psi0_hat + psi1_hat) * std::polar(1.0, -nd * theta);
    const Complex minus = (std::polar(1.0, -theta) * psi0_hat - psi1_hat) * sign_n * std::polar(1.0, nd * theta);
    return (plus + minus) / (2.0 * std::cos(theta));
  }

  // Both roots lie on the imaginary axis, v = i b, so v^n = b^n i^n.
  const auto [vp, vm] = characteristic_roots(f);
  const Complex two_if{0.0, 2.0 * f};
  const Complex denom = vp - vm;  // 2 sqrt(1 - f^2)
  const Complex in = i_power(n);
  const Complex term_p = ((vp + two_if) * psi0_hat + psi1_hat) * std::pow(vp.imag(), nd) * in;
  const Complex term_m = ((vm + two_if) * psi0_hat + psi1_hat) * std::pow(vm.imag(), nd) * in;
  return (term_p - term_m) / denom;
}

ComplexField spectral_evolve(const ComplexField& psi0, const ComplexField& psi1, const LatticeConfig& config, long n) {
  if (n < 0) throw ParameterError("spectral_evolve needs n >= 0");
  if (n == 0) return psi0;
  if (n == 1) return psi1;
  const auto hat0 = dft(psi0, config);
  const auto hat1 = dft(psi1, config);
  const double eps = config.epsilon();

  MomentumSpectrum out{std::vector<Complex>(config.sites()), config};
  for (std::size_t j = 0; j < config.sites(); ++j) {
    const double f = f_epsilon(mode_ka(j, config.sites()), eps);
    out.values[j] = closed_form(hat0.values[j], hat1.values[j], f, n);
  }
  return idft(out);
}

}  // namespace revlat

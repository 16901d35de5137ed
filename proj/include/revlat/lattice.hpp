#pragma once

// Shared 1D periodic lattice types: configuration, field containers, norms,
// initial states and float <-> fixed-point conversion.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace revlat {

using Complex = std::complex<double>;

enum class Boundary { periodic };

/// Uniform periodic lattice x_m = m a, t_n = n tau.
///
/// epsilon() is always recomputed from the stored spacing and time step, so
/// it can never disagree with them.
class LatticeConfig {
 public:
  LatticeConfig(std::size_t sites, double spacing, double time_step);

  /// Builds a configuration with tau = epsilon * a^2.
  static LatticeConfig from_epsilon(std::size_t sites, double spacing, double epsilon);

  std::size_t sites() const { return sites_; }
  double spacing() const { return spacing_; }
  double time_step() const { return time_step_; }
  double epsilon() const { return time_step_ / (spacing_ * spacing_); }
  Boundary boundary() const { return Boundary::periodic; }

  /// Periodic neighbour indices.
  std::size_t right(std::size_t m) const { return m + 1 == sites_ ? 0 : m + 1; }
  std::size_t left(std::size_t m) const { return m == 0 ? sites_ - 1 : m - 1; }

 private:
  std::size_t sites_;
  double spacing_;
  double time_step_;
};

enum class Space { coordinate, momentum };

struct ComplexField {
  std::vector<Complex> values;
  Space space = Space::coordinate;

  std::size_t size() const { return values.size(); }
};

struct RealField {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

/// Entry m represents ints[m] / 2^scale_exp exactly.
struct FixedPointField {
  std::vector<std::int64_t> ints;
  int scale_exp = 0;

  std::size_t size() const { return ints.size(); }
  bool operator==(const FixedPointField&) const = default;
};

/// Time-independent potential V_m.
struct PotentialProfile {
  std::vector<double> values;

  static PotentialProfile zero(std::size_t sites) { return {std::vector<double>(sites, 0.0)}; }
  std::size_t size() const { return values.size(); }
};

enum class InitKind { uniform, point, gaussian };

/// Initial wave functions.
///
///   uniform:  no parameters, 1/sqrt(M) at every site.
///   point:    {site}, 1 at that site.
///   gaussian: {center, width[, wavenumber]} in physical units (x = m a),
///             exp(-(x - center)^2 / (2 width^2)) e^{i k x}, normalized so
///             that l2_norm_a == 1.
ComplexField init_state(InitKind kind, std::span<const double> params, const LatticeConfig& config);

/// Squared lattice L2 norm: sum_m |psi_m|^2 a.
double l2_norm_a(const ComplexField& field, const LatticeConfig& config);

/// floor(value * 2^scale_exp) per entry. Throws RangeError if any entry
/// (or NaN/inf) does not fit in a signed 64-bit integer.
FixedPointField quantize(const RealField& field, int scale_exp);

/// ints[m] / 2^s exactly (ldexp, no extra rounding for |ints| < 2^53).
RealField dequantize(const FixedPointField& fp);

/// floor(value * 2^scale_exp) for a single value; shared by the coefficient
/// quantization of the fixed-point kernel.
std::int64_t quantize_value(double value, int scale_exp);

void require_sites(std::size_t actual, const LatticeConfig& config, const char* what);

}  // namespace revlat

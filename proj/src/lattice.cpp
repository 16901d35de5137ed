#include "revlat/lattice.hpp"

#include <cmath>
#include <string>

#include "revlat/errors.hpp"

namespace revlat {

LatticeConfig::LatticeConfig(std::size_t sites, double spacing, double time_step)
    : sites_(sites), spacing_(spacing), time_step_(time_step) {
  if (sites < 3) throw ParameterError("lattice needs at least 3 sites, got " + std::to_string(sites));
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw ParameterError("lattice spacing must be positive");
  // tau == 0 is accepted: it is the identity evolution used by the analysis tools.
  if (!(time_step >= 0.0) || !std::isfinite(time_step)) throw ParameterError("time step must be non-negative");
}

LatticeConfig LatticeConfig::from_epsilon(std::size_t sites, double spacing, double epsilon) {
  return LatticeConfig(sites, spacing, epsilon * spacing * spacing);
}

void require_sites(std::size_t actual, const LatticeConfig& config, const char* what) {
  if (actual != config.sites()) {
    throw ParameterError(std::string(what) + ": length " + std::to_string(actual) + " does not match " +
                         std::to_string(config.sites()) + " lattice sites");
  }
}

ComplexField init_state(InitKind kind, std::span<const double> params, const LatticeConfig& config) {
  const std::size_t M = config.sites();
  ComplexField field{std::vector<Complex>(M, Complex{}), Space::coordinate};

  switch (kind) {
    case InitKind::uniform: {
      if (!params.empty()) throw ParameterError("uniform state takes no parameters");
      const double amp = 1.0 / std::sqrt(static_cast<double>(M));
      for (auto& v : field.values) v = amp;
      break;
    }
    case InitKind::point: {
      if (params.size() != 1) throw ParameterError("point state takes exactly one parameter (site)");
      const double site = params[0];
      if (!(site >= 0.0) || site != std::floor(site) || site >= static_cast<double>(M)) {
        throw ParameterError("point site must be an integer in [0, M)");
      }
      field.values[static_cast<std::size_t>(site)] = 1.0;
      break;
    }
    case InitKind::gaussian: {
      if (params.size() != 2 && params.size() != 3) {
        throw ParameterError("gaussian state takes (center, width[, wavenumber])");
      }
      const double center = params[0];
      const double width = params[1];
      const double k0 = params.size() == 3 ? params[2] : 0.0;
      if (!(width > 0.0) || !std::isfinite(width) || !std::isfinite(center) || !std::isfinite(k0)) {
        throw ParameterError("gaussian width must be positive and parameters finite");
      }
      const double a = config.spacing();
      for (std::size_t m = 0; m < M; ++m) {
        const double x = static_cast<double>(m) * a;
        const double d = (x - center) / width;
        field.values[m] = std::exp(-0.5 * d * d) * std::polar(1.0, k0 * x);
      }
      const double norm = l2_norm_a(field, config);
      if (!(norm > 0.0)) throw ParameterError("gaussian packet underflows on this lattice");
      const double scale = 1.0 / std::sqrt(norm);
      for (auto& v : field.values) v *= scale;
      break;
    }
  }
  return field;
}

double l2_norm_a(const ComplexField& field, const LatticeConfig& config) {
  double sum = 0.0;
  for (const auto& v : field.values) sum += std::norm(v);
  return sum * config.spacing();
}

std::int64_t quantize_value(double value, int scale_exp) {
  if (scale_exp < 0) throw ParameterError("scale exponent must be non-negative");
  const double scaled = std::floor(std::ldexp(value, scale_exp));
  // [-2^63, 2^63) is exactly representable at both ends.
  constexpr double lo = -9223372036854775808.0;
  constexpr double hi = 9223372036854775808.0;
  if (!(scaled >= lo && scaled < hi)) {
    throw RangeError("value " + std::to_string(value) + " at scale 2^" + std::to_string(scale_exp) +
                     " exceeds 64-bit integer range");
  }
  return static_cast<std::int64_t>(scaled);
}

FixedPointField quantize(const RealField& field, int scale_exp) {
  FixedPointField fp{{}, scale_exp};
  fp.ints.reserve(field.size());
  for (double v : field.values) fp.ints.push_back(quantize_value(v, scale_exp));
  return fp;
}

RealField dequantize(const FixedPointField& fp) {
  RealField out;
  out.values.reserve(fp.size());
  for (auto v : fp.ints) out.values.push_back(std::ldexp(static_cast<double>(v), -fp.scale_exp));
  return out;
}

}  // namespace revlat

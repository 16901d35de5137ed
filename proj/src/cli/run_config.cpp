#include "revlat/cli/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "revlat/errors.hpp"
#include "revlat/rng.hpp"

namespace revlat::cli {
namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

LatticeConfig lattice_of(const RunConfig& cfg) {
  if (cfg.tau && cfg.eps) {
    const double implied = *cfg.tau / (cfg.spacing * cfg.spacing);
    if (std::abs(implied - *cfg.eps) > 1e-12 * std::max(std::abs(*cfg.eps), 1e-300)) {
      throw ParameterError("inconsistent lattice: eps = " + format_double(*cfg.eps) + " but tau / a^2 = " +
                           format_double(implied));
    }
    return LatticeConfig(cfg.sites, cfg.spacing, *cfg.tau);
  }
  if (cfg.tau) return LatticeConfig(cfg.sites, cfg.spacing, *cfg.tau);
  return LatticeConfig::from_epsilon(cfg.sites, cfg.spacing, cfg.eps.value_or(0.2));
}

PotentialProfile potential_of(const RunConfig& cfg, const LatticeConfig& lattice) {
  const std::size_t M = lattice.sites();
  auto V = PotentialProfile::zero(M);
  if (cfg.potential == "zero") return V;
  if (cfg.potential == "random") {
    const CounterRng rng(cfg.seed);
    for (std::size_t m = 0; m < M; ++m) V.values[m] = cfg.potential_amplitude * (2.0 * rng.uniform(m) - 1.0);
    return V;
  }
  if (cfg.potential == "harmonic") {
    const double half = 0.5 * static_cast<double>(M) * lattice.spacing();
    for (std::size_t m = 0; m < M; ++m) {
      const double u = (static_cast<double>(m) * lattice.spacing() - half) / half;
      V.values[m] = cfg.potential_amplitude * u * u;
    }
    return V;
  }
  throw ParameterError("unknown potential '" + cfg.potential + "' (expected zero, random or harmonic)");
}

ComplexField initial_state_of(const RunConfig& cfg, const LatticeConfig& lattice) {
  const double L = static_cast<double>(lattice.sites()) * lattice.spacing();
  if (cfg.init == "uniform") return init_state(InitKind::uniform, {}, lattice);
  if (cfg.init == "point") {
    const double site = static_cast<double>(cfg.site);
    return init_state(InitKind::point, std::span<const double>(&site, 1), lattice);
  }
  if (cfg.init == "gaussian") {
    const double params[3] = {cfg.center.value_or(0.5 * L), cfg.width.value_or(L / 16.0), cfg.wavenumber};
    return init_state(InitKind::gaussian, params, lattice);
  }
  throw ParameterError("unknown init '" + cfg.init + "' (expected gaussian, point or uniform)");
}

std::string to_config_text(const RunConfig& cfg) {
  std::ostringstream os;
  auto str = [&](const char* key, const std::string& v) {
    if (!v.empty()) os << key << " = \"" << v << "\"\n";
  };
  auto num = [&](const char* key, double v) { os << key << " = " << format_double(v) << '\n'; };
  auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v) num(key, *v);
  };
  auto integer = [&](const char* key, auto v) { os << key << " = " << v << '\n'; };

  str("scheme", cfg.scheme);
  str("repr", cfg.repr);
  integer("sites", cfg.sites);
  num("spacing", cfg.spacing);
  opt("tau", cfg.tau);
  opt("eps", cfg.eps);
  str("potential", cfg.potential);
  num("potential-amplitude", cfg.potential_amplitude);
  str("init", cfg.init);
  opt("center", cfg.center);
  opt("width", cfg.width);
  num("wavenumber", cfg.wavenumber);
  integer("site", cfg.site);
  integer("steps", cfg.steps);
  str("direction", cfg.direction);
  integer("scale-exp", cfg.scale_exp);
  integer("coef-exp", cfg.coef_exp);
  integer("record-every", cfg.record_every);
  integer("snapshot-every", cfg.snapshot_every);
  integer("marked", cfg.marked);
  str("iterations", cfg.iterations);
  str("mode", cfg.mode);
  integer("seed", cfg.seed);
  integer("shots", cfg.shots);
  str("out", cfg.out);
  str("report", cfg.report);
  str("histogram", cfg.histogram);
  str("save-state", cfg.save_state);
  str("load-state", cfg.load_state);
  return os.str();
}

nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json j = {
      {"scheme", cfg.scheme},
      {"repr", cfg.repr},
      {"sites", cfg.sites},
      {"spacing", cfg.spacing},
      {"potential", cfg.potential},
      {"potential_amplitude", cfg.potential_amplitude},
      {"init", cfg.init},
      {"wavenumber", cfg.wavenumber},
      {"site", cfg.site},
      {"steps", cfg.steps},
      {"direction", cfg.direction},
      {"scale_exp", cfg.scale_exp},
      {"coef_exp", cfg.coef_exp},
      {"record_every", cfg.record_every},
      {"snapshot_every", cfg.snapshot_every},
      {"marked", cfg.marked},
      {"iterations", cfg.iterations},
      {"mode", cfg.mode},
      {"seed", cfg.seed},
      {"shots", cfg.shots},
  };
  j["tau"] = cfg.tau ? nlohmann::json(*cfg.tau) : nlohmann::json(nullptr);
  j["eps"] = cfg.eps ? nlohmann::json(*cfg.eps) : nlohmann::json(nullptr);
  j["center"] = cfg.center ? nlohmann::json(*cfg.center) : nlohmann::json(nullptr);
  j["width"] = cfg.width ? nlohmann::json(*cfg.width) : nlohmann::json(nullptr);
  return j;
}

}  // namespace revlat::cli

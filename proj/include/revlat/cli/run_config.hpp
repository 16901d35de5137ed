#pragma once

// Parameter record shared by all CLI subcommands. Every field maps to one
// long flag and to one key of the flat `key = value` config file.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "revlat/lattice.hpp"

namespace revlat::cli {

struct RunConfig {
  std::string command;

  // lattice
  std::string scheme = "reversible";  // reversible | asymmetric
  std::string repr = "float";         // float | fixed
  std::size_t sites = 256;
  double spacing = 1.0;
  std::optional<double> tau;
  std::optional<double> eps;

  // potential: zero | random | harmonic
  std::string potential = "zero";
  double potential_amplitude = 0.5;

  // initial state: gaussian | point | uniform
  std::string init = "gaussian";
  std::optional<double> center;
  std::optional<double> width;
  double wavenumber = 0.0;
  std::size_t site = 0;

  long steps = 1000;
  std::string direction = "forward";
  int scale_exp = 30;
  int coef_exp = 30;
  std::size_t record_every = 1;
  std::size_t snapshot_every = 0;

  // grover / sampling
  std::size_t marked = 0;
  std::string iterations = "auto";
  std::string mode = "full";
  std::uint64_t seed = 1;
  std::uint64_t shots = 10000;

  // files
  std::string out;
  std::string report;
  std::string histogram;
  std::string save_state;
  std::string load_state;

  bool operator==(const RunConfig&) const = default;
};

/// Lattice from (sites, spacing, tau | eps). When both tau and eps are given
/// they must satisfy eps == tau / a^2 (relative 1e-12); otherwise the missing
/// one is derived. Defaults to eps = 0.2.
LatticeConfig lattice_of(const RunConfig& cfg);

/// zero, random (uniform in [-amp, amp], drawn from `seed`) or harmonic
/// (amp * ((x - L/2) / (L/2))^2).
PotentialProfile potential_of(const RunConfig& cfg, const LatticeConfig& lattice);

ComplexField initial_state_of(const RunConfig& cfg, const LatticeConfig& lattice);

/// Flat `key = value` text readable through `--config`. Doubles carry 17
/// significant digits so the round trip is lossless.
std::string to_config_text(const RunConfig& cfg);

nlohmann::json to_json(const RunConfig& cfg);

}  // namespace revlat::cli

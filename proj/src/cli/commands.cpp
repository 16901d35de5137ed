#include "revlat/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>

#include "revlat/asymmetric.hpp"
#include "revlat/errors.hpp"
#include "revlat/grover.hpp"
#include "revlat/reversible.hpp"
#include "revlat/spectral.hpp"
#include "revlat/state_io.hpp"

namespace revlat::cli {
namespace {

using nlohmann::json;

const std::vector<std::pair<const char*, const char*>> kCommands = {
    {"evolve", "Evolve a wave packet with the reversible or asymmetric scheme"},
    {"reverse-check", "Run n fixed-point steps forward and back and compare integers"},
    {"stability", "Classify the stability of the reversible scheme for a given eps"},
    {"spectral-check", "Compare the closed-form spectral solution with direct iteration"},
    {"grover", "Run Grover search built from phase rotation and unitary diffusion"},
    {"sample", "Sample position measurements from a Grover or saved leapfrog state"},
};

void build_app(CLI::App& app, RunConfig& cfg) {
  app.set_config("--config", "", "Flat key = value file; explicit flags override it");
  app.fallthrough();
  app.require_subcommand(1);
  for (const auto& [name, help] : kCommands) app.add_subcommand(name, help);

  app.add_option("--scheme", cfg.scheme, "reversible | asymmetric")
      ->check(CLI::IsMember({"reversible", "asymmetric"}));
  app.add_option("--repr", cfg.repr, "float | fixed")->check(CLI::IsMember({"float", "fixed"}));
  app.add_option("--sites", cfg.sites, "Number of lattice sites M");
  app.add_option("--spacing", cfg.spacing, "Lattice spacing a");
  app.add_option("--tau", cfg.tau, "Time step tau");
  app.add_option("--eps", cfg.eps, "eps = tau / a^2");
  app.add_option("--potential", cfg.potential, "zero | random | harmonic")
      ->check(CLI::IsMember({"zero", "random", "harmonic"}));
  app.add_option("--potential-amplitude", cfg.potential_amplitude, "Potential scale");
  app.add_option("--init", cfg.init, "gaussian | point | uniform")
      ->check(CLI::IsMember({"gaussian", "point", "uniform"}));
  app.add_option("--center", cfg.center, "Gaussian center (physical units)");
  app.add_option("--width", cfg.width, "Gaussian width (physical units)");
  app.add_option("--wavenumber", cfg.wavenumber, "Gaussian carrier wavenumber");
  app.add_option("--site", cfg.site, "Site of the point state");
  app.add_option("--steps", cfg.steps, "Number of steps")->check(CLI::NonNegativeNumber);
  app.add_option("--direction", cfg.direction, "forward | backward")
      ->check(CLI::IsMember({"forward", "backward"}));
  app.add_option("--scale-exp", cfg.scale_exp, "Field scale exponent s (fixed mode)")->check(CLI::Range(0, 62));
  app.add_option("--coef-exp", cfg.coef_exp, "Coefficient scale exponent p (fixed mode)")->check(CLI::Range(0, 62));
  app.add_option("--record-every", cfg.record_every, "Trace cadence (0: initial record only)");
  app.add_option("--snapshot-every", cfg.snapshot_every, "Snapshot cadence (0: none)");
  app.add_option("--marked", cfg.marked, "Marked index for Grover search");
  app.add_option("--iterations", cfg.iterations, "Grover iterations or 'auto'");
  app.add_option("--mode", cfg.mode, "full | reduced")->check(CLI::IsMember({"full", "reduced"}));
  app.add_option("--seed", cfg.seed, "RNG seed");
  app.add_option("--shots", cfg.shots, "Measurement shots")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "Trace CSV path");
  app.add_option("--report", cfg.report, "Report JSON path");
  app.add_option("--histogram", cfg.histogram, "Histogram CSV path");
  app.add_option("--save-state", cfg.save_state, "Write the final fixed-point state here");
  app.add_option("--load-state", cfg.load_state, "Start from a saved fixed-point state");
}

void parse_into(CLI::App& app, const std::vector<std::string>& args) {
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  app.parse(reversed);
}

std::string command_of(const CLI::App& app) { return app.get_subcommands().front()->get_name(); }

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw StateError("cannot open " + path + " for writing");
  out << std::setprecision(17);
  return out;
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json lattice_json(const LatticeConfig& lat) {
  return {{"sites", lat.sites()}, {"spacing", lat.spacing()}, {"tau", lat.time_step()}, {"eps", lat.epsilon()}};
}

double max_abs_diff(const ComplexField& a, const ComplexField& b) {
  double err = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) err = std::max(err, std::abs(a.values[m] - b.values[m]));
  return err;
}

RealField real_part(const ComplexField& psi) {
  RealField out{std::vector<double>(psi.size())};
  for (std::size_t m = 0; m < psi.size(); ++m) out.values[m] = psi.values[m].real();
  return out;
}

RealField imag_part(const ComplexField& psi) {
  RealField out{std::vector<double>(psi.size())};
  for (std::size_t m = 0; m < psi.size(); ++m) out.values[m] = psi.values[m].imag();
  return out;
}

// Initial fixed state: from --load-state, or R_0 = Re psi_0 and I_{-1} = Im psi_0.
StoredState initial_fixed(const RunConfig& cfg) {
  if (!cfg.load_state.empty()) return load_state(cfg.load_state);
  const auto lat = lattice_of(cfg);
  auto V = potential_of(cfg, lat);
  const auto psi0 = initial_state_of(cfg, lat);
  const Kernel kernel(lat, V, cfg.coef_exp);
  auto state = seed_from_history(quantize(real_part(psi0), cfg.scale_exp), quantize(imag_part(psi0), cfg.scale_exp),
                                 kernel);
  return {std::move(state), lat, std::move(V), cfg.coef_exp};
}

void write_snapshot(const std::string& path, const ComplexField& psi) {
  auto out = open_output(path);
  out << "m,re,im\n";
  for (std::size_t m = 0; m < psi.size(); ++m) out << m << ',' << psi.values[m].real() << ',' << psi.values[m].imag() << '\n';
}

std::string snapshot_path(const RunConfig& cfg, long l) { return cfg.out + ".snap_" + std::to_string(l) + ".csv"; }

void write_trace(const RunConfig& cfg, const EvolutionTrace& trace) {
  if (cfg.out.empty()) return;
  const auto& snaps = trace.snapshots();
  for (const auto& snap : snaps) write_snapshot(snapshot_path(cfg, snap.l), snap.psi);

  auto out = open_output(cfg.out);
  out << "l,P_l,invariant" << (snaps.empty() ? "" : ",snapshot") << '\n';
  std::size_t next = 0;
  for (const auto& r : trace.records()) {
    out << r.l << ',' << r.probability << ',' << r.invariant;
    if (!snaps.empty()) {
      out << ',';
      while (next < snaps.size() && snaps[next].l < r.l) ++next;
      if (next < snaps.size() && snaps[next].l == r.l) out << snapshot_path(cfg, r.l);
    }
    out << '\n';
  }
}

json trace_summary(const EvolutionTrace& trace) {
  const auto& recs = trace.records();
  const double inv0 = recs.front().invariant;
  const double p0 = recs.front().probability;
  double inv_drift = 0.0, p_dev = 0.0;
  for (const auto& r : recs) {
    inv_drift = std::max(inv_drift, std::abs(r.invariant - inv0));
    p_dev = std::max(p_dev, std::abs(r.probability - p0));
  }
  return {{"initial_invariant", inv0},
          {"final_invariant", recs.back().invariant},
          {"max_invariant_drift", inv_drift},
          {"initial_probability", p0},
          {"final_probability", recs.back().probability},
          {"max_probability_deviation", p_dev},
          {"records", recs.size()}};
}

json run_evolve(const RunConfig& cfg) {
  const Direction dir = cfg.direction == "backward" ? Direction::backward : Direction::forward;
  const TraceOptions opts{cfg.record_every, cfg.snapshot_every};

  if (cfg.scheme == "asymmetric") {
    if (cfg.repr != "float") throw ParameterError("the asymmetric scheme runs in float mode only");
    if (dir == Direction::backward) throw ParameterError("the asymmetric scheme has no exact backward step");
    const auto lat = lattice_of(cfg);
    AsymmetricRun run{lat, potential_of(cfg, lat), initial_state_of(cfg, lat), 0};
    const double n0 = l2_norm_a(run.state, lat);
    std::ofstream out;
    if (!cfg.out.empty()) {
      out = open_output(cfg.out);
      out << "n,norm_sq_a\n" << 0 << ',' << n0 << '\n';
    }
    for (long n = 1; n <= cfg.steps; ++n) {
      run = asymmetric_step(run);
      if (out.is_open() && cfg.record_every > 0 && n % static_cast<long>(cfg.record_every) == 0) {
        out << n << ',' << l2_norm_a(run.state, lat) << '\n';
      }
    }
    return {{"lattice", lattice_json(lat)},
            {"initial_norm_sq_a", n0},
            {"final_norm_sq_a", number(l2_norm_a(run.state, lat))}};
  }

  if (cfg.repr == "fixed") {
    auto stored = initial_fixed(cfg);
    const auto kernel = stored.kernel();
    auto [state, trace] = evolve(stored.state, kernel, cfg.steps, opts, dir);
    write_trace(cfg, trace);
    json results = trace_summary(trace);
    results["lattice"] = lattice_json(stored.config);
    results["final_l"] = state.l;
    results["scale_exp"] = state.r_even.scale_exp;
    results["coef_exp"] = stored.coef_exp;
    if (!cfg.save_state.empty()) {
      stored.state = std::move(state);
      save_state(cfg.save_state, stored);
      results["saved_state"] = cfg.save_state;
    }
    return results;
  }

  if (!cfg.load_state.empty() || !cfg.save_state.empty()) {
    throw ParameterError("state files hold fixed-point states; use --repr fixed");
  }
  const auto lat = lattice_of(cfg);
  const Kernel kernel(lat, potential_of(cfg, lat), cfg.coef_exp);
  const auto psi0 = initial_state_of(cfg, lat);
  auto [state, trace] = evolve(seed_from_history(real_part(psi0), imag_part(psi0), kernel), kernel, cfg.steps, opts, dir);
  write_trace(cfg, trace);
  json results = trace_summary(trace);
  results["lattice"] = lattice_json(lat);
  results["final_l"] = state.l;
  return results;
}

json run_reverse_check(const RunConfig& cfg) {
  const auto stored = initial_fixed(cfg);
  const auto kernel = stored.kernel();
  const TraceOptions quiet{0, 0};
  const auto forward = evolve(stored.state, kernel, cfg.steps, quiet, Direction::forward).first;
  const auto back = evolve(forward, kernel, cfg.steps, quiet, Direction::backward).first;

  std::size_t mismatches = 0;
  auto count = [&](const FixedPointField& a, const FixedPointField& b) {
    for (std::size_t m = 0; m < a.size(); ++m) mismatches += a.ints[m] != b.ints[m];
  };
  count(stored.state.r_even, back.r_even);
  count(stored.state.i_odd, back.i_odd);
  count(stored.state.i_prev, back.i_prev);
  const bool exact = mismatches == 0 && back.l == stored.state.l;
  return {{"bit_exact", exact},
          {"mismatches", mismatches},
          {"steps", cfg.steps},
          {"lattice", lattice_json(stored.config)},
          {"scale_exp", stored.state.r_even.scale_exp},
          {"coef_exp", stored.coef_exp},
          {"forward_final_l", forward.l}};
}

json run_stability(const RunConfig& cfg) {
  const double eps = cfg.eps.value_or(lattice_of(cfg).epsilon());
  const auto lat = LatticeConfig::from_epsilon(cfg.sites, cfg.spacing, std::abs(eps));
  const auto report = classify_stability(eps, lat);
  // Growth of the worst mode from unit data, hat_0 = 1, hat_1 = 0.
  const double f = f_epsilon(report.worst_ka, eps);
  const double amplitude = std::abs(closed_form(1.0, 0.0, f, cfg.steps));
  return {{"epsilon", eps},
          {"verdict", to_string(report.verdict)},
          {"criterion", 4.0 * std::abs(eps)},
          {"worst_ka", report.worst_ka},
          {"worst_root_modulus", report.worst_root_modulus},
          {"worst_mode_amplitude", number(amplitude)},
          {"steps", cfg.steps}};
}

json run_spectral_check(const RunConfig& cfg) {
  const auto lat = lattice_of(cfg);
  const auto psi0 = initial_state_of(cfg, lat);
  const auto zero = PotentialProfile::zero(lat.sites());
  const auto psi1 = asymmetric_step({lat, zero, psi0, 0}).state;

  ComplexField prev = psi0, cur = psi1;
  for (long n = 1; n < cfg.steps; ++n) {
    auto next = symmetric_step(cur, prev, zero, lat);
    prev = std::move(cur);
    cur = std::move(next);
  }
  const auto direct = cfg.steps == 0 ? psi0 : cur;
  const auto spectral = spectral_evolve(psi0, psi1, lat, cfg.steps);

  const double norm = l2_norm_a(direct, lat);
  const double parseval = std::abs(spectrum_norm_sq(dft(direct, lat)) - norm) / norm;
  double root_err = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double f = -2.0 + 4.0 * i / 1000.0;
    const auto [vp, vm] = characteristic_roots(f);
    root_err = std::max(root_err, std::abs(vp * vm + 1.0));
  }
  return {{"lattice", lattice_json(lat)},
          {"steps", cfg.steps},
          {"max_abs_error", max_abs_diff(direct, spectral)},
          {"parseval_relative_error", parseval},
          {"max_root_product_error", root_err},
          {"verdict", to_string(classify_stability(lat.epsilon(), lat).verdict)}};
}

long grover_iterations(const RunConfig& cfg) {
  if (cfg.iterations == "auto") return optimal_iterations(cfg.sites).n_star;
  try {
    std::size_t used = 0;
    const long n = std::stol(cfg.iterations, &used);
    if (used == cfg.iterations.size() && n >= 0) return n;
  } catch (const std::exception&) {
  }
  throw ParameterError("--iterations must be 'auto' or a non-negative integer");
}

void write_histogram(const std::string& path, const Histogram& hist) {
  if (path.empty()) return;
  auto out = open_output(path);
  out << "index,count\n";
  for (std::size_t m = 0; m < hist.size(); ++m) out << m << ',' << hist[m] << '\n';
}

json histogram_summary(const Histogram& hist, std::uint64_t shots) {
  const auto top = std::max_element(hist.begin(), hist.end());
  return {{"shots", shots},
          {"most_frequent_index", top - hist.begin()},
          {"most_frequent_fraction", static_cast<double>(*top) / static_cast<double>(shots)}};
}

json run_grover(const RunConfig& cfg) {
  const auto best = optimal_iterations(cfg.sites);
  const long n = grover_iterations(cfg);
  const auto mode = cfg.mode == "reduced" ? GroverMode::reduced : GroverMode::full;
  const auto trace = grover_run(cfg.sites, cfg.marked, n, mode, cfg.seed, cfg.shots);

  if (!cfg.out.empty()) {
    auto out = open_output(cfg.out);
    out << "n,marked_probability,norm_sq\n";
    for (std::size_t i = 0; i < trace.marked_probability.size(); ++i) {
      out << i << ',' << trace.marked_probability[i] << ',' << trace.norms[i] << '\n';
    }
  }
  write_histogram(cfg.histogram, trace.histogram);

  double norm_defect = 0.0;
  for (double v : trace.norms) norm_defect = std::max(norm_defect, std::abs(v - 1.0));
  json results = {{"sites", cfg.sites},
                  {"marked", cfg.marked},
                  {"mode", cfg.mode},
                  {"N_star", best.n_star},
                  {"optimal_success_probability", best.success_probability},
                  {"iterations", n},
                  {"success_probability", trace.marked_probability.back()},
                  {"max_norm_defect", norm_defect},
                  {"marked_hits", trace.histogram[cfg.marked]}};
  results["histogram"] = histogram_summary(trace.histogram, cfg.shots);
  if (!cfg.histogram.empty()) results["histogram_file"] = cfg.histogram;
  return results;
}

json run_sample(const RunConfig& cfg) {
  GroverState state;
  json source;
  if (!cfg.load_state.empty()) {
    const auto stored = load_state(cfg.load_state);
    state.amplitudes = reconstruct_complex(stored.state).values;
    source = {{"state_file", cfg.load_state}, {"l", stored.state.l}};
  } else {
    const long n = grover_iterations(cfg);
    const auto mode = cfg.mode == "reduced" ? GroverMode::reduced : GroverMode::full;
    state = grover_run(cfg.sites, cfg.marked, n, mode, cfg.seed, 1).final_state;
    source = {{"grover_iterations", n}, {"marked", cfg.marked}};
  }
  const auto hist = sample_measurement(state, cfg.seed, cfg.shots);
  write_histogram(cfg.histogram.empty() ? cfg.out : cfg.histogram, hist);
  json results = histogram_summary(hist, cfg.shots);
  results["source"] = source;
  results["sites"] = hist.size();
  return results;
}

json run(const RunConfig& cfg) {
  if (cfg.command == "evolve") return run_evolve(cfg);
  if (cfg.command == "reverse-check") return run_reverse_check(cfg);
  if (cfg.command == "stability") return run_stability(cfg);
  if (cfg.command == "spectral-check") return run_spectral_check(cfg);
  if (cfg.command == "grover") return run_grover(cfg);
  if (cfg.command == "sample") return run_sample(cfg);
  throw ParameterError("unknown command " + cfg.command);
}

int fail(std::ostream& err, int code, const char* kind, const std::string& message) {
  err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
  return code;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"revlat"};
  build_app(app, cfg);
  parse_into(app, args);
  cfg.command = command_of(app);
  return cfg;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Reversible lattice Schroedinger schemes, stability analysis and Grover search", "revlat"};
  build_app(app, cfg);
  try {
    parse_into(app, args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    return fail(err, kUsage, "usage", e.what());
  }
  cfg.command = command_of(app);

  try {
    const json report = {{"command", cfg.command}, {"config", to_json(cfg)}, {"results", run(cfg)}};
    const std::string text = report.dump(2);
    if (!cfg.report.empty()) {
      auto file = open_output(cfg.report);
      file << text << '\n';
    }
    out << text << '\n';
    return kOk;
  } catch (const ParameterError& e) {
    return fail(err, kParameter, "parameter", e.what());
  } catch (const RangeError& e) {
    return fail(err, kRange, "range", e.what());
  } catch (const StateError& e) {
    return fail(err, kState, "state", e.what());
  } catch (const std::exception& e) {
    return fail(err, kFailure, "internal", e.what());
  }
}

}  // namespace revlat::cli

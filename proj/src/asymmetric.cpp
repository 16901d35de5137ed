#include "revlat/asymmetric.hpp"

#include <algorithm>
#include <cmath>

namespace revlat {

AsymmetricRun asymmetric_step(const AsymmetricRun& run) {
  const auto& cfg = run.config;
  const std::size_t M = cfg.sites();
  require_sites(run.state.size(), cfg, "asymmetric_step state");
  require_sites(run.potential.size(), cfg, "asymmetric_step potential");

  const double eps = cfg.epsilon();
  const double tau = cfg.time_step();
  const Complex I{0.0, 1.0};
  const auto& psi = run.state.values;

  AsymmetricRun next = run;
  for (std::size_t m = 0; m < M; ++m) {
    const Complex lap = psi[cfg.right(m)] - 2.0 * psi[m] + psi[cfg.left(m)];
    next.state.values[m] = psi[m] + I * (eps * lap - tau * run.potential.values[m] * psi[m]);
  }
  ++next.step_index;
  return next;
}

std::vector<Complex> asymmetric_matrix(const LatticeConfig& config, const PotentialProfile& potential) {
  const std::size_t M = config.sites();
  require_sites(potential.size(), config, "asymmetric_matrix potential");
  const double eps = config.epsilon();
  const double tau = config.time_step();
  const Complex I{0.0, 1.0};

  std::vector<Complex> A(M * M, Complex{});
  for (std::size_t m = 0; m < M; ++m) {
    A[m * M + m] += 1.0 - 2.0 * I * eps - I * tau * potential.values[m];
    A[config.right(m) * M + m] += I * eps;
    A[config.left(m) * M + m] += I * eps;
  }
  return A;
}

UnitarityReport unitarity_deviation(const LatticeConfig& config, const PotentialProfile& potential) {
  const std::size_t M = config.sites();
  const auto A = asymmetric_matrix(config, potential);
  auto column = [&](std::size_t j) { return A.begin() + static_cast<std::ptrdiff_t>(j * M); };

  UnitarityReport report;
  for (std::size_t j = 0; j < M; ++j) {
    double norm_sq = 0.0;
    for (auto it = column(j); it != column(j + 1); ++it) norm_sq += std::norm(*it);
    report.max_column_norm_defect = std::max(report.max_column_norm_defect, std::abs(std::sqrt(norm_sq) - 1.0));

    for (std::size_t k = j + 1; k < M; ++k) {
      Complex dot{};
      for (std::size_t m = 0; m < M; ++m) dot += std::conj(A[j * M + m]) * A[k * M + m];
      report.max_offdiag_inner_product = std::max(report.max_offdiag_inner_product, std::abs(dot));
    }
  }
  return report;
}

}  // namespace revlat

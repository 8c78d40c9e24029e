#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "qsteer/errors.hpp"
#include "qsteer/linalg.hpp"
#include "qsteer/matrix.hpp"
#include "qsteer/measures.hpp"
#include "qsteer/rng.hpp"
#include "qsteer/states.hpp"
#include "qsteer/steering.hpp"

namespace qsteer {

// Single-qubit polarization analyzer settings:
// H=(1,0), V=(0,1), D=(H+V)/sqrt2, A=(H-V)/sqrt2, R=(H+iV)/sqrt2,
// L=(H-iV)/sqrt2. (D,A), (R,L), (H,V) are the sigma_x/y/z eigenbases.
enum class PolBasis { H, V, D, A, R, L };

struct MeasurementSetting {
  PolBasis basis_a = PolBasis::H;
  PolBasis basis_b = PolBasis::H;
};

inline ComplexMatrix projector(PolBasis b) {
  const double r = 1.0 / std::sqrt(2.0);
  Complex a0, a1;
  switch (b) {
    case PolBasis::H: a0 = 1.0; a1 = 0.0; break;
    case PolBasis::V: a0 = 0.0; a1 = 1.0; break;
    case PolBasis::D: a0 = r; a1 = r; break;
    case PolBasis::A: a0 = r; a1 = -r; break;
    case PolBasis::R: a0 = r; a1 = Complex(0.0, r); break;
    case PolBasis::L: a0 = r; a1 = Complex(0.0, -r); break;
  }
  ComplexMatrix p(2, 2);
  p(0, 0) = a0 * std::conj(a0);
  p(0, 1) = a0 * std::conj(a1);
  p(1, 0) = a1 * std::conj(a0);
  p(1, 1) = a1 * std::conj(a1);
  return p;
}

inline constexpr std::size_t kNumSettings = 36;

// The 36 overcomplete settings: all pairs of the six analyzer states, in
// fixed H,V,D,A,R,L order (A-side major). Every function below relies on
// this order.
inline std::array<MeasurementSetting, kNumSettings> tomography_settings() {
  constexpr std::array<PolBasis, 6> bases = {PolBasis::H, PolBasis::V, PolBasis::D,
                                             PolBasis::A, PolBasis::R, PolBasis::L};
  std::array<MeasurementSetting, kNumSettings> s{};
  std::size_t k = 0;
  for (PolBasis a : bases)
    for (PolBasis b : bases) s[k++] = MeasurementSetting{a, b};
  return s;
}

// Coincidence probability Tr[rho (Pi_a (x) Pi_b)] for one setting.
inline double setting_probability(const DensityMatrix& rho,
                                  const MeasurementSetting& s) {
  if (rho.dim() != 4) throw DimensionError("setting_probability expects a 4x4 state");
  const ComplexMatrix proj = kron(projector(s.basis_a), projector(s.basis_b));
  const double p = (rho.matrix() * proj).trace().real();
  return std::clamp(p, 0.0, 1.0);
}

// Integer-valued; kept as double so exact (infinite-shot) expectations can
// flow through the same reconstruction path in tests.
using Counts = std::vector<double>;

// Poisson counts with mean shots * Tr[rho (Pi_a (x) Pi_b)] per setting, in
// tomography_settings() order. Identical (seed, shots, rho) give identical
// counts.
inline Counts simulate_counts(const DensityMatrix& rho, long long shots,
                              std::uint64_t seed) {
  if (shots < 1) throw ParameterError("shots must be >= 1");
  Rng rng(seed);
  Counts counts(kNumSettings);
  const auto settings = tomography_settings();
  for (std::size_t k = 0; k < kNumSettings; ++k)
    counts[k] = static_cast<double>(
        rng.poisson(static_cast<double>(shots) * setting_probability(rho, settings[k])));
  return counts;
}

namespace detail {

// Settings index for analyzer pair (a_idx, b_idx) in H,V,D,A,R,L order.
inline std::size_t setting_index(std::size_t a_idx, std::size_t b_idx) {
  return a_idx * 6 + b_idx;
}

// Analyzer index of the +1/-1 eigenstate of Pauli i (1=x, 2=y, 3=z).
inline std::size_t eigenstate_index(std::size_t pauli, bool plus) {
  switch (pauli) {
    case 1: return plus ? 2 : 3;  // D, A
    case 2: return plus ? 4 : 5;  // R, L
    default: return plus ? 0 : 1;  // H, V
  }
}

// Euclidean projection of eigenvalues onto the probability simplex: the
// closest unit-trace PSD matrix in Frobenius norm shares the eigenvectors
// and has eigenvalues max(lambda_i - t, 0) with t fixed by the unit sum.
inline std::vector<double> project_to_simplex(std::vector<double> lam) {
  std::vector<double> sorted = lam;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) shift = candidate;
  }
  for (double& v : lam) v = std::max(v - shift, 0.0);
  return lam;
}

}  // namespace detail

// Linear-inversion tomography with positivity restoration. Pauli
// expectations come from count ratios inside each 4-setting eigenbasis
// group, (N++ - N+- - N-+ + N--)/sum; the per-group normalization makes the
// estimate insensitive to overall count scale, so `shots` only documents the
// scale. Single-qubit expectations average the marginal estimate over the
// three partner bases. The linear estimate is then projected to the closest
// unit-trace PSD matrix in Frobenius norm.
inline DensityMatrix reconstruct(const Counts& counts, double shots) {
  if (counts.size() != kNumSettings)
    throw DimensionError("reconstruct expects 36 counts");
  if (!(shots >= 1.0)) throw ParameterError("shots must be >= 1");

  // expectation[i][j] of sigma_i (x) sigma_j, index 0 = identity
  double expectation[4][4] = {};
  expectation[0][0] = 1.0;
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = 1; j <= 3; ++j) {
      const double npp =
          counts[detail::setting_index(detail::eigenstate_index(i, true),
                                       detail::eigenstate_index(j, true))];
      const double npm =
          counts[detail::setting_index(detail::eigenstate_index(i, true),
                                       detail::eigenstate_index(j, false))];
      const double nmp =
          counts[detail::setting_index(detail::eigenstate_index(i, false),
                                       detail::eigenstate_index(j, true))];
      const double nmm =
          counts[detail::setting_index(detail::eigenstate_index(i, false),
                                       detail::eigenstate_index(j, false))];
      const double total = npp + npm + nmp + nmm;
      if (total <= 0.0)
        throw DegenerateDataError("all counts zero in a normalization group");
      expectation[i][j] = (npp - npm - nmp + nmm) / total;
      expectation[i][0] += (npp + npm - nmp - nmm) / (3.0 * total);
      expectation[0][j] += (npp - npm + nmp - nmm) / (3.0 * total);
    }

  const std::array<ComplexMatrix, 4> paulis = {ComplexMatrix::identity(2), pauli_x(),
                                               pauli_y(), pauli_z()};
  ComplexMatrix estimate(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      estimate = estimate + (0.25 * expectation[i][j]) * kron(paulis[i], paulis[j]);

  HermitianEigenSystem es = hermitian_eig(estimate);
  const std::vector<double> lam = detail::project_to_simplex(es.eigenvalues);
  return DensityMatrix(assemble_from_eigensystem(es, lam));
}

enum class TomoStatistic { Fidelity, Concurrence, BellGeomLhs, BellGeomRhs };

struct ErrorBar {
  double mean = 0.0;
  double stddev = 0.0;
};

// Monte-Carlo error bar: resample counts `trials` times, reconstruct each
// time, evaluate the statistic, return sample mean and standard deviation.
// Trial t uses derive_seed(seed, t), so the per-trial results form the same
// multiset under any execution order. Fidelity is measured against `rho`.
inline ErrorBar monte_carlo_errorbar(const DensityMatrix& rho, long long shots,
                                     int trials, TomoStatistic statistic,
                                     std::uint64_t seed) {
  if (trials < 2) throw ParameterError("monte_carlo_errorbar requires trials >= 2");
  std::vector<double> values(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    const Counts counts =
        simulate_counts(rho, shots, derive_seed(seed, static_cast<std::uint64_t>(t)));
    const DensityMatrix rec = reconstruct(counts, static_cast<double>(shots));
    double v = 0.0;
    switch (statistic) {
      case TomoStatistic::Fidelity: v = fidelity(rec, rho); break;
      case TomoStatistic::Concurrence: v = concurrence(rec); break;
      case TomoStatistic::BellGeomLhs: v = bell_geom(rec).lhs; break;
      case TomoStatistic::BellGeomRhs: v = bell_geom(rec).rhs; break;
    }
    values[static_cast<std::size_t>(t)] = v;
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(trials);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return ErrorBar{mean, std::sqrt(ss / static_cast<double>(trials - 1))};
}

// One full simulated experiment on a state: trial-0 counts and
// reconstruction, plus fidelity and concurrence statistics across trials.
struct TomographyRun {
  std::array<MeasurementSetting, kNumSettings> settings;
  Counts counts;
  long long shots_per_setting = 0;
  std::uint64_t seed = 0;
  DensityMatrix reconstructed;
  double fid = 0.0;         // fidelity(reconstructed, truth) for trial 0
  double fid_stderr = 0.0;  // spread of that fidelity across trials
  double fid_mean = 0.0;
  double concurrence_mean = 0.0;
  double concurrence_stderr = 0.0;
};

inline TomographyRun run_tomography(const DensityMatrix& rho, long long shots,
                                    int trials, std::uint64_t seed) {
  const Counts counts = simulate_counts(rho, shots, derive_seed(seed, 0));
  DensityMatrix rec = reconstruct(counts, static_cast<double>(shots));
  const double fid_run = fidelity(rec, rho);
  const ErrorBar fid_stats =
      monte_carlo_errorbar(rho, shots, trials, TomoStatistic::Fidelity, seed);
  const ErrorBar conc_stats =
      monte_carlo_errorbar(rho, shots, trials, TomoStatistic::Concurrence, seed);
  return TomographyRun{tomography_settings(),
                       counts,
                       shots,
                       seed,
                       std::move(rec),
                       fid_run,
                       fid_stats.stddev,
                       fid_stats.mean,
                       conc_stats.mean,
                       conc_stats.stddev};
}

}  // namespace qsteer

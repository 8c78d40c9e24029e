#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "qsteer/errors.hpp"
#include "qsteer/linalg.hpp"
#include "qsteer/matrix.hpp"
#include "qsteer/states.hpp"

namespace qsteer {

// 3x3 spin-correlation matrix T_ij = Tr[rho (sigma_i (x) sigma_j)],
// i,j running over x, y, z. Entries lie in [-1, 1] for any valid state.
struct CorrelationMatrix {
  std::array<std::array<double, 3>, 3> t{};

  double operator()(std::size_t i, std::size_t j) const { return t[i][j]; }

  double sum_of_squares() const {
    double s = 0.0;
    for (const auto& row : t)
      for (double v : row) s += v * v;
    return s;
  }

  ComplexMatrix as_matrix() const {
    ComplexMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = t[i][j];
    return m;
  }
};

namespace detail {

// Eigenvalues of the PSD matrices below carry additive round-off of order
// eps * lambda_max, which a square root amplifies to sqrt(eps) scale.
// Values under the floor are therefore exact zeros, not data.
inline void zero_noise_eigenvalues(std::vector<double>& lam) {
  if (lam.empty()) return;
  const double floor = 64.0 * 2.220446049250313e-16 * std::max(lam.front(), 0.0);
  for (double& v : lam) v = v > floor ? v : 0.0;
}

}  // namespace detail

// Spin-flipped partner (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y),
// conjugation taken in the fixed |HH>,|HV>,|VH>,|VV> basis.
inline ComplexMatrix spin_flipped(const ComplexMatrix& rho) {
  const ComplexMatrix yy = kron(pauli_y(), pauli_y());
  return yy * rho.conjugate() * yy;
}

// Wootters concurrence C = max{0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)}
// with l_i the descending eigenvalues of rho * spin_flipped(rho). Computed
// from the Hermitian matrix sqrt(rho) * spin_flipped(rho) * sqrt(rho), which
// has the same spectrum, so only the Hermitian eigensolver is needed.
inline double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw DimensionError("concurrence expects a two-qubit state");
  const ComplexMatrix root = psd_sqrt(rho.matrix());
  const ComplexMatrix herm = root * spin_flipped(rho.matrix()) * root;
  HermitianEigenSystem es = hermitian_eig(herm);
  detail::zero_noise_eigenvalues(es.eigenvalues);
  double c = 0.0;
  for (std::size_t k = 0; k < 4; ++k)
    c += (k == 0 ? 1.0 : -1.0) * std::sqrt(es.eigenvalues[k]);
  return std::max(c, 0.0);
}

// Uhlmann fidelity F(rho, sigma) = Tr sqrt(sqrt(rho) sigma sqrt(rho)).
// Symmetric in its arguments and equal to |<psi|phi>| on pure states.
inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw DimensionError("fidelity requires states of equal dimension");
  const ComplexMatrix root = psd_sqrt(rho.matrix());
  HermitianEigenSystem es = hermitian_eig(root * sigma.matrix() * root);
  detail::zero_noise_eigenvalues(es.eigenvalues);
  double f = 0.0;
  for (double lam : es.eigenvalues) f += std::sqrt(lam);
  return f;
}

inline CorrelationMatrix correlation_matrix(const DensityMatrix& rho) {
  if (rho.dim() != 4)
    throw DimensionError("correlation_matrix expects a two-qubit state");
  const std::array<ComplexMatrix, 3> paulis = {pauli_x(), pauli_y(), pauli_z()};
  CorrelationMatrix out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      out.t[i][j] = (rho.matrix() * kron(paulis[i], paulis[j])).trace().real();
  return out;
}

}  // namespace qsteer

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "qsteer/errors.hpp"
#include "qsteer/matrix.hpp"

namespace qsteer {

// Tolerances of the numerical contracts enforced in this header.
inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kJacobiOffNormTol = 1e-14;
inline constexpr int kJacobiMaxSweeps = 100;

struct HermitianEigenSystem {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // orthonormal columns, same order
};

namespace detail {

// Frobenius norm of the strict off-diagonal part.
inline double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q). Writes a(p,q) = r*e^{i phi}
// and applies the unitary G that is the identity except for
//   G(p,p) = c,  G(p,q) = -s*e^{i phi},  G(q,p) = s*e^{-i phi},  G(q,q) = c,
// updating a <- G^dagger a G and accumulating v <- v G. The angle solves
// r*(c^2 - s^2) + (a_qq - a_pp)*s*c = 0 via the standard small-tangent root.
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p,
                          std::size_t q) {
  const double r = std::abs(a(p, q));
  if (r == 0.0) return;
  const Complex phase = a(p, q) / r;

  const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
  const double t = tau >= 0.0 ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                              : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const std::size_t n = a.rows();
  // a <- a G (columns p and q change)
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * c + akq * s * std::conj(phase);
    a(k, q) = -akp * s * phase + akq * c;
  }
  // a <- G^dagger a (rows p and q change)
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = apk * c + aqk * s * phase;
    a(q, k) = -apk * s * std::conj(phase) + aqk * c;
  }
  // v <- v G
  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * c + vkq * s * std::conj(phase);
    v(k, q) = -vkp * s * phase + vkq * c;
  }
}

}  // namespace detail

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
// Eigenvalues come back in descending order; the eigenvector columns satisfy
// V diag(lambda) V^dagger = m to working precision. Input must be Hermitian
// to within kHermiticityTol in max-abs; the iteration then runs on the
// exactly symmetrized (m + m^dagger)/2.
inline HermitianEigenSystem hermitian_eig(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermitian_eig expects a square matrix");
  if (m.hermiticity_defect() > kHermiticityTol)
    throw ContractError("hermitian_eig: input is not Hermitian");

  const std::size_t n = m.rows();
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (detail::off_diagonal_norm(a) < kJacobiOffNormTol) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&a](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });

  HermitianEigenSystem out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i)
      out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

// Assemble V f(lambda) V^dagger from an eigensystem.
inline ComplexMatrix assemble_from_eigensystem(const HermitianEigenSystem& es,
                                               const std::vector<double>& values) {
  const std::size_t n = es.eigenvalues.size();
  ComplexMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += es.eigenvectors(i, k) * values[k] * std::conj(es.eigenvectors(j, k));
      r(i, j) = s;
    }
  return r;
}

// Hermitian PSD square root. Eigenvalues in [-kPsdTol, 0) are clamped to
// zero; anything below -kPsdTol means the input is genuinely indefinite.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  HermitianEigenSystem es = hermitian_eig(m);
  std::vector<double> roots(es.eigenvalues.size());
  for (std::size_t k = 0; k < es.eigenvalues.size(); ++k) {
    double lam = es.eigenvalues[k];
    if (lam < -kPsdTol)
      throw ContractError("psd_sqrt: matrix has a negative eigenvalue");
    roots[k] = std::sqrt(std::max(lam, 0.0));
  }
  return assemble_from_eigensystem(es, roots);
}

// Largest singular value of a real 3x3 matrix, from the top eigenvalue of
// T^t T. Entries are expected real; imaginary parts are discarded.
inline double max_singular_value_3x3(const ComplexMatrix& t) {
  if (t.rows() != 3 || t.cols() != 3)
    throw DimensionError("max_singular_value_3x3 expects a 3x3 matrix");
  ComplexMatrix tt(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += t(k, i).real() * t(k, j).real();
      tt(i, j) = s;
    }
  HermitianEigenSystem es = hermitian_eig(tt);
  return std::sqrt(std::max(es.eigenvalues.front(), 0.0));
}

}  // namespace qsteer

#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "qsteer/errors.hpp"
#include "qsteer/linalg.hpp"
#include "qsteer/matrix.hpp"

namespace qsteer {

// 1/sqrt(3), bit-identical to 1.0/std::sqrt(3.0). Largest admissible mixing
// weight for the constructed witness states, and the default used throughout.
inline constexpr double kInvSqrt3 = 0.5773502691896258;

inline constexpr double kQuarterPi = 0.7853981633974483;

// Parameters of the two-qubit target family and its witness constructions:
// alpha in [0,1], theta in [0,pi/4], mu1/mu2 in [0,1/sqrt(3)].
struct StateFamilyParams {
  double alpha = 0.0;
  double theta = 0.0;
  double mu1 = kInvSqrt3;
  double mu2 = kInvSqrt3;
};

inline void require_alpha_range(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw ParameterError("alpha must lie in [0, 1], got " + std::to_string(alpha));
}

inline void require_theta_range(double theta) {
  if (!(theta >= 0.0 && theta <= kQuarterPi))
    throw ParameterError("theta must lie in [0, pi/4], got " + std::to_string(theta));
}

inline void require_mu_range(double mu, const char* name) {
  if (!(mu >= 0.0 && mu <= kInvSqrt3))
    throw ParameterError(std::string(name) + " must lie in [0, 1/sqrt(3)], got " +
                         std::to_string(mu));
}

inline void validate_params(const StateFamilyParams& p) {
  require_alpha_range(p.alpha);
  require_theta_range(p.theta);
  require_mu_range(p.mu1, "mu1");
  require_mu_range(p.mu2, "mu2");
}

// Defect report for a would-be density matrix. All three defects are zero
// for a valid state; consumers compare against the tolerances below.
struct ValidityReport {
  double hermiticity_defect = 0.0;
  double trace_defect = 0.0;
  double min_eigenvalue = 0.0;

  bool ok() const {
    return hermiticity_defect <= kHermiticityTol && trace_defect <= kHermiticityTol &&
           min_eigenvalue >= -kPsdTol;
  }
};

// Report-only check; never throws. Non-Hermitian input is scanned via its
// Hermitian part, so min_eigenvalue stays meaningful alongside the defect.
inline ValidityReport validate(const ComplexMatrix& rho) {
  if (!rho.is_square() || (rho.rows() != 2 && rho.rows() != 4))
    throw DimensionError("validate expects a 2x2 or 4x4 matrix");
  ValidityReport rep;
  rep.hermiticity_defect = rho.hermiticity_defect();
  rep.trace_defect = std::abs(rho.trace() - Complex(1.0));
  ComplexMatrix h(rho.rows(), rho.cols());
  for (std::size_t i = 0; i < rho.rows(); ++i)
    for (std::size_t j = 0; j < rho.cols(); ++j)
      h(i, j) = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
  HermitianEigenSystem es = hermitian_eig(h);
  rep.min_eigenvalue = es.eigenvalues.back();
  return rep;
}

// A quantum state: Hermitian, unit-trace, PSD within the standard
// tolerances, 4x4 for two qubits or 2x2 for a marginal. Construction
// enforces the contract, so a DensityMatrix in hand is always valid.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    ValidityReport rep = validate(m_);
    if (!rep.ok())
      throw ContractError(
          "invalid density matrix: hermiticity defect " +
          std::to_string(rep.hermiticity_defect) + ", trace defect " +
          std::to_string(rep.trace_defect) + ", min eigenvalue " +
          std::to_string(rep.min_eigenvalue));
  }

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

// Projector onto cos(theta)|HH> + sin(theta)|VV>.
inline DensityMatrix pure_psi(double theta) {
  require_theta_range(theta);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  ComplexMatrix m(4, 4);
  m(0, 0) = c * c;
  m(0, 3) = c * s;
  m(3, 0) = c * s;
  m(3, 3) = s * s;
  return DensityMatrix(m);
}

// Target family alpha*|psi(theta)><psi(theta)| + (1-alpha)*I/2 (x) rho_B,
// where rho_B is the B marginal of the pure projector (not of the mixture).
// At theta = pi/4 this is the Werner state with visibility alpha.
inline DensityMatrix target_state(const StateFamilyParams& p) {
  validate_params(p);
  const ComplexMatrix pure = pure_psi(p.theta).matrix();
  const ComplexMatrix rho_b = partial_trace(pure, Subsystem::B);
  const ComplexMatrix mixed = kron(0.5 * ComplexMatrix::identity(2), rho_b);
  return DensityMatrix(p.alpha * pure + (1.0 - p.alpha) * mixed);
}

inline DensityMatrix target_state(double alpha, double theta) {
  return target_state(StateFamilyParams{alpha, theta});
}

// tau1 = mu1*rho + (1-mu1)*rho_A (x) I/2. Its entanglement witnesses
// steering from Bob to Alice.
inline DensityMatrix construct_tau1(const DensityMatrix& rho, double mu1 = kInvSqrt3) {
  require_mu_range(mu1, "mu1");
  if (rho.dim() != 4) throw DimensionError("construct_tau1 expects a two-qubit state");
  const ComplexMatrix rho_a = partial_trace(rho.matrix(), Subsystem::A);
  const ComplexMatrix noise = kron(rho_a, 0.5 * ComplexMatrix::identity(2));
  return DensityMatrix(mu1 * rho.matrix() + (1.0 - mu1) * noise);
}

// tau2 = mu2*rho + (1-mu2)*I/2 (x) rho_B. Its entanglement witnesses
// steering from Alice to Bob.
inline DensityMatrix construct_tau2(const DensityMatrix& rho, double mu2 = kInvSqrt3) {
  require_mu_range(mu2, "mu2");
  if (rho.dim() != 4) throw DimensionError("construct_tau2 expects a two-qubit state");
  const ComplexMatrix rho_b = partial_trace(rho.matrix(), Subsystem::B);
  const ComplexMatrix noise = kron(0.5 * ComplexMatrix::identity(2), rho_b);
  return DensityMatrix(mu2 * rho.matrix() + (1.0 - mu2) * noise);
}

}  // namespace qsteer

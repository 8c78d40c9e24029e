#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "qsteer/qsteer.hpp"
#include "support/oracles.hpp"

using namespace qsteer;

namespace {

ComplexMatrix random_real_3x3(Rng& rng) {
  ComplexMatrix t(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = 2.0 * rng.uniform01() - 1.0;
  return t;
}

}  // namespace

TEST_CASE("matrix basics: shapes, trace, adjoint", "[linalg]") {
  const ComplexMatrix a = ComplexMatrix::from_rows(
      {{Complex(1, 2), Complex(3, -1)}, {Complex(0, 1), Complex(4, 0)}});
  CHECK(a.rows() == 2);
  CHECK(a.cols() == 2);
  CHECK(a.trace() == Complex(5, 2));
  CHECK(a.adjoint()(0, 1) == Complex(0, -1));
  CHECK(a.adjoint()(1, 0) == Complex(3, 1));
  CHECK(a.conjugate()(0, 0) == Complex(1, -2));
  CHECK(a.transpose()(0, 1) == Complex(0, 1));

  const ComplexMatrix eye = ComplexMatrix::identity(4);
  CHECK(eye.trace() == Complex(4, 0));
  CHECK(max_abs_diff(eye * eye, eye) == 0.0);

  CHECK_THROWS_AS(ComplexMatrix(2, 3).trace(), DimensionError);
  CHECK_THROWS_AS(ComplexMatrix::from_rows({{1.0, 2.0}, {1.0}}), DimensionError);
  CHECK_THROWS_AS(ComplexMatrix(2, 2) * ComplexMatrix(3, 3), DimensionError);
  CHECK_THROWS_AS(ComplexMatrix(2, 2) + ComplexMatrix(3, 3), DimensionError);
}

TEST_CASE("pauli matrices: algebra and traces", "[linalg]") {
  const ComplexMatrix x = pauli_x();
  const ComplexMatrix y = pauli_y();
  const ComplexMatrix z = pauli_z();
  const ComplexMatrix eye = ComplexMatrix::identity(2);

  CHECK(max_abs_diff(x * x, eye) == 0.0);
  CHECK(max_abs_diff(y * y, eye) == 0.0);
  CHECK(max_abs_diff(z * z, eye) == 0.0);
  // xy = iz and cyclic
  CHECK(max_abs_diff(x * y, Complex(0, 1) * z) == 0.0);
  CHECK(max_abs_diff(y * z, Complex(0, 1) * x) == 0.0);
  CHECK(max_abs_diff(z * x, Complex(0, 1) * y) == 0.0);
  CHECK(x.trace() == Complex(0, 0));
  CHECK(y.trace() == Complex(0, 0));
  CHECK(z.trace() == Complex(0, 0));
  CHECK(y.hermiticity_defect() == 0.0);
}

TEST_CASE("kron: fixed values and mixed-product identity", "[linalg]") {
  const ComplexMatrix zz = kron(pauli_z(), pauli_z());
  for (int i = 0; i < 4; ++i) {
    const double expected = (i == 0 || i == 3) ? 1.0 : -1.0;
    CHECK(zz(i, i) == Complex(expected, 0));
  }
  // sigma_y (x) sigma_y is the real antidiagonal (-1, 1, 1, -1)
  const ComplexMatrix yy = kron(pauli_y(), pauli_y());
  CHECK(yy(0, 3) == Complex(-1, 0));
  CHECK(yy(1, 2) == Complex(1, 0));
  CHECK(yy(2, 1) == Complex(1, 0));
  CHECK(yy(3, 0) == Complex(-1, 0));

  Rng rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const ComplexMatrix a = oracle::random_ginibre(rng, 2, 2);
    const ComplexMatrix b = oracle::random_ginibre(rng, 2, 2);
    const ComplexMatrix c = oracle::random_ginibre(rng, 2, 2);
    const ComplexMatrix d = oracle::random_ginibre(rng, 2, 2);
    // bilinearity
    CHECK(max_abs_diff(kron(a + b, c), kron(a, c) + kron(b, c)) < 1e-12);
    CHECK(max_abs_diff(kron(a, c + d), kron(a, c) + kron(a, d)) < 1e-12);
    // associativity
    CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-12);
    // mixed product (A (x) B)(C (x) D) = AC (x) BD
    CHECK(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-12);
    // scalar pull-through
    CHECK(max_abs_diff(kron(Complex(0, 2) * a, b), Complex(0, 2) * kron(a, b)) <
          1e-12);
  }
}

TEST_CASE("partial trace: fixed values, linearity, oracle agreement", "[linalg]") {
  // tr_B(A (x) B) = tr(B) A and tr_A(A (x) B) = tr(A) B
  Rng rng(12);
  for (int rep = 0; rep < 50; ++rep) {
    const ComplexMatrix a = oracle::random_ginibre(rng, 2, 2);
    const ComplexMatrix b = oracle::random_ginibre(rng, 2, 2);
    const ComplexMatrix ab = kron(a, b);
    CHECK(max_abs_diff(partial_trace(ab, Subsystem::A), b.trace() * a) < 1e-12);
    CHECK(max_abs_diff(partial_trace(ab, Subsystem::B), a.trace() * b) < 1e-12);
  }

  // trace preservation and expectation-value oracle on random states
  for (int rep = 0; rep < 1000; ++rep) {
    const DensityMatrix rho = oracle::random_density(rng);
    const ComplexMatrix ra = partial_trace(rho.matrix(), Subsystem::A);
    const ComplexMatrix rb = partial_trace(rho.matrix(), Subsystem::B);
    CHECK(std::abs(ra.trace() - Complex(1.0)) < 1e-12);
    CHECK(std::abs(rb.trace() - Complex(1.0)) < 1e-12);
    CHECK(ra.hermiticity_defect() < 1e-14);
    CHECK(rb.hermiticity_defect() < 1e-14);
    CHECK(max_abs_diff(
              ra, oracle::partial_trace_via_expectations(rho.matrix(), Subsystem::A)) <
          1e-12);
    CHECK(max_abs_diff(
              rb, oracle::partial_trace_via_expectations(rho.matrix(), Subsystem::B)) <
          1e-12);
  }

  CHECK_THROWS_AS(partial_trace(ComplexMatrix(2, 2), Subsystem::A), DimensionError);
}

TEST_CASE("hermitian_eig: fixed spectra", "[linalg]") {
  ComplexMatrix d(4, 4);
  d(0, 0) = 0.0;
  d(1, 1) = 3.0;
  d(2, 2) = 1.0;
  d(3, 3) = 2.0;
  const HermitianEigenSystem es = hermitian_eig(d);
  CHECK(es.eigenvalues == std::vector<double>{3.0, 2.0, 1.0, 0.0});

  // [[2, i], [-i, 2]] has eigenvalues 3 and 1
  const ComplexMatrix m =
      ComplexMatrix::from_rows({{2.0, Complex(0, 1)}, {Complex(0, -1), 2.0}});
  const HermitianEigenSystem es2 = hermitian_eig(m);
  CHECK(es2.eigenvalues[0] == Catch::Approx(3.0).margin(1e-13));
  CHECK(es2.eigenvalues[1] == Catch::Approx(1.0).margin(1e-13));

  CHECK_THROWS_AS(hermitian_eig(ComplexMatrix(2, 3)), DimensionError);
  CHECK_THROWS_AS(
      hermitian_eig(ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})),
      ContractError);
}

TEST_CASE("hermitian_eig: invariants on random matrices", "[linalg]") {
  Rng rng(13);
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = 2 + static_cast<int>(rng.uniform01() * 3.0);  // 2, 3 or 4
    const ComplexMatrix h = oracle::random_hermitian(rng, n);
    const HermitianEigenSystem es = hermitian_eig(h);

    // descending order
    for (int k = 0; k + 1 < n; ++k)
      CHECK(es.eigenvalues[k] >= es.eigenvalues[k + 1]);
    // eigenvalue sum reproduces the trace
    double sum = 0.0;
    for (double v : es.eigenvalues) sum += v;
    CHECK(sum == Catch::Approx(h.trace().real()).margin(1e-11));
    // orthonormal eigenvector columns
    CHECK(max_abs_diff(es.eigenvectors.adjoint() * es.eigenvectors,
                       ComplexMatrix::identity(n)) < 1e-11);
    // reconstruction V diag V^dagger = H
    CHECK(max_abs_diff(assemble_from_eigensystem(es, es.eigenvalues), h) < 1e-11);
  }
}

TEST_CASE("hermitian_eig: degenerate spectra stay exact", "[linalg]") {
  // maximally mixed and a doubly-degenerate Werner-like spectrum
  const ComplexMatrix mixed = 0.25 * ComplexMatrix::identity(4);
  const HermitianEigenSystem es = hermitian_eig(mixed);
  for (double v : es.eigenvalues) CHECK(v == Catch::Approx(0.25).margin(1e-14));

  const DensityMatrix werner = target_state(0.5, kQuarterPi);
  const HermitianEigenSystem es2 = hermitian_eig(werner.matrix());
  CHECK(max_abs_diff(assemble_from_eigensystem(es2, es2.eigenvalues),
                     werner.matrix()) < 1e-13);
  CHECK(es2.eigenvalues[0] == Catch::Approx(0.625).margin(1e-13));
  for (int k = 1; k < 4; ++k)
    CHECK(es2.eigenvalues[k] == Catch::Approx(0.125).margin(1e-13));
}

TEST_CASE("psd_sqrt: fixed values and roundtrip", "[linalg]") {
  ComplexMatrix d(3, 3);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  d(2, 2) = 0.0;
  const ComplexMatrix root = psd_sqrt(d);
  CHECK(root(0, 0).real() == Catch::Approx(2.0).margin(1e-13));
  CHECK(root(1, 1).real() == Catch::Approx(3.0).margin(1e-13));
  CHECK(root(2, 2).real() == Catch::Approx(0.0).margin(1e-13));

  Rng rng(14);
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = (rep % 2 == 0) ? 4 : 2;
    const ComplexMatrix g = oracle::random_ginibre(rng, n, n);
    const ComplexMatrix psd = g * g.adjoint();
    const ComplexMatrix r = psd_sqrt(psd);
    CHECK(max_abs_diff(r * r, psd) < 1e-10);
    CHECK(r.hermiticity_defect() < 1e-11);
    const HermitianEigenSystem es = hermitian_eig(r);
    CHECK(es.eigenvalues.back() > -1e-11);
  }

  // genuinely indefinite input is rejected
  ComplexMatrix indef(2, 2);
  indef(0, 0) = 1.0;
  indef(1, 1) = -0.5;
  CHECK_THROWS_AS(psd_sqrt(indef), ContractError);
}

TEST_CASE("max_singular_value_3x3: fixed values", "[linalg]") {
  CHECK(max_singular_value_3x3(ComplexMatrix::identity(3)) ==
        Catch::Approx(1.0).margin(1e-13));

  ComplexMatrix d(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = -2.0;
  d(2, 2) = 1.0;
  CHECK(max_singular_value_3x3(d) == Catch::Approx(3.0).margin(1e-13));

  // column scaling: sigma_max of diag(a) R for a rotation R is max |a_i|
  ComplexMatrix r(3, 3);
  const double ang = 0.3;
  r(0, 0) = std::cos(ang);
  r(0, 1) = -std::sin(ang);
  r(1, 0) = std::sin(ang);
  r(1, 1) = std::cos(ang);
  r(2, 2) = 1.0;
  CHECK(max_singular_value_3x3(d * r) == Catch::Approx(3.0).margin(1e-12));

  CHECK_THROWS_AS(max_singular_value_3x3(ComplexMatrix(2, 2)), DimensionError);
}

TEST_CASE("max_singular_value_3x3: closed-form cubic oracle", "[linalg]") {
  Rng rng(15);
  for (int rep = 0; rep < 500; ++rep) {
    const ComplexMatrix t = random_real_3x3(rng);
    CorrelationMatrix corr;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) corr.t[i][j] = t(i, j).real();
    const double lib = max_singular_value_3x3(t);
    const double ref = oracle::sigma_max_cubic(corr);
    CHECK(lib == Catch::Approx(ref).margin(1e-10));

    // Frobenius sandwich ||T||_F / sqrt(3) <= sigma_max <= ||T||_F
    const double fro = t.frobenius_norm();
    CHECK(lib >= fro / std::sqrt(3.0) - 1e-12);
    CHECK(lib <= fro + 1e-12);

    // any unit direction gives a lower bound on sigma_max
    for (int probe = 0; probe < 4; ++probe) {
      double u[3] = {rng.normal(), rng.normal(), rng.normal()};
      const double norm = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
      double image = 0.0;
      for (int i = 0; i < 3; ++i) {
        double row = 0.0;
        for (int j = 0; j < 3; ++j) row += t(i, j).real() * u[j] / norm;
        image += row * row;
      }
      CHECK(std::sqrt(image) <= lib + 1e-10);
    }
  }
}

TEST_CASE("spot identities on fixed inputs", "[linalg]") {
  // kron of identities
  CHECK(max_abs_diff(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
                     ComplexMatrix::identity(4)) == 0.0);

  // tracing either side of the maximally mixed state
  const ComplexMatrix mixed = 0.25 * ComplexMatrix::identity(4);
  CHECK(max_abs_diff(partial_trace(mixed, Subsystem::A),
                     0.5 * ComplexMatrix::identity(2)) < 1e-15);
  CHECK(max_abs_diff(partial_trace(mixed, Subsystem::B),
                     0.5 * ComplexMatrix::identity(2)) < 1e-15);

  // sigma_x spectrum is {1, -1}
  const HermitianEigenSystem ex = hermitian_eig(pauli_x());
  CHECK(ex.eigenvalues[0] == Catch::Approx(1.0).margin(1e-14));
  CHECK(ex.eigenvalues[1] == Catch::Approx(-1.0).margin(1e-14));

  // a rank-1 projector has spectrum {1, 0, 0, 0}
  const ComplexMatrix bell = pure_psi(kQuarterPi).matrix();
  const HermitianEigenSystem eb = hermitian_eig(bell);
  CHECK(eb.eigenvalues[0] == Catch::Approx(1.0).margin(1e-12));
  for (int i = 1; i < 4; ++i) CHECK(eb.eigenvalues[i] == Catch::Approx(0.0).margin(1e-12));

  // square roots of easy PSD matrices
  CHECK(max_abs_diff(psd_sqrt(ComplexMatrix::identity(4)),
                     ComplexMatrix::identity(4)) < 1e-14);
  ComplexMatrix diag(4, 4);
  diag(0, 0) = 4.0; diag(1, 1) = 1.0; diag(2, 2) = 0.0; diag(3, 3) = 9.0;
  ComplexMatrix root(4, 4);
  root(0, 0) = 2.0; root(1, 1) = 1.0; root(2, 2) = 0.0; root(3, 3) = 3.0;
  CHECK(max_abs_diff(psd_sqrt(diag), root) < 1e-12);
  // projectors are their own square root; the triple zero eigenvalue turns
  // eps-scale round-off into sqrt(eps)-scale output noise, hence the bound
  Rng rng(77);
  const ComplexMatrix proj =
      oracle::pure_projector(oracle::random_pure_vec(rng)).matrix();
  CHECK(max_abs_diff(psd_sqrt(proj), proj) < 1e-7);

  // singular values of diagonal matrices are the |entries|
  ComplexMatrix desc(3, 3);
  desc(0, 0) = 0.9; desc(1, 1) = 0.5; desc(2, 2) = 0.1;
  CHECK(max_singular_value_3x3(desc) == Catch::Approx(0.9).margin(1e-12));
  ComplexMatrix signs(3, 3);
  signs(0, 0) = 0.37; signs(1, 1) = -0.37; signs(2, 2) = 0.37;
  CHECK(max_singular_value_3x3(signs) == Catch::Approx(0.37).margin(1e-12));
  CHECK(max_singular_value_3x3(ComplexMatrix(3, 3)) == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("max_singular_value_3x3: sampled directions lower-bound the max", "[linalg]") {
  // For each T, draw 1e4 unit pairs (m, n); picking n along T^T m makes the
  // sample sharp enough that the best pair reaches sigma_max within 1e-3,
  // while every sampled m.T n must stay at or below it.
  Rng rng(314);
  std::vector<CorrelationMatrix> pool;
  for (double alpha : {0.0, 0.6, 1.0})
    pool.push_back(correlation_matrix(target_state(alpha, kQuarterPi)));
  pool.push_back(correlation_matrix(target_state(0.8, 0.3)));
  for (int rep = 0; rep < 10; ++rep)
    pool.push_back(correlation_matrix(oracle::random_density(rng, 4)));

  for (const CorrelationMatrix& corr : pool) {
    ComplexMatrix t(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t(i, j) = corr.t[i][j];
    const double sigma = max_singular_value_3x3(t);

    double best = 0.0;
    int above = 0;
    for (int draw = 0; draw < 10000; ++draw) {
      double m[3] = {rng.normal(), rng.normal(), rng.normal()};
      const double mn = std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]);
      for (double& v : m) v /= mn;
      double n[3] = {0.0, 0.0, 0.0};
      for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) n[j] += corr.t[i][j] * m[i];
      double nn = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
      if (nn < 1e-14) { n[0] = 1.0; nn = 1.0; }
      double val = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) val += m[i] * corr.t[i][j] * n[j] / nn;
      if (val > sigma + 1e-12) ++above;
      best = std::max(best, val);
    }
    CHECK(above == 0);
    CHECK(sigma - best <= 1e-3);
  }
}

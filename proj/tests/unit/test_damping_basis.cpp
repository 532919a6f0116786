#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "optomech/damping_basis.hpp"
#include "optomech/error.hpp"

using namespace optomech;

namespace {

constexpr double kOmega = 0.9;
constexpr double kKappa = 0.3;

double residual(const DampingEigenstate& s, double n_p) {
  const Matrix L = cavity_generator_apply(s.right, kOmega, kKappa, n_p).matrix();
  return (L - s.eigenvalue * s.right.matrix()).cwiseAbs().maxCoeff();
}

// Tr[left L(X)] = lambda Tr[left X] for every X, i.e. a row eigenvector of the superoperator
double left_residual(const DampingEigenstate& s, const Matrix& S) {
  const int dim = s.left.size();
  const Matrix lt = s.left.matrix().transpose();
  const Eigen::VectorXcd row = Eigen::Map<const Eigen::VectorXcd>(lt.data(), dim * dim);
  return (row.transpose() * S - s.eigenvalue * row.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("eigenvalues") {
  CHECK(eigenvalue(0, 0, 1.0, 0.1) == cdouble(0.0));
  const cdouble e = eigenvalue(1, 2, 1.0, 0.1);
  CHECK(e.real() == doctest::Approx(-0.2));
  CHECK(e.imag() == doctest::Approx(2.0));
  const cdouble f = eigenvalue(0, -1, 1.3, 0.4);
  CHECK(f.real() == doctest::Approx(-0.2));
  CHECK(f.imag() == doctest::Approx(-1.3));
}

TEST_CASE("Laguerre coefficients from the recurrence") {
  const auto l2 = laguerre_coefficients(2, 1);
  REQUIRE(l2.size() == 3);
  CHECK(l2[0] == doctest::Approx(3.0));
  CHECK(l2[1] == doctest::Approx(-3.0));
  CHECK(l2[2] == doctest::Approx(0.5));
  // L_n^a(0) = C(n+a, n)
  CHECK(laguerre_coefficients(5, 2)[0] == doctest::Approx(21.0));
  CHECK(laguerre_coefficients(6, 0)[6] == doctest::Approx(1.0 / 720));
}

TEST_CASE("stationary states") {
  const Matrix th = right_state(0, 0, 0.5, 12).matrix();
  for (int k = 0; k < 12; ++k) CHECK(th(k, k).real() == doctest::Approx(std::pow(0.5 / 1.5, k) / 1.5));
  const Matrix vac = right_state(0, 0, 0.0, 8).matrix();
  CHECK(vac(0, 0).real() == doctest::Approx(1.0));
  CHECK(vac.cwiseAbs().sum() == doctest::Approx(1.0));
  for (double np : {0.0, 0.5, 2.0})
    CHECK((left_state(0, 0, np, 9).matrix() - Matrix::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("zero-temperature eigenstates are exact") {
  const int dim = 16;
  for (int n = 0; n <= 6; ++n)
    for (int j = -(6 - n); j <= 6 - n; ++j) CHECK(residual(damping_eigenstate(n, j, kOmega, kKappa, 0.0, dim), 0.0) <= 1e-8);
}

TEST_CASE("finite-temperature eigenstates converge with the cutoff") {
  const int dim = 60;
  for (int n = 0; n <= 4; ++n)
    for (int j = -(4 - n); j <= 4 - n; ++j) CHECK(residual(damping_eigenstate(n, j, kOmega, kKappa, 0.5, dim), 0.5) <= 1e-8);
}

TEST_CASE("left eigenstates") {
  const int dim = 10;
  for (double np : {0.0, 0.5}) {
    const Matrix S = cavity_superoperator(kOmega, kKappa, np, dim);
    for (int n = 0; n <= 3; ++n)
      for (int j = -2; j <= 2; ++j) {
        // row eigenvectors only feel the truncation through their high-index entries
        const DampingEigenstate s = damping_eigenstate(n, j, kOmega, kKappa, np, dim);
        if (np == 0.0) CHECK(left_residual(s, S) <= 1e-8);
      }
  }
}

TEST_CASE("biorthonormality at zero temperature") {
  const int dim = 16;
  for (int n = 0; n <= 3; ++n)
    for (int j = -3; j <= 3; ++j)
      for (int n2 = 0; n2 <= 3; ++n2)
        for (int j2 = -3; j2 <= 3; ++j2) {
          const cdouble pair = (right_state(n, j, 0.0, dim).matrix() * left_state(n2, j2, 0.0, dim).matrix()).trace();
          const double expect = (n == n2 && j == j2) ? 1.0 : 0.0;
          CHECK(std::abs(pair - expect) <= 1e-8);
        }
}

TEST_CASE("biorthonormality at finite temperature with a generous cutoff") {
  const int dim = 60;
  for (int n = 0; n <= 3; ++n)
    for (int j = -2; j <= 2; ++j)
      for (int n2 = 0; n2 <= 3; ++n2) {
        const cdouble pair = (right_state(n, j, 0.5, dim).matrix() * left_state(n2, j, 0.5, dim).matrix()).trace();
        CHECK(std::abs(pair - (n == n2 ? 1.0 : 0.0)) <= 1e-8);
      }
}

TEST_CASE("completeness on the low-lying block") {
  const int dim = 16;
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  Matrix X = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim / 2; ++i)
    for (int k = 0; k < dim / 2; ++k) X(i, k) = cdouble(g(rng), g(rng));
  Matrix rebuilt = Matrix::Zero(dim, dim);
  for (int j = -(dim - 1); j <= dim - 1; ++j)
    for (int n = 0; n + std::abs(j) < dim; ++n) {
      const Matrix r = right_state(n, j, 0.0, dim).matrix();
      const Matrix l = left_state(n, j, 0.0, dim).matrix();
      rebuilt += r * (l * X).trace();
    }
  CHECK((rebuilt - X).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("spectrum is contained in the brute-force spectrum") {
  const int dim = 12;
  const Matrix S = cavity_superoperator(kOmega, kKappa, 0.0, dim);
  const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Matrix>(S, false).eigenvalues();
  for (int n = 0; n <= 4; ++n)
    for (int j = -(4 - n); j <= 4 - n; ++j) {
      const cdouble lam = eigenvalue(n, j, kOmega, kKappa);
      double best = 1e300;
      for (Eigen::Index i = 0; i < ev.size(); ++i) best = std::min(best, std::abs(ev(i) - lam));
      CHECK(best <= 1e-6);
    }
}

TEST_CASE("indices outside the truncation are rejected") {
  CHECK_THROWS_AS(right_state(3, 5, 0.0, 8), Error);
  CHECK_THROWS_AS(left_state(-1, 0, 0.0, 8), Error);
  CHECK_THROWS_AS(mechanical_eigenstates(2, 6, 8), Error);
  try {
    right_state(8, 0, 0.5, 8);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IndexOutOfTruncation);
  }
}

TEST_CASE("undamped mechanical eigenstates") {
  const int dim = 8;
  const double nu0 = 1.3;
  const DampingEigenstate s = mechanical_eigenstates(0, 1, dim, nu0);
  CHECK(s.right.matrix()(1, 0) == cdouble(1.0));
  CHECK(s.eigenvalue == cdouble(0.0, nu0));
  CHECK((s.left.matrix() - s.right.matrix().adjoint()).cwiseAbs().maxCoeff() == 0.0);
  const DampingEigenstate d = mechanical_eigenstates(2, 0, dim, nu0);
  CHECK(d.right.matrix()(2, 2) == cdouble(1.0));
  CHECK(d.eigenvalue == cdouble(0.0));
  for (int n = 0; n < 4; ++n)
    for (int l = -n; l + n < dim; ++l) {
      const DampingEigenstate m = mechanical_eigenstates(n, l, dim, nu0);
      const Matrix rot = cavity_generator_apply(m.right, nu0, 0.0, 0.0).matrix();
      CHECK((rot - m.eigenvalue * m.right.matrix()).cwiseAbs().maxCoeff() < 1e-14);
    }
}

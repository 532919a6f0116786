#include <cmath>
#include <random>

#include "doctest.h"
#include "optomech/error.hpp"
#include "optomech/operator_algebra.hpp"

using namespace optomech;

namespace {

DenseOperator random_density(int dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n;
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = cdouble(n(rng), n(rng));
  Matrix r = m * m.adjoint();
  r /= r.trace();
  return DenseOperator(r);
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("ladder operator") {
  const Matrix a2 = annihilation(2).matrix();
  CHECK(a2(0, 1) == cdouble(1.0));
  CHECK(a2(0, 0) == cdouble(0.0));
  CHECK(a2(1, 0) == cdouble(0.0));

  const int dim = 7;
  const DenseOperator a = annihilation(dim);
  const Matrix c = commutator(a, a.adjoint()).matrix();
  CHECK(max_abs(c.topLeftCorner(dim - 1, dim - 1) - Matrix::Identity(dim - 1, dim - 1)) < 1e-14);
  CHECK(c(dim - 1, dim - 1).real() == doctest::Approx(1.0 - dim));

  const Matrix vac = fock_projector(dim, 0).matrix();
  CHECK(max_abs(a.matrix() * vac) == 0.0);
}

TEST_CASE("quadratures") {
  const int dim = 10;
  const double nu = 1.7;
  const Quadratures q = quadratures(dim, nu);
  const Matrix c = commutator(q.x, q.p).matrix();
  CHECK(max_abs(c.topLeftCorner(dim - 1, dim - 1) - cdouble(0, 1) * Matrix::Identity(dim - 1, dim - 1)) < 1e-14);

  const Matrix energy = 0.5 * q.p.matrix() * q.p.matrix() + 0.5 * nu * nu * q.x.matrix() * q.x.matrix();
  CHECK(energy(0, 0).real() == doctest::Approx(nu / 2));

  const Matrix x2 = quadratures(2, 1.0).x.matrix();
  CHECK(x2(0, 1).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(x2(1, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(x2(0, 0)) == 0.0);
}

TEST_CASE("dissipator") {
  const int dim = 5;
  const DenseOperator a = annihilation(dim);
  CHECK(max_abs(dissipator(a, fock_projector(dim, 0)).matrix()) == 0.0);

  const Matrix d1 = dissipator(a, fock_projector(dim, 1)).matrix();
  Matrix expect = Matrix::Zero(dim, dim);
  expect(0, 0) = 2.0;
  expect(1, 1) = -2.0;
  CHECK(max_abs(d1 - expect) < 1e-15);

  for (unsigned seed = 1; seed <= 5; ++seed) {
    const DenseOperator rho = random_density(dim, seed);
    CHECK(std::abs(dissipator(a, rho).matrix().trace()) < 1e-12);
    CHECK(std::abs(dissipator(a.adjoint() * a + a, rho).matrix().trace()) < 1e-12);
  }

  CHECK_THROWS_AS(dissipator(a, fock_projector(dim + 1, 0)), Error);
}

TEST_CASE("tensor, commutator, expectation") {
  CHECK(max_abs(tensor(identity({2}), identity({3})).matrix() - Matrix::Identity(6, 6)) == 0.0);
  CHECK(tensor(identity({2}), identity({3})).dims() == std::vector<int>{2, 3});

  const DenseOperator A = random_density(2, 11), B = random_density(3, 12), C = random_density(2, 13);
  CHECK((tensor(tensor(A, B), C).matrix() - tensor(A, tensor(B, C)).matrix()).cwiseAbs().maxCoeff() < 1e-15);

  CHECK(max_abs(commutator(A, A).matrix()) == 0.0);
  CHECK(expectation(number(4), fock_projector(4, 2)).real() == doctest::Approx(2.0));
  CHECK_THROWS_AS(expectation(number(4), fock_projector(5, 2)), Error);
  CHECK_THROWS_AS(DenseOperator(Matrix::Identity(4, 4), {2, 3}), Error);
}

TEST_CASE("density validity checks") {
  for (int dim : {10, 20, 30}) {
    for (double nbar : {0.0, 0.3, dim / 10.0}) {
      const DensityReport r = inspect_density(thermal_state(dim, nbar));
      CHECK(r.valid());
    }
  }
  const DenseOperator th = thermal_state(6, 0.5);
  CHECK(th.matrix()(1, 1).real() == doctest::Approx(th.matrix()(0, 0).real() * 0.5 / 1.5));

  Matrix bad = Matrix::Identity(4, 4) * 0.25;
  bad(0, 0) += 0.001;
  bad(3, 3) = -0.001;
  bad /= bad.trace();
  const DensityReport r = inspect_density(DenseOperator(bad));
  CHECK(r.hermitian);
  CHECK(r.unit_trace);
  CHECK_FALSE(r.positive);
  CHECK_FALSE(r.valid());

  Matrix skew = thermal_state(4, 0.2).matrix();
  skew(0, 1) = 1e-6;
  CHECK_FALSE(inspect_density(DenseOperator(skew)).hermitian);
}

#include "optomech/operator_algebra.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include "optomech/error.hpp"

namespace optomech {

namespace {

int dims_product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

std::string dims_string(const std::vector<int>& dims) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  os << ']';
  return os.str();
}

}  // namespace

DenseOperator::DenseOperator(Matrix data, std::vector<int> dims)
    : data_(std::move(data)), dims_(std::move(dims)) {
  if (data_.rows() != data_.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "operator matrix must be square");
  }
  if (dims_.empty() || dims_product(dims_) != data_.rows()) {
    throw Error(ErrorKind::DimensionMismatch,
                "dims " + dims_string(dims_) + " do not match size " + std::to_string(data_.rows()));
  }
}

DenseOperator::DenseOperator(Matrix data) : DenseOperator(data, {static_cast<int>(data.rows())}) {}

DenseOperator DenseOperator::adjoint() const { return {data_.adjoint(), dims_}; }

DenseOperator& DenseOperator::operator+=(const DenseOperator& rhs) {
  require_same_dims(*this, rhs, "operator+");
  data_ += rhs.data_;
  return *this;
}

DenseOperator& DenseOperator::operator-=(const DenseOperator& rhs) {
  require_same_dims(*this, rhs, "operator-");
  data_ -= rhs.data_;
  return *this;
}

DenseOperator& DenseOperator::operator*=(cdouble s) {
  data_ *= s;
  return *this;
}

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
  require_same_dims(a, b, "operator*");
  return {a.matrix() * b.matrix(), a.dims()};
}

void require_same_dims(const DenseOperator& a, const DenseOperator& b, const char* where) {
  if (a.dims() != b.dims()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(where) + ": " + dims_string(a.dims()) +
                                                  " vs " + dims_string(b.dims()));
  }
}

DenseOperator identity(std::vector<int> dims) {
  const int n = dims_product(dims);
  return {Matrix::Identity(n, n), std::move(dims)};
}

DenseOperator annihilation(int dim) {
  if (dim < 2) throw Error(ErrorKind::DimensionMismatch, "annihilation needs dim >= 2");
  Matrix a = Matrix::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return DenseOperator(std::move(a));
}

DenseOperator creation(int dim) { return annihilation(dim).adjoint(); }

DenseOperator number(int dim) {
  Matrix n = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return DenseOperator(std::move(n));
}

DenseOperator fock_projector(int dim, int k) {
  if (k < 0 || k >= dim) throw Error(ErrorKind::IndexOutOfTruncation, "Fock index outside truncation");
  Matrix p = Matrix::Zero(dim, dim);
  p(k, k) = 1.0;
  return DenseOperator(std::move(p));
}

DenseOperator thermal_state(int dim, double nbar) {
  Matrix rho = Matrix::Zero(dim, dim);
  if (nbar <= 0.0) {
    rho(0, 0) = 1.0;
    return DenseOperator(std::move(rho));
  }
  const double q = nbar / (nbar + 1.0);
  double w = 1.0 / (nbar + 1.0);
  double total = 0.0;
  for (int k = 0; k < dim; ++k, w *= q) {
    rho(k, k) = w;
    total += w;
  }
  rho /= total;
  return DenseOperator(std::move(rho));
}

Quadratures quadratures(int dim, double nu) {
  const DenseOperator b = annihilation(dim);
  const DenseOperator bd = b.adjoint();
  return {(b + bd) * cdouble(1.0 / std::sqrt(2.0 * nu)),
          (bd - b) * cdouble(0.0, std::sqrt(nu / 2.0))};
}

DenseOperator tensor(const DenseOperator& a, const DenseOperator& b) {
  const Matrix& A = a.matrix();
  const Matrix& B = b.matrix();
  const Eigen::Index nb = B.rows();
  Matrix out(A.rows() * nb, A.cols() * nb);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) out.block(i * nb, j * nb, nb, nb) = A(i, j) * B;
  }
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return {std::move(out), std::move(dims)};
}

DenseOperator commutator(const DenseOperator& a, const DenseOperator& b) {
  require_same_dims(a, b, "commutator");
  return {a.matrix() * b.matrix() - b.matrix() * a.matrix(), a.dims()};
}

DenseOperator dissipator(const DenseOperator& jump, const DenseOperator& rho) {
  require_same_dims(jump, rho, "dissipator");
  const Matrix& L = jump.matrix();
  const Matrix& r = rho.matrix();
  const Matrix LdL = L.adjoint() * L;
  return {2.0 * L * r * L.adjoint() - LdL * r - r * LdL, rho.dims()};
}

cdouble expectation(const DenseOperator& a, const DenseOperator& rho) {
  require_same_dims(a, rho, "expectation");
  // Tr[A rho] without forming the product
  return (a.matrix().transpose().cwiseProduct(rho.matrix())).sum();
}

DensityReport inspect_density(const DenseOperator& rho, const DensityTolerances& tol) {
  const Matrix& r = rho.matrix();
  DensityReport rep;
  rep.hermiticity_error = (r - r.adjoint()).cwiseAbs().maxCoeff();
  rep.trace_error = std::abs(r.trace() - 1.0);
  const Matrix herm = 0.5 * (r + r.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  rep.min_eigenvalue = es.eigenvalues().minCoeff();
  rep.hermitian = rep.hermiticity_error <= tol.hermiticity;
  rep.unit_trace = rep.trace_error <= tol.trace;
  rep.positive = rep.min_eigenvalue >= tol.min_eigenvalue;
  return rep;
}

}  // namespace optomech

#include "optomech/damping_basis.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "optomech/error.hpp"

namespace optomech {

namespace {

void check_indices(int n, int j, int dim) {
  if (n < 0 || n + std::abs(j) >= dim) {
    throw Error(ErrorKind::IndexOutOfTruncation, "indices (n=" + std::to_string(n) + ", j=" +
                                                     std::to_string(j) + ") do not fit in dim " +
                                                     std::to_string(dim));
  }
}

// m! / (m - k)!, zero for k > m
double falling(int m, int k) {
  if (k > m) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= m - i;
  return r;
}

// (a^dag)^p as a truncated matrix
Matrix raise_power(int dim, int p) {
  const Matrix ad = creation(dim).matrix();
  Matrix out = Matrix::Identity(dim, dim);
  for (int i = 0; i < p; ++i) out = ad * out;
  return out;
}

}  // namespace

cdouble eigenvalue(int n, int j, double omega_c, double kappa) {
  return {-kappa * (n + 0.5 * std::abs(j)), j * omega_c};
}

std::vector<double> laguerre_coefficients(int n, int alpha) {
  std::vector<double> prev(n + 1, 0.0), cur(n + 1, 0.0);
  prev[0] = 1.0;  // L_0
  if (n == 0) return prev;
  cur[0] = 1.0 + alpha;  // L_1 = 1 + alpha - x
  cur[1] = -1.0;
  for (int k = 1; k < n; ++k) {
    // (k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}
    std::vector<double> next(n + 1, 0.0);
    for (int i = 0; i <= k; ++i) {
      next[i] += (2.0 * k + 1.0 + alpha) * cur[i] - (k + alpha) * prev[i];
      next[i + 1] -= cur[i];
    }
    for (double& c : next) c /= (k + 1.0);
    prev.swap(cur);
    cur.swap(next);
  }
  return cur;
}

DenseOperator right_state(int n, int j, double n_p, int dim) {
  check_indices(n, j, dim);
  const int aj = std::abs(j);
  const double c = n_p + 1.0;
  const double q = n_p / c;
  const std::vector<double> lag = laguerre_coefficients(n, aj);

  // Fock diagonal of :L_n^|j|(N/c) e^{-N/c}:, using <m|:N^k e^{-N/c}:|m> = m!/(m-k)! q^(m-k)
  Matrix diag = Matrix::Zero(dim, dim);
  const double pre = (n % 2 ? -1.0 : 1.0) / std::pow(c, aj + 1);
  for (int m = 0; m < dim; ++m) {
    double s = 0.0;
    for (int k = 0; k <= std::min(m, n); ++k) s += lag[k] / std::pow(c, k) * falling(m, k) * std::pow(q, m - k);
    diag(m, m) = pre * s;
  }
  const Matrix shift = raise_power(dim, aj);
  return DenseOperator(j >= 0 ? Matrix(shift * diag) : Matrix(diag * shift.adjoint()));
}

DenseOperator left_state(int n, int j, double n_p, int dim) {
  check_indices(n, j, dim);
  const int aj = std::abs(j);
  const std::vector<double> lag = laguerre_coefficients(n, aj);

  // (-n_p/(n_p+1))^n n!/(n+|j|)! :L_n^|j|(N/n_p):, expanded so n_p = 0 is regular
  double norm = 1.0;
  for (int i = n + 1; i <= n + aj; ++i) norm /= i;
  norm *= (n % 2 ? -1.0 : 1.0) / std::pow(n_p + 1.0, n);
  Matrix diag = Matrix::Zero(dim, dim);
  for (int m = 0; m < dim; ++m) {
    double s = 0.0;
    for (int k = 0; k <= std::min(m, n); ++k) s += lag[k] * std::pow(n_p, n - k) * falling(m, k);
    diag(m, m) = norm * s;
  }
  const Matrix shift = raise_power(dim, aj);
  return DenseOperator(j >= 0 ? Matrix(diag * shift.adjoint()) : Matrix(shift * diag));
}

DampingEigenstate damping_eigenstate(int n, int j, double omega_c, double kappa, double n_p, int dim) {
  return {n, j, right_state(n, j, n_p, dim), left_state(n, j, n_p, dim), eigenvalue(n, j, omega_c, kappa)};
}

DampingEigenstate mechanical_eigenstates(int n, int l, int dim, double nu0) {
  if (n < 0 || n >= dim || n + l < 0 || n + l >= dim) {
    throw Error(ErrorKind::IndexOutOfTruncation, "Fock indices outside the mechanical truncation");
  }
  Matrix r = Matrix::Zero(dim, dim);
  r(n + l, n) = 1.0;
  DenseOperator right(r);
  DenseOperator left = right.adjoint();
  return {n, l, std::move(right), std::move(left), cdouble(0.0, l * nu0)};
}

DenseOperator cavity_generator_apply(const DenseOperator& rho, double omega_c, double kappa, double n_p) {
  const int dim = rho.size();
  const DenseOperator a = annihilation(dim);
  DenseOperator out = commutator(number(dim), rho) * cdouble(0.0, omega_c);
  out += dissipator(a, rho) * cdouble(0.5 * kappa * (n_p + 1.0));
  if (n_p != 0.0) out += dissipator(a.adjoint(), rho) * cdouble(0.5 * kappa * n_p);
  return out;
}

Matrix cavity_superoperator(double omega_c, double kappa, double n_p, int dim) {
  const int n2 = dim * dim;
  Matrix S(n2, n2);
  Matrix basis = Matrix::Zero(dim, dim);
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) {
      basis(r, c) = 1.0;
      const Matrix col = cavity_generator_apply(DenseOperator(basis), omega_c, kappa, n_p).matrix();
      S.col(c * dim + r) = Eigen::Map<const Eigen::VectorXcd>(col.data(), n2);
      basis(r, c) = 0.0;
    }
  }
  return S;
}

}  // namespace optomech

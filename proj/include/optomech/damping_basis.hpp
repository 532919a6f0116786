#pragma once

// Damping basis of a leaky single-mode cavity: right and left eigenoperators
// of the generator
//   L rho = i w [a^dag a, rho] + (k/2)(n_p+1) D[a] rho + (k/2) n_p D[a^dag] rho,
// with eigenvalues i j w - k (n + |j|/2). The rotation sign matches a cavity
// Hamiltonian -w a^dag a, which is how the detuned cavity enters the model.

#include <vector>

#include "optomech/operator_algebra.hpp"

namespace optomech {

struct DampingEigenstate {
  int n = 0;
  int j = 0;
  DenseOperator right;
  DenseOperator left;
  cdouble eigenvalue;
};

cdouble eigenvalue(int n, int j, double omega_c, double kappa);

/// Coefficients c_k of the generalised Laguerre polynomial L_n^alpha(x) =
/// sum_k c_k x^k, built with the three-term recurrence.
std::vector<double> laguerre_coefficients(int n, int alpha);

/// Right eigenoperator; IndexOutOfTruncation unless 0 <= n and n + |j| < dim.
DenseOperator right_state(int n, int j, double n_p, int dim);

/// Left eigenoperator, normalised so Tr[right_{n,j} left_{n,j}] = 1.
DenseOperator left_state(int n, int j, double n_p, int dim);

DampingEigenstate damping_eigenstate(int n, int j, double omega_c, double kappa, double n_p, int dim);

/// |n+l><n| with eigenvalue i l nu0 under the same rotation convention.
DampingEigenstate mechanical_eigenstates(int n, int l, int dim, double nu0 = 1.0);

/// Generator above applied to rho (dense reference).
DenseOperator cavity_generator_apply(const DenseOperator& rho, double omega_c, double kappa, double n_p);

/// Generator above as a dim^2 x dim^2 matrix acting on column-stacked operators.
Matrix cavity_superoperator(double omega_c, double kappa, double n_p, int dim);

}  // namespace optomech

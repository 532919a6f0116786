#pragma once

// Dense operators on truncated Fock spaces (single modes or tensor products).
// Units: hbar = M = 1.

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

namespace optomech {

using cdouble = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Square complex matrix tagged with its subsystem dimensions.
/// The product of dims always equals the matrix size.
class DenseOperator {
 public:
  DenseOperator() = default;
  DenseOperator(Matrix data, std::vector<int> dims);
  /// Single-mode operator, dims = {rows}.
  explicit DenseOperator(Matrix data);

  const Matrix& matrix() const { return data_; }
  Matrix& matrix() { return data_; }
  const std::vector<int>& dims() const { return dims_; }
  int size() const { return static_cast<int>(data_.rows()); }

  DenseOperator adjoint() const;

  DenseOperator& operator+=(const DenseOperator& rhs);
  DenseOperator& operator-=(const DenseOperator& rhs);
  DenseOperator& operator*=(cdouble s);

  friend DenseOperator operator+(DenseOperator a, const DenseOperator& b) { return a += b; }
  friend DenseOperator operator-(DenseOperator a, const DenseOperator& b) { return a -= b; }
  friend DenseOperator operator*(DenseOperator a, cdouble s) { return a *= s; }
  friend DenseOperator operator*(cdouble s, DenseOperator a) { return a *= s; }
  friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b);

 private:
  Matrix data_;
  std::vector<int> dims_;
};

DenseOperator identity(std::vector<int> dims);
/// Lowering operator with sqrt(k) at (k-1, k). dim >= 2.
DenseOperator annihilation(int dim);
DenseOperator creation(int dim);
DenseOperator number(int dim);
/// |k><k| on a single mode.
DenseOperator fock_projector(int dim, int k);
/// Thermal state with mean occupation nbar, truncated and renormalised.
DenseOperator thermal_state(int dim, double nbar);

struct Quadratures {
  DenseOperator x;
  DenseOperator p;
};

/// x = (b + b^dag)/sqrt(2 nu), p = i sqrt(nu/2)(b^dag - b).
Quadratures quadratures(int dim, double nu);

DenseOperator tensor(const DenseOperator& a, const DenseOperator& b);
DenseOperator commutator(const DenseOperator& a, const DenseOperator& b);
/// 2 L rho L^dag - L^dag L rho - rho L^dag L.
DenseOperator dissipator(const DenseOperator& jump, const DenseOperator& rho);
/// Tr[A rho].
cdouble expectation(const DenseOperator& a, const DenseOperator& rho);

/// Requires identical dims on both operands (DimensionMismatch otherwise).
void require_same_dims(const DenseOperator& a, const DenseOperator& b, const char* where);

struct DensityTolerances {
  double hermiticity = 1e-10;
  double trace = 1e-8;
  double min_eigenvalue = -1e-8;
};

struct DensityReport {
  double hermiticity_error = 0.0;  // max |rho - rho^dag|
  double trace_error = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;
  bool hermitian = false;
  bool unit_trace = false;
  bool positive = false;
  bool valid() const { return hermitian && unit_trace && positive; }
};

DensityReport inspect_density(const DenseOperator& rho, const DensityTolerances& tol = {});

/// Density operator with a timestamp.
struct DensityMatrix {
  DenseOperator op;
  double time = 0.0;
};

}  // namespace optomech

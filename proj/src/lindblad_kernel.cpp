#include "optomech/lindblad_kernel.hpp"

#include <algorithm>
#include <cmath>

#include "optomech/error.hpp"

namespace optomech {

namespace {

constexpr cdouble kI{0.0, 1.0};

struct TermSpec {
  Matrix matrix;
  int dq_cav;
  int dq_mech;
};

Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

}  // namespace

Matrix CsrMatrix::to_dense() const {
  Matrix out = Matrix::Zero(n, n);
  for (int r = 0; r < n; ++r)
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) out(r, col[k]) += val[k];
  return out;
}

namespace {

template <class Assembled, class Term>
void build_pattern(Assembled& out, int n, const std::vector<TermSpec>& specs) {
  std::vector<std::vector<int>> rows(n);
  for (const TermSpec& s : specs)
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < n; ++r)
        if (s.matrix(r, c) != cdouble(0.0)) rows[r].push_back(c);

  CsrMatrix& m = out.m;
  m.n = n;
  m.row_ptr.assign(n + 1, 0);
  m.col.clear();
  for (int r = 0; r < n; ++r) {
    auto& cols = rows[r];
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    m.col.insert(m.col.end(), cols.begin(), cols.end());
    m.row_ptr[r + 1] = static_cast<int>(m.col.size());
  }
  m.val.assign(m.col.size(), cdouble(0.0));

  out.terms.clear();
  for (const TermSpec& s : specs) {
    Term t;
    t.dq_cav = s.dq_cav;
    t.dq_mech = s.dq_mech;
    for (int r = 0; r < n; ++r) {
      for (int k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k) {
        const cdouble v = s.matrix(r, m.col[k]);
        if (v != cdouble(0.0)) {
          t.slot.push_back(k);
          t.val.push_back(v);
        }
      }
    }
    out.terms.push_back(std::move(t));
  }
}

}  // namespace

LindbladKernel::LindbladKernel(const ModelParams& params, Frame frame)
    : params_(params), frame_(frame) {
  const int dc = params.dims.cav, dm = params.dims.mech;
  if (dc < 4 || dm < 4) throw Error(ErrorKind::DimensionMismatch, "cutoffs must be >= 4");
  n_ = dc * dm;

  const Matrix a = annihilation(dc).matrix();
  const Matrix ad = a.adjoint();
  const Matrix b = annihilation(dm).matrix();
  const Matrix bd = b.adjoint();
  const Matrix ic = Matrix::Identity(dc, dc);
  const Matrix im = Matrix::Identity(dm, dm);

  const std::vector<TermSpec> effective = {
      {kron(ad * a, im), 0, 0},  {kron(a * ad, im), 0, 0},  {kron(ic, bd * b), 0, 0},
      {kron(ic, b * bd), 0, 0},  {kron(ic, b * b), 0, -2},  {kron(ic, bd * bd), 0, 2},
      {kron(a, b), -1, -1},      {kron(a, bd), -1, 1},      {kron(ad, b), 1, -1},
      {kron(ad, bd), 1, 1},
  };
  build_pattern<Assembled, Term>(effective_, n_, effective);

  build_pattern<Assembled, Term>(jumps_[0], n_, {{kron(a, im), -1, 0}});
  build_pattern<Assembled, Term>(jumps_[1], n_, {{kron(ad, im), 1, 0}});
  const std::vector<TermSpec> mech = {{kron(ic, b), 0, -1}, {kron(ic, bd), 0, 1}};
  build_pattern<Assembled, Term>(jumps_[2], n_, mech);
  build_pattern<Assembled, Term>(jumps_[3], n_, mech);

  const double k = params.cavity.kappa, np = params.cavity.n_p;
  const double g = params.drive.gamma, nm = params.drive.n_m;
  rates_[0] = 0.5 * k * (np + 1.0);
  rates_[1] = 0.5 * k * np;
  rates_[2] = 0.5 * g * (nm + 1.0);
  rates_[3] = 0.5 * g * nm;

  energy_.resize(n_);
  for (int i = 0; i < dc; ++i)
    for (int j = 0; j < dm; ++j) energy_[i * dm + j] = -params.cavity.delta * i + params.drive.nu0 * j;

  y_.resize(n_, n_);
  z_.resize(n_, n_);
}

cdouble LindbladKernel::phase(const Term& term, double t) const {
  if (frame_ == Frame::Lab || (term.dq_cav == 0 && term.dq_mech == 0)) return 1.0;
  const double e = -params_.cavity.delta * term.dq_cav + params_.drive.nu0 * term.dq_mech;
  return std::exp(kI * (e * t));
}

void LindbladKernel::assemble(Assembled& a, const std::vector<cdouble>& coeff, double t) {
  std::fill(a.m.val.begin(), a.m.val.end(), cdouble(0.0));
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    const Term& term = a.terms[i];
    const cdouble c = coeff[i] * phase(term, t);
    if (c == cdouble(0.0)) continue;
    for (std::size_t k = 0; k < term.slot.size(); ++k) a.m.val[term.slot[k]] += c * term.val[k];
  }
}

void LindbladKernel::refresh(double t) {
  const MechanicalDrive& d = params_.drive;
  const LadderCoefficients lc = ladder_coefficients(d, t);
  const cdouble u = lc.u, v = lc.v;
  const cdouble w = interaction_weight(d, t);
  const cdouble amp = params_.coupling.amplitude();
  const double nu0 = d.nu0;

  const cdouble c1 = w * u + std::conj(w) * std::conj(v);
  const cdouble c2 = w * v + std::conj(w) * std::conj(u);

  std::vector<cdouble> h = {
      -params_.cavity.delta,
      0.0,
      nu0 * std::norm(u),
      nu0 * std::norm(v),
      nu0 * u * std::conj(v),
      nu0 * std::conj(u) * v,
      -std::conj(amp) * c1,
      -std::conj(amp) * c2,
      -amp * c1,
      -amp * c2,
  };
  if (frame_ == Frame::Interaction) {
    h[0] -= -params_.cavity.delta;
    h[2] -= nu0;
  }

  std::vector<cdouble> loss(10, cdouble(0.0));
  loss[0] += rates_[0];
  loss[1] += rates_[1];
  const double cg = rates_[2], cgd = rates_[3];
  loss[2] += cg * std::norm(u) + cgd * std::norm(v);
  loss[3] += cg * std::norm(v) + cgd * std::norm(u);
  loss[4] += (cg + cgd) * u * std::conj(v);
  loss[5] += (cg + cgd) * std::conj(u) * v;

  std::vector<cdouble> k(10);
  for (int i = 0; i < 10; ++i) k[i] = -kI * h[i] - loss[i];
  assemble(effective_, k, t);

  assemble(jumps_[0], {1.0}, t);
  assemble(jumps_[1], {1.0}, t);
  assemble(jumps_[2], {u, v}, t);
  assemble(jumps_[3], {std::conj(v), std::conj(u)}, t);
}

namespace {

// out(:, j) = A * x(:, j) for every column j
void csr_times_dense(const CsrMatrix& A, const Matrix& x, Matrix& out) {
  const int n = A.n;
  const int ncols = static_cast<int>(x.cols());
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ncols; ++j) {
    const cdouble* xc = x.col(j).data();
    cdouble* oc = out.col(j).data();
    for (int r = 0; r < n; ++r) {
      cdouble s = 0.0;
      for (int k = A.row_ptr[r]; k < A.row_ptr[r + 1]; ++k) s += A.val[k] * xc[A.col[k]];
      oc[r] = s;
    }
  }
}

// y += c * z * L^dag, using column j of z L^dag = sum_m conj(L(j, m)) z(:, m)
void add_times_adjoint(const CsrMatrix& L, double c, const Matrix& z, Matrix& y) {
  const int n = L.n;
  const int rows = static_cast<int>(z.rows());
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    cdouble* yc = y.col(j).data();
    for (int k = L.row_ptr[j]; k < L.row_ptr[j + 1]; ++k) {
      const cdouble f = c * std::conj(L.val[k]);
      const cdouble* zc = z.col(L.col[k]).data();
      for (int r = 0; r < rows; ++r) yc[r] += f * zc[r];
    }
  }
}

}  // namespace

void LindbladKernel::apply(double t, const Matrix& rho, Matrix& out) {
  if (rho.rows() != n_ || rho.cols() != n_) {
    throw Error(ErrorKind::DimensionMismatch, "state size does not match the kernel");
  }
  refresh(t);
  csr_times_dense(effective_.m, rho, y_);
  for (int k = 0; k < kJumps; ++k) {
    if (rates_[k] == 0.0) continue;
    csr_times_dense(jumps_[k].m, rho, z_);
    add_times_adjoint(jumps_[k].m, rates_[k], z_, y_);
  }
  out.resize(n_, n_);
  const int n = n_;
  const Matrix& y = y_;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) out(i, j) = y(i, j) + std::conj(y(j, i));
}

namespace {

// rho(r, s) *= e^{i (E_r - E_s) t}
void rotate(Matrix& rho, const std::vector<double>& energy, double t) {
  const int n = static_cast<int>(energy.size());
  std::vector<cdouble> ph(n);
  for (int r = 0; r < n; ++r) ph[r] = std::exp(kI * (energy[r] * t));
  for (int s = 0; s < n; ++s) {
    const cdouble cs = std::conj(ph[s]);
    for (int r = 0; r < n; ++r) rho(r, s) *= ph[r] * cs;
  }
}

}  // namespace

void LindbladKernel::to_lab(double t, Matrix& rho) const {
  if (frame_ == Frame::Lab) return;
  rotate(rho, energy_, -t);
}

void LindbladKernel::from_lab(double t, Matrix& rho) const {
  if (frame_ == Frame::Lab) return;
  rotate(rho, energy_, t);
}

Matrix LindbladKernel::effective_generator(double t) {
  refresh(t);
  return effective_.m.to_dense();
}

Matrix LindbladKernel::jump(double t, int which) {
  refresh(t);
  return jumps_[which].m.to_dense();
}

}  // namespace optomech

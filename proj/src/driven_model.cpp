#include "optomech/driven_model.hpp"

#include <cmath>

#include "optomech/error.hpp"

namespace optomech {

namespace {

constexpr cdouble kI{0.0, 1.0};

void check_dims(ModelDims dims) {
  if (dims.cav < 4 || dims.mech < 4) {
    throw Error(ErrorKind::DimensionMismatch, "cavity and mechanical cutoffs must be >= 4");
  }
}

LadderCoefficients raw_coefficients(const MechanicalDrive& d, double t) {
  const GhPair c = gh(d, t);
  const double s = std::sqrt(d.nu0);
  return {(c.h / s + kI * s * c.g) / (2.0 * kI), (c.h / s - kI * s * c.g) / (2.0 * kI)};
}

DenseOperator gamma_from_quadratures(const MechanicalDrive& d, double t, int mech_dim, double scale) {
  if (mech_dim < 4) throw Error(ErrorKind::DimensionMismatch, "mechanical cutoff must be >= 4");
  const GhPair c = gh(d, t);
  const Quadratures q = quadratures(mech_dim, d.nu0);
  const double r2 = std::sqrt(2.0);
  return (q.x * (r2 * c.h) - q.p * (r2 * c.g)) * (1.0 / (2.0 * kI * scale));
}

}  // namespace

cdouble alpha0(const CavityConfig& cfg) { return cfg.Omega / cdouble(2.0 * cfg.delta, cfg.kappa); }

EffectiveCoupling coupling_from_pump(const CavityConfig& cfg) {
  EffectiveCoupling c;
  c.alpha0 = alpha0(cfg);
  c.chi0 = cfg.chi0;
  c.g_eff = cfg.chi0 * std::abs(c.alpha0);
  return c;
}

EffectiveCoupling coupling_from_geff(const CavityConfig& cfg, double g_eff) {
  const cdouble denom(2.0 * cfg.delta, cfg.kappa);
  EffectiveCoupling c;
  c.alpha0 = std::abs(denom) > 0.0 ? std::abs(denom) / denom : cdouble(1.0);
  c.chi0 = g_eff;
  c.g_eff = g_eff;
  return c;
}

double raw_commutator(const MechanicalDrive& d, double t) {
  const LadderCoefficients c = raw_coefficients(d, t);
  return std::norm(c.u) - std::norm(c.v);
}

LadderCoefficients ladder_coefficients(const MechanicalDrive& d, double t) {
  LadderCoefficients c = raw_coefficients(d, t);
  const double s = std::sqrt(std::norm(c.u) - std::norm(c.v));
  c.u /= s;
  c.v /= s;
  return c;
}

DenseOperator gamma_op(const MechanicalDrive& d, double t, int mech_dim) {
  return gamma_from_quadratures(d, t, mech_dim, std::sqrt(raw_commutator(d, t)));
}

DenseOperator gamma_op_raw(const MechanicalDrive& d, double t, int mech_dim) {
  return gamma_from_quadratures(d, t, mech_dim, 1.0);
}

cdouble interaction_weight(const MechanicalDrive& d, double t) {
  const cdouble up = std::exp(kI * (2.0 * d.omega * t));
  const double cp = d.eps / (8.0 * (d.n + 1));
  const double cm = d.eps == 0.0 ? 0.0 : d.eps / (8.0 * (d.n - 1));
  return 1.0 + cp * std::conj(up) - cm * up;
}

DenseOperator hamiltonian(const MechanicalDrive& drive, const CavityConfig& cfg,
                          const EffectiveCoupling& coupling, double t, ModelDims dims) {
  check_dims(dims);
  const DenseOperator a = annihilation(dims.cav);
  const DenseOperator id_c = identity({dims.cav});
  const DenseOperator id_m = identity({dims.mech});
  const DenseOperator G = gamma_op(drive, t, dims.mech);
  const DenseOperator Gd = G.adjoint();

  const cdouble amp = coupling.amplitude();
  const DenseOperator field = a * std::conj(amp) + a.adjoint() * amp;
  const cdouble w = interaction_weight(drive, t);
  const DenseOperator mech_part = G * w + Gd * std::conj(w);

  return tensor(a.adjoint() * a, id_m) * cdouble(-cfg.delta) + tensor(id_c, Gd * G) * cdouble(drive.nu0) -
         tensor(field, mech_part);
}

std::vector<JumpTerm> jump_terms(const ModelParams& p, double t) {
  check_dims(p.dims);
  const DenseOperator a = annihilation(p.dims.cav);
  const DenseOperator G = gamma_op(p.drive, t, p.dims.mech);
  const DenseOperator id_c = identity({p.dims.cav});
  const DenseOperator id_m = identity({p.dims.mech});
  const double k = p.cavity.kappa, np = p.cavity.n_p;
  const double g = p.drive.gamma, nm = p.drive.n_m;
  return {
      {0.5 * k * (np + 1.0), tensor(a, id_m)},
      {0.5 * k * np, tensor(a.adjoint(), id_m)},
      {0.5 * g * (nm + 1.0), tensor(id_c, G)},
      {0.5 * g * nm, tensor(id_c, G.adjoint())},
  };
}

DenseOperator liouvillian_apply(const DenseOperator& rho, double t, const ModelParams& p) {
  const DenseOperator H = hamiltonian(p.drive, p.cavity, p.coupling, t, p.dims);
  require_same_dims(H, rho, "liouvillian_apply");
  DenseOperator out = commutator(H, rho) * cdouble(0.0, -1.0);
  for (const JumpTerm& j : jump_terms(p, t)) {
    if (j.rate != 0.0) out += dissipator(j.op, rho) * cdouble(j.rate);
  }
  return out;
}

Matrix liouvillian_matrix(double t, const ModelParams& p) {
  const DenseOperator H = hamiltonian(p.drive, p.cavity, p.coupling, t, p.dims);
  const Eigen::Index n = H.size();
  const Matrix id = Matrix::Identity(n, n);
  // vec(A X B) = (B^T kron A) vec(X)
  auto kron = [](const Matrix& A, const Matrix& B) {
    Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
      for (Eigen::Index j = 0; j < A.cols(); ++j)
        out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
  };
  const Matrix& h = H.matrix();
  Matrix L = cdouble(0.0, -1.0) * (kron(id, h) - kron(h.transpose(), id));
  for (const JumpTerm& j : jump_terms(p, t)) {
    if (j.rate == 0.0) continue;
    const Matrix& l = j.op.matrix();
    const Matrix ldl = l.adjoint() * l;
    L += j.rate * (2.0 * kron(l.conjugate(), l) - kron(id, ldl) - kron(ldl.transpose(), id));
  }
  return L;
}

}  // namespace optomech

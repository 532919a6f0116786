#pragma once

// Sparse, OpenMP-parallel evaluation of the driven Lindblad generator.
//
// The generator is written as Y + Y^dag with
//   Y = K rho + sum_k c_k L_k rho L_k^dag,   K = -iH - sum_k c_k L_k^dag L_k,
// which equals -i[H, rho] + sum_k c_k D[L_k] rho for Hermitian rho.
// K and the L_k are coefficient-weighted sums of fixed sparse terms, so each
// evaluation only refreshes numeric values on a precomputed pattern.
//
// In the interaction frame the state is rho_I = e^{iH0 t} rho e^{-iH0 t} with
// H0 = -delta a^dag a + nu0 b^dag b; every term picks up a phase set by how many
// quanta it moves.

#include <vector>

#include "optomech/driven_model.hpp"

namespace optomech {

/// Compressed sparse row storage with a fixed pattern.
struct CsrMatrix {
  int n = 0;
  std::vector<int> row_ptr;
  std::vector<int> col;
  std::vector<cdouble> val;

  int nnz() const { return static_cast<int>(col.size()); }
  Matrix to_dense() const;
};

enum class Frame { Lab, Interaction };

class LindbladKernel {
 public:
  LindbladKernel(const ModelParams& params, Frame frame);

  /// out = generator applied to rho (rho Hermitian, column-major N x N).
  /// Parallel over columns when OpenMP is available.
  void apply(double t, const Matrix& rho, Matrix& out);

  Frame frame() const { return frame_; }
  int size() const { return n_; }
  const ModelParams& params() const { return params_; }

  /// Energies of H0 per basis state, cavity index major.
  const std::vector<double>& frame_energies() const { return energy_; }

  /// Interaction-frame state at time t to lab frame, and back. No-ops in the lab frame.
  void to_lab(double t, Matrix& rho) const;
  void from_lab(double t, Matrix& rho) const;

  /// Operators as assembled for time t in the kernel's frame (for tests).
  Matrix effective_generator(double t);
  Matrix jump(double t, int which);
  double jump_rate(int which) const { return rates_[which]; }
  static constexpr int kJumps = 4;

 private:
  struct Term {
    std::vector<int> slot;     // position in the union value array
    std::vector<cdouble> val;  // fixed matrix entries
    int dq_cav = 0;            // quanta added to the cavity
    int dq_mech = 0;           // quanta added to the mechanics
  };

  struct Assembled {
    CsrMatrix m;
    std::vector<Term> terms;
  };

  void refresh(double t);
  void assemble(Assembled& a, const std::vector<cdouble>& coeff, double t);
  cdouble phase(const Term& term, double t) const;

  ModelParams params_;
  Frame frame_;
  int n_ = 0;
  std::vector<double> energy_;
  double rates_[kJumps] = {0.0, 0.0, 0.0, 0.0};

  Assembled effective_;
  Assembled jumps_[kJumps];

  Matrix y_;
  Matrix z_;
};

}  // namespace optomech

#pragma once

#include "qec/error_model.hpp"
#include "qsim/gellmann.hpp"
#include "qsim/state_vector.hpp"
#include "qsim/tomography.hpp"

namespace qec {

// Two-layer variational encoder/decoder: one shared 3-qubit unitary U1 per
// block and one 3-qubit unitary U2 across the block middles, 63 Gell-Mann
// coefficients each. The encoder is the inverse circuit with |0> ancillas.
struct EncoderDecoder {
  qsim::ParamVector u1;  // 63
  qsim::ParamVector u2;  // 63

  void validate() const;
  Matrix u1_matrix() const;
  Matrix u2_matrix() const;
};

// |psi_l> with two |0> ancillas per layer -> U2^dag -> U1^dag per block.
qsim::StateVector encode(const qsim::StateVector& logical,
                         const EncoderDecoder& ed);

// U1 per block, trace out the block ancillas, U2, trace to the middle.
DensityMatrix decode(const DensityMatrix& rho9, const EncoderDecoder& ed);

// The six Pauli eigenstates used by the recovery fidelity.
std::vector<qsim::StateVector> pauli_eigenstates();

struct QecReport {
  double f_q = 0.0;
  double logical_error_rate = 0.0;  // 1.5 (1 - f_q)
  std::vector<double> overlaps;     // six input states
  double shor_rate = 0.0;
  double identity_rate = 0.0;
};

// Mean over the six eigenstates of <psi| decode(noise(encode(psi))) |psi>,
// dense 9-qubit density-matrix pipeline.
double fidelity_fq(const EncoderDecoder& ed, const ErrorModel& em,
                   std::vector<double>* overlaps = nullptr);

// Block-factorized fast path: the tree structure makes the first layer an
// independent single-qubit channel per block, so the whole pipeline reduces
// to 3-qubit algebra. Agrees with fidelity_fq to machine precision (the
// correlated pairs never straddle blocks).
double fidelity_fq_fast(const EncoderDecoder& ed, const ErrorModel& em);

// Stage-2 objective with the first layer frozen: the three block transfer
// matrices are tomographed once, each 1 - f_q evaluation is then pure
// 3-qubit algebra.
class Stage2Objective {
 public:
  Stage2Objective(const qsim::ParamVector& u1, const ErrorModel& em);
  double operator()(const qsim::ParamVector& u2) const;

 private:
  Eigen::Matrix4d t_[3];
};

// rho -> tr_a[U1 N_b(U1' (|0><0| x rho x |0><0|) U1) U1'] for one block.
qsim::OneQubitChannel effective_first_layer_channel(
    const qsim::ParamVector& u1, const ErrorModel& em, int block);

// Singular values of the Bloch map, mapped to error probabilities
// q_mu = (1 + s_mu - s_nu - s_lambda)/4 (clamped), then C1 = q1^2 + q2 + q3
// averaged over the three blocks.
double cost_c1(const qsim::ParamVector& u1, const ErrorModel& em);

}  // namespace qec

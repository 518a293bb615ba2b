#pragma once

#include <string>
#include <vector>

#include "qsim/density_matrix.hpp"
#include "qsim/gellmann.hpp"
#include "qsim/state_vector.hpp"

namespace qcnn {

// Fig-8-style hyperparameters: per depth, one (n+1)-window pair-product
// convolution (C1), n translationally tiled n-qubit convolutions (C2..C_{n+1}),
// and a measure-(n-1)-of-n pooling layer with outcome-conditioned single-qubit
// corrections; a fully connected unitary on the N/n^d survivors closes.
struct QcnnHyperparams {
  int n = 3;
  int d = 1;
  int N = 15;
};

struct ParamSegment {
  std::string name;
  int offset = 0;
  int length = 0;
  int dim = 0;    // unitary dimension the segment parameterizes
  int stage = 0;  // evaluation stage the segment first affects
};

struct TrainableGate {
  std::vector<int> targets;  // qubit ids, gate bit order
  int segment = -1;
  int control = -1;  // pooling: measured qubit (X basis, fires on -1)
};

struct TrainableStage {
  std::vector<TrainableGate> gates;
};

// Deferred-measurement evaluator for the trainable QCNN. Parameters live in
// one flat vector carved into shared segments (translational tiling reuses
// one segment across every window of a layer).
class TrainableCircuit {
 public:
  explicit TrainableCircuit(const QcnnHyperparams& h);

  const QcnnHyperparams& hyperparams() const { return hp_; }
  int param_count() const { return total_params_; }
  const std::vector<ParamSegment>& segments() const { return segments_; }
  const std::vector<TrainableStage>& stages() const { return stages_; }
  int num_stages() const { return static_cast<int>(stages_.size()); }
  const std::vector<int>& final_register() const { return final_register_; }
  int readout_qubit() const { return readout_qubit_; }
  int segment_of_param(int coord) const;
  int stage_of_param(int coord) const;

  // Gate matrices for the current parameter vector, one per segment
  // (controlled expansion for pooling segments happens at apply time).
  std::vector<qsim::Matrix> segment_matrices(const qsim::ParamVector& p) const;

  // Probability of the +1 Z outcome on the readout qubit.
  double classify(const qsim::StateVector& input,
                  const qsim::ParamVector& p) const;

  // Staged evaluation pieces used by the trainer's caches:
  void apply_stage(qsim::StateVector& psi, int stage,
                   const std::vector<qsim::Matrix>& segmat) const;
  // reduced state on the final register (bit k of the index = register[k])
  qsim::Matrix reduced_final(const qsim::StateVector& psi) const;
  // readout probability from the reduced state and the fc unitary
  double readout_from_reduced(const qsim::Matrix& rho,
                              const qsim::Matrix& fc) const;
  // F' Pi F with Pi the +Z projector on the readout bit; the probability is
  // then tr(op rho) per sample
  qsim::Matrix readout_operator(const qsim::Matrix& fc) const;
  int fc_segment() const { return static_cast<int>(segments_.size()) - 1; }

 private:
  QcnnHyperparams hp_;
  std::vector<ParamSegment> segments_;
  std::vector<TrainableStage> stages_;
  std::vector<int> final_register_;
  int readout_qubit_ = -1;
  int readout_bit_ = -1;  // position within the final register
  int total_params_ = 0;
  std::vector<int> coord_segment_;  // coord -> segment
};

}  // namespace qcnn

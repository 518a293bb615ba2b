#pragma once

#include <random>
#include <string>

#include "qcnn/trainable.hpp"

namespace qcnn {

struct TrainingSample {
  double h1 = 0.0, h2 = 0.0;
  int label = 0;             // y in {0,1}
  double sop_value = 0.0;    // oracle annotation <S_ab> on the state
  qsim::StateVector state;
};

using TrainingSet = std::vector<TrainingSample>;

struct IterationRecord {
  int iteration;
  double mse;
  double eta;
  bool accepted;
};

struct OptimizerState {
  qsim::ParamVector params;
  double eta = 10.0;
  double prev_mse = 0.0;
  int iteration = 0;
  std::uint64_t seed = 0;
  double epsilon = 1e-4;
};

struct TrainResult {
  qsim::ParamVector params;
  double final_mse = 0.0;
  std::vector<IterationRecord> history;
  bool converged = false;
  std::uint64_t seed = 0;
};

struct TrainOptions {
  double eta0 = 10.0;        // initial learning rate
  double epsilon = 1e-4;     // finite-difference step
  double stop_delta = 1e-5;  // |dMSE| convergence threshold
  int budget = 500;          // max gradient iterations
  int threads = 2;
  bool verbose = false;
};

// Stage-cached MSE/gradient evaluator over a fixed dataset. Forward states
// are cached per sample per stage, so a perturbed coordinate only re-runs
// the circuit from the stage its segment enters; fully connected coordinates
// touch nothing but the cached reduced density matrices.
class MseEvaluator {
 public:
  MseEvaluator(const TrainableCircuit& circuit, const TrainingSet& data,
               int threads = 2);

  double mse(const qsim::ParamVector& p);
  // central difference per coordinate, 2P loss evaluations for P parameters
  qsim::ParamVector gradient(const qsim::ParamVector& p, double epsilon);
  long evaluations() const { return evals_; }

 private:
  double mse_from_stage(const qsim::ParamVector& p, int first_stage,
                        const std::vector<qsim::Matrix>& segmat_full);
  void refresh_caches(const qsim::ParamVector& p);

  const TrainableCircuit& circ_;
  const TrainingSet& data_;
  int threads_;
  long evals_ = 0;
  qsim::ParamVector cached_params_;
  // caches[sample][stage] = state after that stage (stages before fc)
  std::vector<std::vector<qsim::StateVector>> stage_cache_;
  std::vector<qsim::Matrix> rho_cache_;  // reduced final-register states
  std::vector<qsim::Matrix> segmat_cache_;
};

double mse(const TrainableCircuit& circuit, const TrainingSet& data,
           const qsim::ParamVector& p);

qsim::ParamVector finite_diff_gradient(const TrainableCircuit& circuit,
                                       const TrainingSet& data,
                                       const qsim::ParamVector& p,
                                       double epsilon);

// Random init in [0, 2pi), finite-difference gradient descent with the bold
// driver (eta x1.05 on improvement, x0.5 and revert otherwise), stop when an
// accepted step improves by less than stop_delta. Throws on NaN loss.
TrainResult train(const QcnnHyperparams& h, const TrainingSet& data,
                  std::uint64_t seed, const TrainOptions& opts = {});

std::string trained_model_to_json(const TrainableCircuit& circuit,
                                  const TrainResult& result);
TrainResult trained_model_from_json(const std::string& text,
                                    QcnnHyperparams* h_out = nullptr);

}  // namespace qcnn

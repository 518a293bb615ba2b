#pragma once

#include <random>

#include "qcnn/exact_circuit.hpp"

namespace qcnn {

struct QcnnOutput {
  double expectation = 0.0;          // in [-1, 1]
  double probability_in_phase = 0.5; // (1 + expectation) / 2
  long shots_used = 0;
  double std_error = 0.0;            // trajectory mode only
};

// Exact expectation with all measurements deferred: pooling conditionals
// become coherent controlled gates, the readout is <X_r> after the fc layer.
QcnnOutput run_deferred(const qsim::StateVector& input,
                        const CircuitDescription& circuit);

struct TrajectoryRecord {
  int readout = 0;                 // +-1
  std::vector<int> outcomes;       // pooling outcomes, +-1 per slot
};

// Single trajectory with mid-circuit collapse; pooled qubits are dropped
// from the register as they are measured.
TrajectoryRecord run_single_trajectory(const qsim::StateVector& input,
                                       const CircuitDescription& circuit,
                                       std::mt19937_64& rng);

QcnnOutput run_trajectories(const qsim::StateVector& input,
                            const CircuitDescription& circuit, long shots,
                            std::mt19937_64& rng);

}  // namespace qcnn

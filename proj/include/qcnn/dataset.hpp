#pragma once

#include <functional>

#include "qcnn/train.hpp"

namespace qcnn {

// Symmetric-sector ED ground state of the cluster Hamiltonian at (h1, h2),
// optionally cached on disk.
qsim::StateVector cluster_ground_state(int N, double h1, double h2,
                                       std::uint64_t seed = 1,
                                       const std::string& cache_dir = "");

// `count` equally spaced points on the exactly solvable line h2 = 0,
// h1 in [0, h1_max]; labels y = 1 iff h1/J < 1, cross-checked against the
// mid-chain string-order expectation which annotates every sample.
TrainingSet generate_training_set(int N, int count = 40, double h1_max = 2.0,
                                  std::uint64_t seed = 1,
                                  const std::string& cache_dir = "");

// Oracle label from the SOP expectation: 1 if <S> > threshold, 0 if
// <S> < threshold; |<S>| <= threshold means low confidence.
int sop_oracle_label(double sop_value, double threshold = 0.3);

struct SweepPoint {
  double h1 = 0.0, h2 = 0.0;
  double output = 0.0;  // classifier output in [0, 1]
  bool ok = false;
  std::string error;
};

// Classify ED ground states over an (h1, h2) grid; failures are recorded per
// point and the sweep continues. Deterministic result order.
std::vector<SweepPoint> phase_sweep(const TrainableCircuit& circuit,
                                    const qsim::ParamVector& params,
                                    const std::vector<double>& h1_values,
                                    const std::vector<double>& h2_values,
                                    int jobs = 1,
                                    const std::string& cache_dir = "",
                                    std::uint64_t seed = 1);

}  // namespace qcnn

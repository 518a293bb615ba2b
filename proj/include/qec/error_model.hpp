#pragma once

#include <vector>

#include "qsim/density_matrix.hpp"

namespace qec {

using qsim::cx;
using qsim::DensityMatrix;
using qsim::Matrix;

// Anisotropic single-qubit depolarization on all nine physical qubits plus
// correlated X X errors on nearest-neighbor pairs inside each block.
// Qubits are 0-indexed bottom to top; blocks (0,1,2), (3,4,5), (6,7,8) with
// the logical path through the middles 1, 4, 7.
struct ErrorModel {
  double px = 0.0, py = 0.0, pz = 0.0;
  double pxx = 0.0;
  std::vector<std::pair<int, int>> pairs = {{0, 1}, {1, 2}, {3, 4},
                                            {4, 5}, {6, 7}, {7, 8}};

  void validate() const;
  double total_rate() const { return px + py + pz + pxx; }
  ErrorModel scaled_to(double total) const;  // same ratios, new total
};

qsim::KrausChannel depolarize_channel(int qubit, double px, double py,
                                      double pz);
qsim::KrausChannel xx_channel(int a, int b, double pxx);

// N1 on qubits 0..8 ascending, then N2 on the pair list in order.
void apply_noise(DensityMatrix& rho, const ErrorModel& em);

// Noise restricted to one block (its three qubits and internal pairs),
// acting on a 3-qubit density matrix.
void apply_block_noise(DensityMatrix& rho3, const ErrorModel& em, int block);

}  // namespace qec

#pragma once

#include "qsim/state_vector.hpp"
#include "spt/hamiltonian.hpp"

namespace spt {

struct HaldaneParams {
  double J = 1.0;
  double omega = 0.0;
  int N = 2;  // spin-1 sites, open boundary
};

// H = J sum_j S_j . S_{j+1} + omega sum_j (S_j^z)^2 on N spin-1 sites.
SparseHamiltonian build_haldane_hamiltonian(const HaldaneParams& p);

// Spin-1 operators, S^z diagonal with eigenvalues (+1, 0, -1).
Matrix spin1_sx();
Matrix spin1_sy();
Matrix spin1_sz();

// Global pi-rotation generators per site: R_nu = exp(i pi S^nu).
Matrix spin1_rx();
Matrix spin1_ry();

// Cartesian basis |x>,|y>,|z> defined by R_nu |mu> = (-1)^{delta+1} |mu>,
// returned as columns in the S^z basis.
Matrix spin1_cartesian_basis();

// Per-site isometry |x> -> |+->, |y> -> -|-+>, |z> -> -i|-->, site j of the
// spin-1 chain onto qubits (2j, 2j+1). Satisfies U R_x U^dag = prod X_{2j}
// and U R_y U^dag = prod X_{2j+1} on embedded states.
qsim::StateVector spin1_embed(const std::vector<cx>& spin1_state, int N);

}  // namespace spt

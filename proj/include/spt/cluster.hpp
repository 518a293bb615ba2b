#pragma once

#include "qsim/pauli.hpp"
#include "qsim/state_vector.hpp"

namespace spt {

// Cluster state on a ring: |+>^N then CZ on every nearest-neighbor pair
// (periodic). All N stabilizers Z_{i-1} X_i Z_{i+1} are +1.
qsim::StateVector cluster_state(int N);

// String order parameter S_ab = Z_a X_{a+1} X_{a+3} ... X_{b-1} Z_b,
// 0-indexed sites, b - a even and >= 2.
qsim::PauliString sop(int a, int b, int N);

// <C_N| P |C_N> on the ring cluster state, evaluated symbolically (graph
// state algebra, any N up to 64 sites). Exact: returns -1, 0, or +1 times
// the string coefficient.
qsim::cx cluster_expectation(const qsim::PauliString& p, int N);
double cluster_expectation(const qsim::PauliSum& sum, int N);

}  // namespace spt

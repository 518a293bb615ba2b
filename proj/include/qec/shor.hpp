#pragma once

#include "qec/codec.hpp"

namespace qec {

// Nine-qubit Shor code on the same block layout, encode/decode as a fixed
// circuit with coherent majority-vote correction (Toffolis), independent of
// the variational family.
qsim::StateVector shor_encode(const qsim::StateVector& logical);
DensityMatrix shor_decode(const DensityMatrix& rho9);

// 1.5 (1 - f_q) with the six-state-average fidelity.
double shor_baseline(const ErrorModel& em);

// One unencoded qubit through a single N1 instance: px + py + pz exactly.
double identity_baseline(const ErrorModel& em);
// The same quantity evaluated through the density-matrix pipeline.
double identity_baseline_simulated(const ErrorModel& em);

}  // namespace qec

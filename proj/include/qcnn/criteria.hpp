#pragma once

#include <string>
#include <vector>

#include "qcnn/exact_circuit.hpp"

namespace qcnn {

struct CriteriaReport {
  bool fixed_point_ok = false;
  bool qec_ok = false;
  std::string mode;  // "dense" | "heisenberg"
  // first failure, if any
  int failing_site = -1;
  int failing_unit = -1;
  std::string detail;
  bool ok() const { return fixed_point_ok && qec_ok; }
};

// (i) cluster input -> cluster output per unit with all pooling outcomes +1;
// (ii) every single-site X error keeps the readout at +1, restores the
// cluster state, and raises at least one -1 pooling outcome.
// Dense statevector checking up to cap_qubits; larger N falls back to the
// Heisenberg-picture oracle on symbolic cluster expectations.
CriteriaReport verify_construction_criteria(int N, int d, int cap_qubits = 22);

}  // namespace qcnn

#pragma once

#include <string>
#include <vector>

#include "qsim/state_vector.hpp"
#include "qsim/types.hpp"

namespace qcnn {

using qsim::cx;
using qsim::Matrix;

enum class ElementKind { Unitary, Measure, CondUnitary, Postselect };

struct CircuitElement {
  ElementKind kind = ElementKind::Unitary;
  std::vector<int> targets;     // original qubit ids
  Matrix matrix;                // Unitary / CondUnitary payload
  qsim::Basis basis = qsim::Basis::X;  // Measure / Postselect
  int measure_id = -1;          // Measure: slot written; CondUnitary: slot read
  int control = -1;             // CondUnitary: the measured qubit (for deferred mode)
  int postselect_outcome = +1;
  std::string tag;              // fine-cz | coarse-cz | toffoli | pool-cz | fc-cz | readout
};

// Ordered gate/measurement program with classical-control edges. Conditional
// unitaries fire when the referenced X measurement gave -1.
struct CircuitDescription {
  int num_qubits = 0;
  int depth = 0;
  std::vector<CircuitElement> elements;
  std::vector<std::size_t> unit_end;   // element count at the end of each unit
  std::vector<int> final_survivors;    // original ids after all units
  int readout_qubit = -1;              // original id
  int num_measurements = 0;            // pooling slots (readout excluded)

  std::size_t count_tag(const std::string& tag) const;
  std::string dump() const;  // human-readable listing
};

// Exact cluster-model QCNN on a ring of N = m 3^d qubits (m >= 3).
// Per convolution-pooling unit on the current ring of L qubits:
//   CZ on all L nearest-neighbor bonds, CZ on the L/3 coarse bonds between
//   block middles, one X-basis Toffoli (phase flip of |--->) per block, and
//   two conditional-Z pooling gates per surviving qubit controlled by the
//   measured qubits two sites away. The fully connected layer closes with CZ
//   on the final ring and an X readout, i.e. it measures Z X Z on the
//   surviving cluster.
// readout_index picks the readout site within the final register
// (default: middle).
CircuitDescription build_exact_circuit(int N, int d, int readout_index = -1);

// X-basis Toffoli I - 2 |---><---| as a dense 3-qubit matrix.
Matrix xbasis_toffoli();
// Conditional phase flip, deferred form: I - 2 |-><-| (x) |1><1|.
Matrix cond_phase_deferred();

}  // namespace qcnn

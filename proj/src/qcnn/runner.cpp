#include "qcnn/runner.hpp"

#include <cmath>
#include <stdexcept>

#include "qsim/pauli.hpp"

namespace qcnn {

using qsim::Basis;
using qsim::StateVector;

QcnnOutput run_deferred(const StateVector& input,
                        const CircuitDescription& circuit) {
  if (input.num_qubits() != circuit.num_qubits)
    throw std::invalid_argument("input qubit count mismatch");
  StateVector psi = input;
  for (const auto& e : circuit.elements) {
    switch (e.kind) {
      case ElementKind::Unitary:
        psi.apply_matrix(e.targets, e.matrix);
        break;
      case ElementKind::Measure:
        break;  // deferred
      case ElementKind::CondUnitary: {
        // controlled gate, control on the would-be-measured qubit in its
        // measurement basis (fires on |->)
        const Matrix& u = e.matrix;
        const int k = static_cast<int>(e.targets.size());
        const int dim = 1 << k;
        Matrix big = Matrix::Identity(2 * dim, 2 * dim);
        // gate bit 0 = control, bits 1..k = targets
        for (int r = 0; r < dim; ++r)
          for (int cc = 0; cc < dim; ++cc) {
            const cx v = u(r, cc);
            // |-><-| (x) u : distribute over control bit
            big(2 * r, 2 * cc) = 0.5 * v + (r == cc ? 0.5 : 0.0);
            big(2 * r, 2 * cc + 1) = -0.5 * v + (r == cc ? 0.5 : 0.0);
            big(2 * r + 1, 2 * cc) = -0.5 * v + (r == cc ? 0.5 : 0.0);
            big(2 * r + 1, 2 * cc + 1) = 0.5 * v + (r == cc ? 0.5 : 0.0);
          }
        std::vector<int> t;
        t.push_back(e.control);
        for (int q : e.targets) t.push_back(q);
        psi.apply_matrix(t, big);
        break;
      }
      case ElementKind::Postselect:
        postselect_qubit(psi, e.targets[0], e.basis, e.postselect_outcome);
        break;
    }
  }
  QcnnOutput out;
  qsim::PauliString xr;
  xr.x = std::uint64_t{1} << circuit.readout_qubit;
  out.expectation = qsim::expectation_term(psi, xr).real();
  out.probability_in_phase = 0.5 * (1.0 + out.expectation);
  return out;
}

TrajectoryRecord run_single_trajectory(const StateVector& input,
                                       const CircuitDescription& circuit,
                                       std::mt19937_64& rng) {
  if (input.num_qubits() != circuit.num_qubits)
    throw std::invalid_argument("input qubit count mismatch");
  StateVector psi = input;
  std::vector<int> pos(circuit.num_qubits);  // original id -> current index
  for (int i = 0; i < circuit.num_qubits; ++i) pos[i] = i;
  TrajectoryRecord rec;
  rec.outcomes.assign(circuit.num_measurements, 0);

  auto current = [&](int orig) {
    if (pos[orig] < 0) throw std::logic_error("gate on a measured qubit");
    return pos[orig];
  };

  for (const auto& e : circuit.elements) {
    switch (e.kind) {
      case ElementKind::Unitary: {
        std::vector<int> t;
        t.reserve(e.targets.size());
        for (int q : e.targets) t.push_back(current(q));
        psi.apply_matrix(t, e.matrix);
        break;
      }
      case ElementKind::Measure: {
        const int q = current(e.targets[0]);
        const auto r = qsim::measure_qubit(psi, q, e.basis, rng);
        rec.outcomes[e.measure_id] = r.outcome;
        // rotate the collapsed |+->-state to |0/1> and drop the qubit
        if (e.basis == Basis::X) {
          const double s = 1.0 / std::sqrt(2.0);
          psi.apply_matrix({q}, (Matrix(2, 2) << s, s, s, -s).finished());
        }
        psi = qsim::remove_qubit(psi, q, r.outcome == +1 ? 0 : 1);
        pos[e.targets[0]] = -1;
        for (int i = 0; i < circuit.num_qubits; ++i)
          if (pos[i] > q) --pos[i];
        break;
      }
      case ElementKind::CondUnitary: {
        if (rec.outcomes[e.measure_id] == 0)
          throw std::logic_error("conditional references a later measurement");
        if (rec.outcomes[e.measure_id] == -1) {
          std::vector<int> t;
          for (int q : e.targets) t.push_back(current(q));
          psi.apply_matrix(t, e.matrix);
        }
        break;
      }
      case ElementKind::Postselect:
        postselect_qubit(psi, current(e.targets[0]), e.basis,
                         e.postselect_outcome);
        break;
    }
  }
  const auto r =
      qsim::measure_qubit(psi, current(circuit.readout_qubit), Basis::X, rng);
  rec.readout = r.outcome;
  return rec;
}

QcnnOutput run_trajectories(const StateVector& input,
                            const CircuitDescription& circuit, long shots,
                            std::mt19937_64& rng) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  long plus = 0;
  for (long s = 0; s < shots; ++s) {
    // per-shot stream derived from the master seed keeps shots independent
    std::mt19937_64 shot_rng(rng());
    const auto rec = run_single_trajectory(input, circuit, shot_rng);
    plus += (rec.readout == +1);
  }
  QcnnOutput out;
  out.shots_used = shots;
  const double p = double(plus) / double(shots);
  out.expectation = 2.0 * p - 1.0;
  out.probability_in_phase = p;
  out.std_error = 2.0 * std::sqrt(std::max(p * (1 - p), 1e-300) / double(shots));
  return out;
}

}  // namespace qcnn

#include "qec/shor.hpp"

namespace qec {

using qsim::StateVector;

namespace {

Matrix cnot() {  // control = gate bit 0, target = gate bit 1
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(2, 2) = 1.0;
  m(3, 1) = m(1, 3) = 1.0;
  return m;
}

Matrix toffoli() {  // controls = gate bits 0,1, target = gate bit 2
  Matrix m = Matrix::Identity(8, 8);
  m(3, 3) = m(7, 7) = 0.0;
  m(3, 7) = m(7, 3) = 1.0;
  return m;
}

Matrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return (Matrix(2, 2) << s, s, s, -s).finished();
}

}  // namespace

StateVector shor_encode(const StateVector& logical) {
  if (logical.num_qubits() != 1)
    throw std::invalid_argument("logical input must be one qubit");
  StateVector psi(9);
  psi.amps()[0] = logical[0];
  psi.amps()[std::size_t{1} << 4] = logical[1];
  // phase-code across block middles
  psi.apply_matrix({4, 1}, cnot());
  psi.apply_matrix({4, 7}, cnot());
  for (int h : {1, 4, 7}) psi.apply_matrix({h}, hadamard());
  // bit repetition inside each block
  for (int b = 0; b < 3; ++b) {
    psi.apply_matrix({3 * b + 1, 3 * b}, cnot());
    psi.apply_matrix({3 * b + 1, 3 * b + 2}, cnot());
  }
  return psi;
}

DensityMatrix shor_decode(const DensityMatrix& rho9) {
  DensityMatrix rho = rho9;
  // majority-vote bit correction inside blocks
  for (int b = 0; b < 3; ++b) {
    rho.apply_matrix({3 * b + 1, 3 * b}, cnot());
    rho.apply_matrix({3 * b + 1, 3 * b + 2}, cnot());
    rho.apply_matrix({3 * b, 3 * b + 2, 3 * b + 1}, toffoli());
  }
  for (int h : {1, 4, 7}) rho.apply_matrix({h}, hadamard());
  // majority-vote phase correction across blocks
  rho.apply_matrix({4, 1}, cnot());
  rho.apply_matrix({4, 7}, cnot());
  rho.apply_matrix({1, 7, 4}, toffoli());
  return qsim::partial_trace(rho, {4});
}

double shor_baseline(const ErrorModel& em) {
  em.validate();
  double acc = 0.0;
  for (const auto& psi : pauli_eigenstates()) {
    DensityMatrix rho = DensityMatrix::from_pure(shor_encode(psi));
    apply_noise(rho, em);
    acc += shor_decode(rho).overlap(psi);
  }
  return 1.5 * (1.0 - acc / 6.0);
}

double identity_baseline(const ErrorModel& em) {
  em.validate();
  return em.px + em.py + em.pz;
}

double identity_baseline_simulated(const ErrorModel& em) {
  double acc = 0.0;
  for (const auto& psi : pauli_eigenstates()) {
    DensityMatrix rho = DensityMatrix::from_pure(psi);
    rho.apply_channel(depolarize_channel(0, em.px, em.py, em.pz));
    acc += rho.overlap(psi);
  }
  return 1.5 * (1.0 - acc / 6.0);
}

}  // namespace qec

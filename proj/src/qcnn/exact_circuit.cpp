#include "qcnn/exact_circuit.hpp"

#include <sstream>
#include <stdexcept>

namespace qcnn {

namespace {

Matrix cz_matrix() {
  Matrix m = Matrix::Identity(4, 4);
  m(3, 3) = -1.0;
  return m;
}

Matrix pauli_z_matrix() { return (Matrix(2, 2) << 1, 0, 0, -1).finished(); }

}  // namespace

Matrix xbasis_toffoli() {
  // |-> component per qubit: (|0> - |1>)/sqrt(2)
  Eigen::VectorXcd minus(2);
  minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  Eigen::VectorXcd mmm = Eigen::VectorXcd::Ones(1);
  for (int i = 0; i < 3; ++i) {
    Eigen::VectorXcd next(mmm.size() * 2);
    next << minus(0) * mmm, minus(1) * mmm;
    mmm = next;
  }
  return Matrix::Identity(8, 8) - 2.0 * mmm * mmm.adjoint();
}

Matrix cond_phase_deferred() {
  // control (gate bit 0) in the X basis on |->, target (gate bit 1) phase flip
  Matrix m = Matrix::Identity(4, 4);
  // |-><-| on bit 0 = [[.5,-.5],[-.5,.5]], |1><1| on bit 1
  m(2, 2) -= 2.0 * 0.5;
  m(2, 3) -= 2.0 * -0.5;
  m(3, 2) -= 2.0 * -0.5;
  m(3, 3) -= 2.0 * 0.5;
  return m;
}

std::size_t CircuitDescription::count_tag(const std::string& tag) const {
  std::size_t n = 0;
  for (const auto& e : elements) n += (e.tag == tag);
  return n;
}

std::string CircuitDescription::dump() const {
  std::ostringstream os;
  os << "qcnn circuit: " << num_qubits << " qubits, depth " << depth << "\n";
  std::size_t unit = 0;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    while (unit < unit_end.size() && i == unit_end[unit]) {
      os << "-- end of unit " << (unit + 1) << " --\n";
      ++unit;
    }
    const auto& e = elements[i];
    switch (e.kind) {
      case ElementKind::Unitary: os << "  gate " << e.tag << " ("; break;
      case ElementKind::Measure: os << "  measure X ("; break;
      case ElementKind::CondUnitary:
        os << "  if m[" << e.measure_id << "]==-1 apply " << e.tag << " (";
        break;
      case ElementKind::Postselect: os << "  postselect ("; break;
    }
    for (std::size_t t = 0; t < e.targets.size(); ++t)
      os << (t ? "," : "") << e.targets[t];
    os << ")\n";
  }
  os << "readout: X on qubit " << readout_qubit << " after fc layer\n";
  return os.str();
}

CircuitDescription build_exact_circuit(int N, int d, int readout_index) {
  if (d < 1) throw std::invalid_argument("depth must be >= 1");
  int m = N;
  for (int k = 0; k < d; ++k) {
    if (m % 3 != 0) throw std::invalid_argument("N must equal m*3^d");
    m /= 3;
  }
  if (m < 3) throw std::invalid_argument("final layer needs >= 3 qubits");

  CircuitDescription c;
  c.num_qubits = N;
  c.depth = d;
  const Matrix cz = cz_matrix();
  const Matrix tof = xbasis_toffoli();
  const Matrix condz = pauli_z_matrix();

  std::vector<int> chain(N);
  for (int i = 0; i < N; ++i) chain[i] = i;

  int mid = 0;
  for (int unit = 0; unit < d; ++unit) {
    const int L = static_cast<int>(chain.size());
    const int M = L / 3;
    auto at = [&](int pos) { return chain[((pos % L) + L) % L]; };
    for (int i = 0; i < L; ++i)
      c.elements.push_back({ElementKind::Unitary, {at(i), at(i + 1)}, cz,
                            qsim::Basis::X, -1, -1, +1, "fine-cz"});
    for (int j = 0; j < M; ++j)
      c.elements.push_back({ElementKind::Unitary,
                            {at(3 * j + 1), at(3 * (j + 1 == M ? 0 : j + 1) + 1)},
                            cz, qsim::Basis::X, -1, -1, +1, "coarse-cz"});
    for (int j = 0; j < M; ++j)
      c.elements.push_back({ElementKind::Unitary,
                            {at(3 * j), at(3 * j + 1), at(3 * j + 2)}, tof,
                            qsim::Basis::X, -1, -1, +1, "toffoli"});
    // measure the two non-middle qubits of each block
    std::vector<int> slot_of_pos(L, -1);
    for (int j = 0; j < M; ++j)
      for (int off : {0, 2}) {
        const int pos = 3 * j + off;
        slot_of_pos[pos] = mid;
        c.elements.push_back({ElementKind::Measure, {at(pos)}, Matrix(),
                              qsim::Basis::X, mid, -1, +1, "pool-measure"});
        ++mid;
      }
    // conditional Z on each survivor, fired by the measured qubits two
    // sites away (positions 3j-1 and 3j+3 on the ring)
    for (int j = 0; j < M; ++j) {
      const int s = 3 * j + 1;
      for (int cpos : {s - 2, s + 2}) {
        const int cp = ((cpos % L) + L) % L;
        c.elements.push_back({ElementKind::CondUnitary, {at(s)}, condz,
                              qsim::Basis::X, slot_of_pos[cp], at(cp), +1,
                              "pool-cz"});
      }
    }
    c.unit_end.push_back(c.elements.size());
    std::vector<int> next;
    next.reserve(M);
    for (int j = 0; j < M; ++j) next.push_back(chain[3 * j + 1]);
    chain.swap(next);
  }

  // fully connected layer: CZ around the final ring, then the X readout
  const int fm = static_cast<int>(chain.size());
  for (int i = 0; i < fm; ++i)
    c.elements.push_back({ElementKind::Unitary,
                          {chain[i], chain[(i + 1) % fm]}, cz, qsim::Basis::X,
                          -1, -1, +1, "fc-cz"});
  c.final_survivors = chain;
  const int ridx = readout_index < 0 ? fm / 2 : readout_index;
  if (ridx < 0 || ridx >= fm) throw std::invalid_argument("bad readout index");
  c.readout_qubit = chain[ridx];
  c.num_measurements = mid;
  return c;
}

}  // namespace qcnn

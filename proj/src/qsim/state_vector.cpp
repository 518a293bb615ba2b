#include "qsim/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "qsim/simd.hpp"

namespace qsim {

double unitarity_defect(const Matrix& u) {
  const Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

double KrausChannel::completeness_defect() const {
  if (kraus_ops.empty()) return 1.0;
  const auto n = kraus_ops.front().rows();
  Matrix s = Matrix::Zero(n, n);
  for (const auto& k : kraus_ops) s += k.adjoint() * k;
  return (s - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

void KrausChannel::check_complete(double tol) const {
  if (completeness_defect() > tol)
    throw std::invalid_argument("Kraus set is not trace preserving");
}

StateVector::StateVector(int num_qubits, std::uint64_t basis_state)
    : nq_(num_qubits), amps_(std::size_t{1} << num_qubits, cx{0.0}) {
  amps_[basis_state] = 1.0;
}

StateVector StateVector::all_plus(int num_qubits) {
  StateVector s(num_qubits);
  const double a = std::pow(2.0, -0.5 * num_qubits);
  std::fill(s.amps_.begin(), s.amps_.end(), cx{a});
  return s;
}

StateVector StateVector::random(int num_qubits, std::mt19937_64& rng) {
  StateVector s(num_qubits);
  std::normal_distribution<double> g(0.0, 1.0);
  for (auto& a : s.amps_) a = cx{g(rng), g(rng)};
  s.normalize();
  return s;
}

double StateVector::norm_sq() const {
  return simd::active().nrm2sq(amps_.data(), amps_.size());
}

void StateVector::normalize() {
  const double n = std::sqrt(norm_sq());
  if (n == 0.0) throw std::runtime_error("cannot normalize zero vector");
  simd::active().scal(cx{1.0 / n}, amps_.data(), amps_.size());
}

cx StateVector::inner(const StateVector& other) const {
  return simd::active().dotc(amps_.data(), other.amps_.data(), amps_.size());
}

void StateVector::apply_matrix(const std::vector<int>& targets, const Matrix& m) {
  const int k = static_cast<int>(targets.size());
  if (k == 0) return;
  for (int t : targets)
    if (t < 0 || t >= nq_) throw std::out_of_range("gate target out of range");
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (targets[i] == targets[j])
        throw std::invalid_argument("duplicate gate target");
  if (m.rows() != (1 << k) || m.cols() != (1 << k))
    throw std::invalid_argument("gate matrix dimension mismatch");

  if (k == 1) {
    const cx u[4] = {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
    simd::active().apply1q(amps_.data(), amps_.size(), targets[0], u);
    return;
  }
  // kernel wants ascending targets; permute the matrix accordingly
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return targets[a] < targets[b]; });
  std::vector<int> sorted(k);
  for (int i = 0; i < k; ++i) sorted[i] = targets[order[i]];
  const int dim = 1 << k;
  std::vector<cx> u(std::size_t(dim) * dim);
  auto remap = [&](int g) {
    int r = 0;
    for (int i = 0; i < k; ++i)
      if (g & (1 << i)) r |= 1 << order[i];
    return r;
  };
  std::vector<int> map(dim);
  for (int g = 0; g < dim; ++g) map[g] = remap(g);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      u[std::size_t(r) * dim + c] = m(map[r], map[c]);
  simd::active().applykq(amps_.data(), amps_.size(), sorted.data(), k, u.data());
}

void StateVector::apply(const UnitaryGate& g, bool check) {
  if (check) check_unitary(g.matrix);
  apply_matrix(g.targets, g.matrix);
}

void StateVector::apply_cz(int a, int b) {
  apply_phase_flip((std::uint64_t{1} << a) | (std::uint64_t{1} << b));
}

void StateVector::apply_phase_flip(std::uint64_t qubit_mask) {
  simd::active().phase_flip_all_set(amps_.data(), amps_.size(), qubit_mask);
}

void StateVector::apply_pauli(std::uint64_t xmask, std::uint64_t zmask, cx coeff) {
  // i-power bookkeeping for Y letters: P = coeff * i^{#Y} * X^x Z^z
  const int ny = std::popcount(xmask & zmask);
  cx c = coeff;
  switch (ny & 3) {
    case 1: c *= cx{0, 1}; break;
    case 2: c = -c; break;
    case 3: c *= cx{0, -1}; break;
    default: break;
  }
  std::vector<cx> out(amps_.size(), cx{0.0});
  simd::active().term_accum(out.data(), amps_.data(), amps_.size(), xmask,
                            zmask, c);
  amps_.swap(out);
}

namespace {
const Matrix& hadamard() {
  static const Matrix h = [] {
    Matrix m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
  }();
  return h;
}
}  // namespace

MeasureResult measure_qubit(StateVector& psi, int qubit, Basis basis,
                            std::mt19937_64& rng) {
  if (basis == Basis::X) psi.apply_matrix({qubit}, hadamard());
  // probability of bit = 0 (outcome +1)
  const std::size_t bit = std::size_t{1} << qubit;
  double p0 = 0.0;
  const auto& a = psi.amps();
  for (std::size_t base = 0; base < a.size(); base += 2 * bit)
    p0 += simd::active().nrm2sq(a.data() + base, bit);
  p0 = std::min(1.0, std::max(0.0, p0));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int outcome = (u(rng) < p0) ? +1 : -1;
  const double p = (outcome == +1) ? p0 : 1.0 - p0;
  // collapse
  auto& amps = psi.amps();
  const double scale = (p > 0.0) ? 1.0 / std::sqrt(p) : 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const bool hit = ((i & bit) == 0) == (outcome == +1);
    amps[i] = hit ? amps[i] * scale : cx{0.0};
  }
  if (basis == Basis::X) psi.apply_matrix({qubit}, hadamard());
  return {outcome, p};
}

double postselect_qubit(StateVector& psi, int qubit, Basis basis, int outcome,
                        double zero_tol) {
  if (basis == Basis::X) psi.apply_matrix({qubit}, hadamard());
  const std::size_t bit = std::size_t{1} << qubit;
  auto& amps = psi.amps();
  double p = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i)
    if (((i & bit) == 0) == (outcome == +1)) p += std::norm(amps[i]);
  if (p < zero_tol)
    throw std::runtime_error("postselected branch has ~zero probability");
  const double scale = 1.0 / std::sqrt(p);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const bool hit = ((i & bit) == 0) == (outcome == +1);
    amps[i] = hit ? amps[i] * scale : cx{0.0};
  }
  if (basis == Basis::X) psi.apply_matrix({qubit}, hadamard());
  return p;
}

StateVector remove_qubit(const StateVector& psi, int qubit, int bit) {
  StateVector out(psi.num_qubits() - 1);
  auto& dst = out.amps();
  const auto& src = psi.amps();
  const std::size_t low = (std::size_t{1} << qubit) - 1;
  for (std::size_t j = 0; j < dst.size(); ++j) {
    const std::size_t i = ((j & ~low) << 1) | (std::size_t(bit) << qubit) | (j & low);
    dst[j] = src[i];
  }
  return out;
}

}  // namespace qsim

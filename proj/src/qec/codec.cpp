#include "qec/codec.hpp"

#include <Eigen/SVD>

namespace qec {

using qsim::StateVector;

namespace {
const qsim::GellMannBasis& basis8() {
  return qsim::cached_gell_mann_basis(8);
}

// single-qubit Pauli transfer matrix of a channel (first row is (1,0,0,0)
// for trace-preserving maps; column 0 carries the affine offset)
Eigen::Matrix4d transfer_matrix(const qsim::OneQubitChannel& ch) {
  const qsim::BlochAffineMap m = qsim::process_tomography_1q(ch);
  Eigen::Matrix4d t = Eigen::Matrix4d::Zero();
  t(0, 0) = 1.0;
  t.block<3, 1>(1, 0) = m.c;
  t.block<3, 3>(1, 1) = m.M;
  return t;
}

// apply a Pauli-transfer map on one qubit of a small density matrix
void apply_transfer(DensityMatrix& rho, int qubit, const Eigen::Matrix4d& t) {
  static const Matrix sig[4] = {
      Matrix::Identity(2, 2), (Matrix(2, 2) << 0, 1, 1, 0).finished(),
      (Matrix(2, 2) << 0, cx(0, -1), cx(0, 1), 0).finished(),
      (Matrix(2, 2) << 1, 0, 0, -1).finished()};
  const std::size_t d = rho.dim();
  const std::size_t bit = std::size_t{1} << qubit;
  // components R_j = tr_q(sigma_j rho) / 2 live on the remaining qubits but
  // are easiest to handle as full-size matrices with the q indices contracted
  // R_j[rr, cc] = 1/2 sum_{a,b} sigma_j[b, a] rho[(rr,a),(cc,b)]
  std::vector<Matrix> comp(4, Matrix::Zero(d / 2, d / 2));
  for (int j = 0; j < 4; ++j) {
    for (std::size_t rr = 0; rr < d / 2; ++rr)
      for (std::size_t cc = 0; cc < d / 2; ++cc) {
        cx acc = 0.0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            const std::size_t r =
                ((rr >> qubit) << (qubit + 1)) | (std::size_t(a) << qubit) |
                (rr & (bit - 1));
            const std::size_t c =
                ((cc >> qubit) << (qubit + 1)) | (std::size_t(b) << qubit) |
                (cc & (bit - 1));
            acc += sig[j](b, a) * rho.at(r, c);
          }
        comp[j](rr, cc) = 0.5 * acc;
      }
  }
  // rebuild: rho' = sum_i sigma_i (x) sum_j t(i,j) R_j
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) rho.at(r, c) = 0.0;
  for (int i = 0; i < 4; ++i) {
    Matrix ri = Matrix::Zero(d / 2, d / 2);
    for (int j = 0; j < 4; ++j)
      if (t(i, j) != 0.0) ri += t(i, j) * comp[j];
    for (std::size_t rr = 0; rr < d / 2; ++rr)
      for (std::size_t cc = 0; cc < d / 2; ++cc)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            const std::size_t r =
                ((rr >> qubit) << (qubit + 1)) | (std::size_t(a) << qubit) |
                (rr & (bit - 1));
            const std::size_t c =
                ((cc >> qubit) << (qubit + 1)) | (std::size_t(b) << qubit) |
                (cc & (bit - 1));
            rho.at(r, c) += sig[i](a, b) * ri(rr, cc);
          }
  }
}

}  // namespace

void EncoderDecoder::validate() const {
  if (u1.size() != 63 || u2.size() != 63)
    throw std::invalid_argument("encoder/decoder needs 63+63 coefficients");
}

Matrix EncoderDecoder::u1_matrix() const {
  return qsim::unitary_from_params(basis8(), u1);
}

Matrix EncoderDecoder::u2_matrix() const {
  return qsim::unitary_from_params(basis8(), u2);
}

StateVector encode(const StateVector& logical, const EncoderDecoder& ed) {
  ed.validate();
  if (logical.num_qubits() != 1)
    throw std::invalid_argument("logical input must be one qubit");
  StateVector psi(9);
  // place the logical amplitude on qubit 4 (the middle of the middle block)
  psi.amps()[0] = logical[0];
  psi.amps()[std::size_t{1} << 4] = logical[1];
  const Matrix u1d = ed.u1_matrix().adjoint();
  const Matrix u2d = ed.u2_matrix().adjoint();
  psi.apply_matrix({1, 4, 7}, u2d);
  for (int b = 0; b < 3; ++b)
    psi.apply_matrix({3 * b, 3 * b + 1, 3 * b + 2}, u1d);
  return psi;
}

DensityMatrix decode(const DensityMatrix& rho9, const EncoderDecoder& ed) {
  ed.validate();
  DensityMatrix rho = rho9;
  const Matrix u1 = ed.u1_matrix();
  for (int b = 0; b < 3; ++b)
    rho.apply_matrix({3 * b, 3 * b + 1, 3 * b + 2}, u1);
  DensityMatrix mid = qsim::partial_trace(rho, {1, 4, 7});
  mid.apply_matrix({0, 1, 2}, ed.u2_matrix());
  return qsim::partial_trace(mid, {1});
}

std::vector<StateVector> pauli_eigenstates() {
  std::vector<StateVector> v;
  const double s = 1.0 / std::sqrt(2.0);
  auto mk = [&](cx a0, cx a1) {
    StateVector psi(1);
    psi.amps()[0] = a0;
    psi.amps()[1] = a1;
    return psi;
  };
  v.push_back(mk(s, s));             // +x
  v.push_back(mk(s, -s));            // -x
  v.push_back(mk(s, cx(0, 1) * s));  // +y
  v.push_back(mk(s, cx(0, -1) * s)); // -y
  v.push_back(mk(1, 0));             // +z
  v.push_back(mk(0, 1));             // -z
  return v;
}

double fidelity_fq(const EncoderDecoder& ed, const ErrorModel& em,
                   std::vector<double>* overlaps) {
  em.validate();
  double acc = 0.0;
  if (overlaps) overlaps->clear();
  for (const auto& psi : pauli_eigenstates()) {
    DensityMatrix rho = DensityMatrix::from_pure(encode(psi, ed));
    apply_noise(rho, em);
    const DensityMatrix out = decode(rho, ed);
    const double f = out.overlap(psi);
    if (overlaps) overlaps->push_back(f);
    acc += f;
  }
  return acc / 6.0;
}

qsim::OneQubitChannel effective_first_layer_channel(
    const qsim::ParamVector& u1, const ErrorModel& em, int block) {
  if (u1.size() != 63) throw std::invalid_argument("u1 needs 63 coefficients");
  const Matrix u = qsim::unitary_from_params(basis8(), u1);
  return [u, em, block](const DensityMatrix& rho1) {
    DensityMatrix rho(3);
    // |0><0| (x) rho (x) |0><0| on (bit0, bit1, bit2) with data at bit 1
    for (auto& v : rho.flat()) v = 0.0;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        rho.at(std::size_t(r) << 1, std::size_t(c) << 1) = rho1.at(r, c);
    rho.apply_matrix({0, 1, 2}, u.adjoint());
    apply_block_noise(rho, em, block);
    rho.apply_matrix({0, 1, 2}, u);
    return qsim::partial_trace(rho, {1});
  };
}

double cost_c1(const qsim::ParamVector& u1, const ErrorModel& em) {
  double acc = 0.0;
  for (int b = 0; b < 3; ++b) {
    const auto ch = effective_first_layer_channel(u1, em, b);
    const qsim::BlochAffineMap m = qsim::process_tomography_1q(ch);
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(m.M);
    const auto s = svd.singularValues();  // sorted descending
    double q[3];
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      q[i] = std::max(0.0, 0.25 * (1.0 + s(i) - s(j) - s(k)));
    }
    acc += q[0] * q[0] + q[1] + q[2];
  }
  return acc / 3.0;
}

Stage2Objective::Stage2Objective(const qsim::ParamVector& u1,
                                 const ErrorModel& em) {
  for (int b = 0; b < 3; ++b)
    t_[b] = transfer_matrix(effective_first_layer_channel(u1, em, b));
}

double Stage2Objective::operator()(const qsim::ParamVector& u2) const {
  const Matrix u = qsim::unitary_from_params(basis8(), u2);
  auto composite = [&](const DensityMatrix& rho1) {
    DensityMatrix rho(3);
    for (auto& v : rho.flat()) v = 0.0;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        rho.at(std::size_t(r) << 1, std::size_t(c) << 1) = rho1.at(r, c);
    rho.apply_matrix({0, 1, 2}, u.adjoint());
    for (int b = 0; b < 3; ++b) apply_transfer(rho, b, t_[b]);
    rho.apply_matrix({0, 1, 2}, u);
    return qsim::partial_trace(rho, {1});
  };
  const qsim::BlochAffineMap m = qsim::process_tomography_1q(composite);
  return 0.5 - m.M.trace() / 6.0;  // 1 - f_q
}

double fidelity_fq_fast(const EncoderDecoder& ed, const ErrorModel& em) {
  ed.validate();
  em.validate();
  const Stage2Objective obj(ed.u1, em);
  return 1.0 - obj(ed.u2);
}

}  // namespace qec

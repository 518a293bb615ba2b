#include "spt/haldane.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

namespace spt {

using qsim::cx;
using qsim::StateVector;

Matrix spin1_sx() {
  const double s = 1.0 / std::sqrt(2.0);
  return (Matrix(3, 3) << 0, s, 0, s, 0, s, 0, s, 0).finished();
}

Matrix spin1_sy() {
  const cx i{0, 1};
  const double s = 1.0 / std::sqrt(2.0);
  return (Matrix(3, 3) << 0, -i * s, 0, i * s, 0, -i * s, 0, i * s, 0).finished();
}

Matrix spin1_sz() {
  return (Matrix(3, 3) << 1, 0, 0, 0, 0, 0, 0, 0, -1).finished();
}

Matrix spin1_rx() { return (cx{0, 1} * M_PI * spin1_sx()).exp(); }
Matrix spin1_ry() { return (cx{0, 1} * M_PI * spin1_sy()).exp(); }

Matrix spin1_cartesian_basis() {
  // Columns |x>, |y>, |z> in the S^z basis (m = +1, 0, -1), fixed by
  // R_nu |mu> = (-1)^(delta_{mu nu}+1) |mu> with a real-positive phase pin.
  const Matrix rx = spin1_rx(), ry = spin1_ry();
  Matrix out(3, 3);
  // simultaneous eigenvectors: (rx eig, ry eig) = x:(+,-) y:(-,+) z:(-,-)
  const double want[3][2] = {{1, -1}, {-1, 1}, {-1, -1}};
  Eigen::ComplexEigenSolver<Matrix> es(rx + 2.0 * ry);
  for (int col = 0; col < 3; ++col) {
    bool found = false;
    for (int i = 0; i < 3 && !found; ++i) {
      Eigen::Vector3cd v = es.eigenvectors().col(i);
      const cx ex = v.dot(rx * v);  // v normalized, dot conjugates left arg
      const cx ey = v.dot(ry * v);
      if (std::abs(ex - cx{want[col][0]}) < 1e-9 &&
          std::abs(ey - cx{want[col][1]}) < 1e-9) {
        // phase pin: largest-magnitude component real positive
        int big = 0;
        for (int j = 1; j < 3; ++j)
          if (std::abs(v(j)) > std::abs(v(big))) big = j;
        v *= std::abs(v(big)) / v(big);
        out.col(col) = v;
        found = true;
      }
    }
    if (!found) throw std::logic_error("cartesian spin-1 basis not resolved");
  }
  return out;
}

SparseHamiltonian build_haldane_hamiltonian(const HaldaneParams& p) {
  if (p.N < 2) throw std::invalid_argument("Haldane chain needs N >= 2");
  SparseHamiltonian h(p.N, 3);
  const Matrix sx = spin1_sx(), sy = spin1_sy(), sz = spin1_sz();
  // bond operator S_j . S_{j+1} as a 9x9 block, site j least significant
  Matrix bond = Matrix::Zero(9, 9);
  auto kron = [](const Matrix& hi, const Matrix& lo) {
    Matrix r(hi.rows() * lo.rows(), hi.cols() * lo.cols());
    for (Eigen::Index i = 0; i < hi.rows(); ++i)
      for (Eigen::Index j = 0; j < hi.cols(); ++j)
        r.block(i * lo.rows(), j * lo.cols(), lo.rows(), lo.cols()) =
            hi(i, j) * lo;
    return r;
  };
  bond = kron(sx, sx) + kron(sy, sy) + kron(sz, sz);
  for (int j = 0; j + 1 < p.N; ++j)
    h.add_local({j, j + 1}, p.J * bond);
  const Matrix sz2 = sz * sz;
  for (int j = 0; j < p.N; ++j) h.add_local({j}, p.omega * sz2);
  return h;
}

StateVector spin1_embed(const std::vector<cx>& spin1_state, int N) {
  std::size_t dim3 = 1;
  for (int i = 0; i < N; ++i) dim3 *= 3;
  if (spin1_state.size() != dim3)
    throw std::invalid_argument("spin-1 state dimension mismatch");

  // rotate to the Cartesian basis: psi_mu[cfg] = <mu-config|psi>
  const Matrix cart = spin1_cartesian_basis();  // columns |x>,|y>,|z>
  std::vector<cx> cur(spin1_state), nxt(dim3);
  std::size_t stride = 1;
  for (int s = 0; s < N; ++s) {
    std::fill(nxt.begin(), nxt.end(), cx{0.0});
    for (std::size_t i = 0; i < dim3; ++i) {
      const int d = int((i / stride) % 3);
      const std::size_t base = i - std::size_t(d) * stride;
      cx acc = 0.0;
      for (int mcol = 0; mcol < 3; ++mcol)
        acc += std::conj(cart(mcol, d)) * cur[base + std::size_t(mcol) * stride];
      nxt[i] = acc;
    }
    cur.swap(nxt);
    stride *= 3;
  }

  // X-basis image per site: x -> (+,-), y -> -(-,+), z -> -i(-,-)
  // pair (2s, 2s+1), |-> = bit 1 in the X-basis register
  StateVector out(2 * N);
  std::fill(out.amps().begin(), out.amps().end(), cx{0.0});
  static const cx mu_phase[3] = {cx{1, 0}, cx{-1, 0}, cx{0, -1}};
  static const std::uint64_t mu_bits[3] = {0b10, 0b01, 0b11};
  for (std::size_t i = 0; i < dim3; ++i) {
    if (cur[i] == cx{0.0}) continue;
    std::uint64_t idx = 0;
    cx phase{1.0};
    std::size_t rest = i;
    for (int s = 0; s < N; ++s) {
      const int mu = int(rest % 3);
      rest /= 3;
      idx |= mu_bits[mu] << (2 * s);
      phase *= mu_phase[mu];
    }
    out.amps()[idx] = phase * cur[i];
  }
  // transform from X-basis representation to the computational basis
  const double r = 1.0 / std::sqrt(2.0);
  const Matrix h = (Matrix(2, 2) << r, r, r, -r).finished();
  for (int q = 0; q < 2 * N; ++q) out.apply_matrix({q}, h);
  return out;
}

}  // namespace spt

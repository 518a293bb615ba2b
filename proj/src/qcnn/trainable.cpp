#include "qcnn/trainable.hpp"

#include <stdexcept>

namespace qcnn {

using qsim::cx;
using qsim::Matrix;
using qsim::StateVector;

namespace {

const qsim::GellMannBasis& basis_for(int dim) {
  return qsim::cached_gell_mann_basis(dim);
}

// coherent pooling gate: |+><+| (x) I + |-><-| (x) V, control = gate bit 0
Matrix controlled_on_minus(const Matrix& v) {
  const int dim = static_cast<int>(v.rows());
  Matrix big(2 * dim, 2 * dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      const cx u = v(r, c);
      const double d0 = (r == c) ? 0.5 : 0.0;
      big(2 * r, 2 * c) = d0 + 0.5 * u;
      big(2 * r, 2 * c + 1) = d0 - 0.5 * u;
      big(2 * r + 1, 2 * c) = d0 - 0.5 * u;
      big(2 * r + 1, 2 * c + 1) = d0 + 0.5 * u;
    }
  return big;
}

}  // namespace

TrainableCircuit::TrainableCircuit(const QcnnHyperparams& h) : hp_(h) {
  const int n = h.n;
  if (n < 2) throw std::invalid_argument("block size must be >= 2");
  int m = h.N;
  for (int k = 0; k < h.d; ++k) {
    if (m % n != 0) throw std::invalid_argument("N must be divisible by n^d");
    m /= n;
  }
  if (m < 1) throw std::invalid_argument("empty final register");

  auto add_segment = [&](const std::string& name, int dim, int stage) {
    const int len = dim * dim - 1;
    segments_.push_back({name, total_params_, len, dim, stage});
    total_params_ += len;
    return static_cast<int>(segments_.size()) - 1;
  };

  // C1 pair factors within a window, paper order for n=3 (applied right to
  // left): U23 U24 U13 U14 U12 U34. General n: all pairs lexicographic.
  std::vector<std::pair<int, int>> pairs;
  if (n == 3) {
    pairs = {{1, 2}, {1, 3}, {0, 2}, {0, 3}, {0, 1}, {2, 3}};
  } else {
    for (int a = 0; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b) pairs.push_back({a, b});
  }

  std::vector<int> chain(h.N);
  for (int i = 0; i < h.N; ++i) chain[i] = i;
  int stage_idx = 0;

  for (int depth = 0; depth < h.d; ++depth) {
    const int L = static_cast<int>(chain.size());
    const std::string ds = "d" + std::to_string(depth + 1) + ".";
    // C1
    std::vector<int> c1_seg(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p)
      c1_seg[p] = add_segment(
          ds + "c1.u" + std::to_string(pairs[p].first + 1) +
              std::to_string(pairs[p].second + 1),
          4, stage_idx);
    TrainableStage c1;
    for (int start = 0; start < L; start += n) {
      // apply the product right to left: last listed factor acts first
      for (int p = static_cast<int>(pairs.size()) - 1; p >= 0; --p) {
        const int a = start + pairs[p].first, b = start + pairs[p].second;
        if (a >= L || b >= L) continue;  // open-boundary truncation
        c1.gates.push_back({{chain[a], chain[b]}, c1_seg[p], -1});
      }
    }
    stages_.push_back(std::move(c1));
    ++stage_idx;

    // C2 .. C_{n+1}: n-qubit unitaries, layer k shifted by k
    const int ndim = 1 << n;
    for (int k = 0; k < n; ++k) {
      const int seg = add_segment(ds + "c" + std::to_string(k + 2), ndim,
                                  stage_idx);
      TrainableStage st;
      for (int start = k; start + n <= L; start += n) {
        std::vector<int> t;
        for (int q = 0; q < n; ++q) t.push_back(chain[start + q]);
        st.gates.push_back({t, seg, -1});
      }
      stages_.push_back(std::move(st));
      ++stage_idx;
    }

    // pooling: keep the middle of each block, one conditioned single-qubit
    // unitary per measured qubit, shared across blocks
    const int mid_off = n / 2;
    std::vector<int> pool_seg;
    for (int j = 0; j < n - 1; ++j)
      pool_seg.push_back(add_segment(ds + "pool.v" + std::to_string(j + 1), 2,
                                     stage_idx));
    TrainableStage pool;
    std::vector<int> next;
    for (int b = 0; b + n <= L; b += n) {
      const int survivor = chain[b + mid_off];
      int vj = 0;
      for (int q = 0; q < n; ++q) {
        if (q == mid_off) continue;
        pool.gates.push_back({{survivor}, pool_seg[vj], chain[b + q]});
        ++vj;
      }
      next.push_back(survivor);
    }
    stages_.push_back(std::move(pool));
    ++stage_idx;
    chain.swap(next);
  }

  // fully connected unitary on the survivors
  const int fdim = 1 << static_cast<int>(chain.size());
  if (chain.size() > 12)
    throw std::invalid_argument("final register too large");
  add_segment("fc", fdim, stage_idx);
  TrainableStage fc;
  fc.gates.push_back({chain, static_cast<int>(segments_.size()) - 1, -1});
  stages_.push_back(std::move(fc));

  final_register_ = chain;
  readout_bit_ = static_cast<int>(chain.size()) / 2;
  readout_qubit_ = chain[readout_bit_];

  coord_segment_.resize(total_params_);
  for (std::size_t s = 0; s < segments_.size(); ++s)
    for (int i = 0; i < segments_[s].length; ++i)
      coord_segment_[segments_[s].offset + i] = static_cast<int>(s);
}

int TrainableCircuit::segment_of_param(int coord) const {
  return coord_segment_.at(coord);
}

int TrainableCircuit::stage_of_param(int coord) const {
  return segments_[coord_segment_.at(coord)].stage;
}

std::vector<Matrix> TrainableCircuit::segment_matrices(
    const qsim::ParamVector& p) const {
  if (static_cast<int>(p.size()) != total_params_)
    throw std::invalid_argument("parameter vector length mismatch");
  std::vector<Matrix> out(segments_.size());
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    const auto& seg = segments_[s];
    qsim::ParamVector c(p.begin() + seg.offset,
                        p.begin() + seg.offset + seg.length);
    out[s] = qsim::unitary_from_params(basis_for(seg.dim), c);
  }
  return out;
}

void TrainableCircuit::apply_stage(StateVector& psi, int stage,
                                   const std::vector<Matrix>& segmat) const {
  for (const auto& g : stages_[stage].gates) {
    if (g.control < 0) {
      psi.apply_matrix(g.targets, segmat[g.segment]);
    } else {
      std::vector<int> t;
      t.push_back(g.control);
      for (int q : g.targets) t.push_back(q);
      psi.apply_matrix(t, controlled_on_minus(segmat[g.segment]));
    }
  }
}

Matrix TrainableCircuit::reduced_final(const StateVector& psi) const {
  const int m = static_cast<int>(final_register_.size());
  const std::size_t dm = std::size_t{1} << m;
  const int nq = psi.num_qubits();
  Matrix rho = Matrix::Zero(dm, dm);
  // gather amplitudes by (register pattern, environment pattern)
  std::uint64_t reg_mask = 0;
  for (int q : final_register_) reg_mask |= std::uint64_t{1} << q;
  const std::size_t denv = (std::size_t{1} << nq) >> m;
  std::vector<std::vector<cx>> by_reg(dm, std::vector<cx>(denv));
  std::vector<int> env_sites;
  for (int q = 0; q < nq; ++q)
    if (!(reg_mask >> q & 1)) env_sites.push_back(q);
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    std::size_t r = 0, e = 0;
    for (int k = 0; k < m; ++k)
      r |= ((i >> final_register_[k]) & 1) << k;
    for (std::size_t k = 0; k < env_sites.size(); ++k)
      e |= ((i >> env_sites[k]) & 1) << k;
    by_reg[r][e] = psi[i];
  }
  for (std::size_t r = 0; r < dm; ++r)
    for (std::size_t c = 0; c <= r; ++c) {
      cx acc = 0.0;
      for (std::size_t e = 0; e < denv; ++e)
        acc += by_reg[r][e] * std::conj(by_reg[c][e]);
      rho(r, c) = acc;
      rho(c, r) = std::conj(acc);
    }
  return rho;
}

Matrix TrainableCircuit::readout_operator(const Matrix& fc) const {
  Matrix masked = fc;
  for (Eigen::Index r = 0; r < masked.rows(); ++r)
    if ((r >> readout_bit_) & 1) masked.row(r).setZero();
  return masked.adjoint() * masked;
}

double TrainableCircuit::readout_from_reduced(const Matrix& rho,
                                              const Matrix& fc) const {
  return (readout_operator(fc) * rho).trace().real();
}

double TrainableCircuit::classify(const StateVector& input,
                                  const qsim::ParamVector& p) const {
  if (input.num_qubits() != hp_.N)
    throw std::invalid_argument("input qubit count mismatch");
  const auto segmat = segment_matrices(p);
  StateVector psi = input;
  for (int s = 0; s + 1 < num_stages(); ++s) apply_stage(psi, s, segmat);
  const Matrix rho = reduced_final(psi);
  return readout_from_reduced(rho, segmat.back());
}

}  // namespace qcnn

#include "qsim/density_matrix.hpp"

#include <Eigen/Eigenvalues>

#include "qsim/simd.hpp"

namespace qsim {

DensityMatrix::DensityMatrix(int num_qubits)
    : nq_(num_qubits),
      flat_(std::size_t{1} << (2 * num_qubits), cx{0.0}) {
  flat_[0] = 1.0;
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  DensityMatrix rho(psi.num_qubits());
  const std::size_t d = rho.dim();
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      rho.flat_[(r << rho.nq_) | c] = psi[r] * std::conj(psi[c]);
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  DensityMatrix rho(num_qubits);
  const std::size_t d = rho.dim();
  std::fill(rho.flat_.begin(), rho.flat_.end(), cx{0.0});
  for (std::size_t r = 0; r < d; ++r) rho.flat_[(r << num_qubits) | r] = 1.0 / double(d);
  return rho;
}

double DensityMatrix::trace_real() const {
  double t = 0.0;
  const std::size_t d = dim();
  for (std::size_t r = 0; r < d; ++r) t += flat_[(r << nq_) | r].real();
  return t;
}

double DensityMatrix::hermiticity_defect() const {
  double m = 0.0;
  const std::size_t d = dim();
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = r; c < d; ++c)
      m = std::max(m, std::abs(flat_[(r << nq_) | c] -
                               std::conj(flat_[(c << nq_) | r])));
  return m;
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(to_eigen(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix DensityMatrix::to_eigen() const {
  const std::size_t d = dim();
  Matrix m(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m(r, c) = flat_[(r << nq_) | c];
  return m;
}

void DensityMatrix::apply_matrix(const std::vector<int>& targets, const Matrix& m) {
  // rho -> M rho M' : left-multiply on row bits, right-multiply on column
  // bits with conj(M); both reuse the flat-array state-vector kernels.
  std::vector<int> row_targets(targets);
  for (auto& t : row_targets) {
    if (t < 0 || t >= nq_) throw std::out_of_range("gate target out of range");
    t += nq_;
  }
  const int k = static_cast<int>(targets.size());
  const int dim_g = 1 << k;
  auto apply_flat = [&](const std::vector<int>& tg, const Matrix& mm) {
    // same permutation logic as StateVector::apply_matrix, on flat_
    std::vector<int> order(k);
    for (int i = 0; i < k; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return tg[a] < tg[b]; });
    std::vector<int> sorted(k);
    for (int i = 0; i < k; ++i) sorted[i] = tg[order[i]];
    std::vector<cx> u(std::size_t(dim_g) * dim_g);
    std::vector<int> map(dim_g);
    for (int g = 0; g < dim_g; ++g) {
      int r = 0;
      for (int i = 0; i < k; ++i)
        if (g & (1 << i)) r |= 1 << order[i];
      map[g] = r;
    }
    for (int r = 0; r < dim_g; ++r)
      for (int c = 0; c < dim_g; ++c)
        u[std::size_t(r) * dim_g + c] = mm(map[r], map[c]);
    if (k == 1) {
      simd::active().apply1q(flat_.data(), flat_.size(), sorted[0], u.data());
    } else {
      simd::active().applykq(flat_.data(), flat_.size(), sorted.data(), k,
                             u.data());
    }
  };
  apply_flat(row_targets, m);
  apply_flat(targets, m.conjugate());
}

void DensityMatrix::apply(const UnitaryGate& g, bool check) {
  if (check) check_unitary(g.matrix);
  apply_matrix(g.targets, g.matrix);
}

void DensityMatrix::apply_channel(const KrausChannel& ch, bool check_completeness) {
  if (check_completeness) ch.check_complete();
  std::vector<cx> acc(flat_.size(), cx{0.0});
  std::vector<cx> orig;
  orig.swap(flat_);
  for (const auto& kop : ch.kraus_ops) {
    flat_ = orig;
    apply_matrix(ch.targets, kop);
    simd::active().axpy(cx{1.0}, flat_.data(), acc.data(), acc.size());
  }
  flat_.swap(acc);
}

double DensityMatrix::overlap(const StateVector& psi) const {
  const std::size_t d = dim();
  cx v = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    cx row = 0.0;
    for (std::size_t c = 0; c < d; ++c) row += flat_[(r << nq_) | c] * psi[c];
    v += std::conj(psi[r]) * row;
  }
  return v.real();
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  if (keep.empty()) throw std::invalid_argument("empty keep set");
  std::vector<int> k(keep);
  std::sort(k.begin(), k.end());
  const int n = rho.num_qubits();
  const int m = static_cast<int>(k.size());
  std::uint64_t keep_mask = 0;
  for (int q : k) {
    if (q < 0 || q >= n) throw std::out_of_range("keep qubit out of range");
    keep_mask |= std::uint64_t{1} << q;
  }
  const std::uint64_t tr_mask = ~keep_mask & ((std::uint64_t{1} << n) - 1);
  DensityMatrix out(m);
  std::fill(out.flat().begin(), out.flat().end(), cx{0.0});

  auto expand = [&](std::uint64_t compact, std::uint64_t mask) {
    std::uint64_t r = 0;
    int b = 0;
    for (int q = 0; q < n; ++q)
      if (mask & (std::uint64_t{1} << q)) {
        if (compact & (std::uint64_t{1} << b)) r |= std::uint64_t{1} << q;
        ++b;
      }
    return r;
  };

  const std::size_t dk = std::size_t{1} << m;
  const std::size_t dt = std::size_t{1} << (n - m);
  for (std::size_t r = 0; r < dk; ++r) {
    const std::uint64_t re = expand(r, keep_mask);
    for (std::size_t c = 0; c < dk; ++c) {
      const std::uint64_t ce = expand(c, keep_mask);
      cx s = 0.0;
      for (std::size_t t = 0; t < dt; ++t) {
        const std::uint64_t te = expand(t, tr_mask);
        s += rho.at(re | te, ce | te);
      }
      out.at(r, c) = s;
    }
  }
  return out;
}

}  // namespace qsim

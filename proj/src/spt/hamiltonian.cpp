#include "spt/hamiltonian.hpp"

#include <random>
#include <stdexcept>

#include "qsim/simd.hpp"

namespace spt {

SparseHamiltonian::SparseHamiltonian(int num_sites, int local_dim)
    : num_sites_(num_sites), local_dim_(local_dim) {
  dim_ = 1;
  stride_.resize(num_sites + 1);
  for (int s = 0; s < num_sites; ++s) {
    stride_[s] = dim_;
    dim_ *= std::size_t(local_dim);
  }
  stride_[num_sites] = dim_;
}

void SparseHamiltonian::add_pauli(double coeff, std::uint64_t xmask,
                                  std::uint64_t zmask) {
  if (local_dim_ != 2) throw std::logic_error("Pauli terms need qubit sites");
  pauli_.push_back({coeff, xmask, zmask});
}

void SparseHamiltonian::add_local(std::vector<int> sites, Matrix op) {
  std::size_t d = 1;
  for (int s : sites) {
    if (s < 0 || s >= num_sites_) throw std::out_of_range("site out of range");
    d *= std::size_t(local_dim_);
  }
  if (op.rows() != Eigen::Index(d) || op.cols() != Eigen::Index(d))
    throw std::invalid_argument("local term dimension mismatch");
  local_.push_back({std::move(sites), std::move(op)});
}

void SparseHamiltonian::accumulate(const cx* in, cx* out) const {
  const auto& k = qsim::simd::active();
  for (const auto& t : pauli_)
    k.term_accum(out, in, dim_, t.xmask, t.zmask, cx{t.coeff, 0.0});

  for (const auto& t : local_) {
    const int ns = static_cast<int>(t.sites.size());
    int block = 1;
    for (int i = 0; i < ns; ++i) block *= local_dim_;
    // enumerate group bases: indices with digit 0 at every term site
    std::vector<std::size_t> offs(block);
    for (int g = 0; g < block; ++g) {
      std::size_t o = 0;
      int gg = g;
      for (int i = 0; i < ns; ++i) {
        o += std::size_t(gg % local_dim_) * stride_[t.sites[i]];
        gg /= local_dim_;
      }
      offs[g] = o;
    }
    std::vector<cx> vin(block);
    // iterate over all indices whose digits at term sites are zero
    const std::size_t total = dim_;
    for (std::size_t idx = 0; idx < total; ++idx) {
      bool is_base = true;
      for (int i = 0; i < ns; ++i) {
        const std::size_t d = (idx / stride_[t.sites[i]]) % local_dim_;
        if (d != 0) {
          is_base = false;
          break;
        }
      }
      if (!is_base) continue;
      const std::size_t base = idx;
      for (int g = 0; g < block; ++g) vin[g] = in[base + offs[g]];
      for (int r = 0; r < block; ++r) {
        cx acc = 0.0;
        for (int c = 0; c < block; ++c) acc += t.op(r, c) * vin[c];
        out[base + offs[r]] += acc;
      }
    }
  }
}

std::vector<cx> SparseHamiltonian::apply(const std::vector<cx>& in) const {
  std::vector<cx> out(dim_, cx{0.0});
  accumulate(in.data(), out.data());
  return out;
}

double SparseHamiltonian::hermiticity_defect(std::uint64_t seed, int trials) const {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::vector<cx> u(dim_), v(dim_);
    for (auto& a : u) a = cx{g(rng), g(rng)};
    for (auto& a : v) a = cx{g(rng), g(rng)};
    const auto hu = apply(u), hv = apply(v);
    const auto& k = qsim::simd::active();
    const cx a = k.dotc(u.data(), hv.data(), dim_);
    const cx b = k.dotc(v.data(), hu.data(), dim_);
    worst = std::max(worst, std::abs(a - std::conj(b)) /
                                std::max(1.0, std::abs(a)));
  }
  return worst;
}

Matrix SparseHamiltonian::dense() const {
  Matrix m = Matrix::Zero(dim_, dim_);
  std::vector<cx> e(dim_, cx{0.0}), col(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    e[j] = 1.0;
    std::fill(col.begin(), col.end(), cx{0.0});
    accumulate(e.data(), col.data());
    for (std::size_t i = 0; i < dim_; ++i) m(i, j) = col[i];
    e[j] = 0.0;
  }
  return m;
}

SparseHamiltonian build_cluster_hamiltonian(const ClusterHamiltonianParams& p) {
  if (p.N < 3) throw std::invalid_argument("cluster chain needs N >= 3");
  if (p.J <= 0) throw std::invalid_argument("J must be positive");
  SparseHamiltonian h(p.N, 2);
  auto bit = [](int i) { return std::uint64_t{1} << i; };
  for (int i = 0; i + 2 < p.N; ++i)
    h.add_pauli(-p.J, bit(i + 1), bit(i) | bit(i + 2));
  for (int i = 0; i < p.N; ++i) h.add_pauli(-p.h1, bit(i), 0);
  for (int i = 0; i + 1 < p.N; ++i) h.add_pauli(-p.h2, bit(i) | bit(i + 1), 0);
  return h;
}

std::uint64_t sublattice_mask(int N, int parity) {
  std::uint64_t m = 0;
  for (int i = parity & 1; i < N; i += 2) m |= std::uint64_t{1} << i;
  return m;
}

}  // namespace spt

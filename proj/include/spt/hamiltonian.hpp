#pragma once

#include <cstdint>
#include <vector>

#include "qsim/types.hpp"

namespace spt {

using qsim::cx;
using qsim::Matrix;

// One real-weighted Pauli string, masks per the project bit convention.
struct PauliTerm {
  double coeff;
  std::uint64_t xmask;
  std::uint64_t zmask;
};

// A few-site operator block on a chain with uniform local dimension.
struct LocalTerm {
  std::vector<int> sites;  // ascending
  Matrix op;               // prod(local_dim) square, row-major site order: sites[0] least significant
};

// Matrix-free Hermitian operator given by a term list. Supports qubit chains
// (Pauli terms) and qudit chains (local blocks), mixed freely.
class SparseHamiltonian {
 public:
  SparseHamiltonian(int num_sites, int local_dim);

  void add_pauli(double coeff, std::uint64_t xmask, std::uint64_t zmask);
  void add_local(std::vector<int> sites, Matrix op);

  int num_sites() const { return num_sites_; }
  int local_dim() const { return local_dim_; }
  std::size_t dimension() const { return dim_; }
  const std::vector<PauliTerm>& pauli_terms() const { return pauli_; }
  const std::vector<LocalTerm>& local_terms() const { return local_; }

  // out += H in  (out must be zeroed by the caller when starting fresh)
  void accumulate(const cx* in, cx* out) const;
  std::vector<cx> apply(const std::vector<cx>& in) const;

  // |<u|Hv> - conj(<v|Hu>)| on random vectors; ~0 for Hermitian terms.
  double hermiticity_defect(std::uint64_t seed = 1, int trials = 4) const;

  Matrix dense() const;  // tests / small oracles only

 private:
  int num_sites_;
  int local_dim_;
  std::size_t dim_;
  std::vector<PauliTerm> pauli_;
  std::vector<LocalTerm> local_;
  std::vector<std::size_t> stride_;  // local_dim^site
};

struct ClusterHamiltonianParams {
  double J = 1.0;
  double h1 = 0.0;
  double h2 = 0.0;
  int N = 3;
};

// H = -J sum Z X Z - h1 sum X - h2 sum X X, open boundary, N >= 3.
SparseHamiltonian build_cluster_hamiltonian(const ClusterHamiltonianParams& p);

// Symmetry generators: X on the even / odd sublattice (0-indexed sites).
std::uint64_t sublattice_mask(int N, int parity);

}  // namespace spt

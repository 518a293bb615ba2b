#pragma once

#include "qsim/state_vector.hpp"
#include "qsim/types.hpp"

namespace qsim {

// Row-major 2^n x 2^n complex matrix, flat storage. Row bits live at flat
// index positions n..2n-1, column bits at 0..n-1, so state-vector kernels
// apply directly to the flattened array.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(int num_qubits);  // |0...0><0...0|
  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int num_qubits);

  int num_qubits() const { return nq_; }
  std::size_t dim() const { return std::size_t{1} << nq_; }
  cx& at(std::size_t r, std::size_t c) { return flat_[(r << nq_) | c]; }
  const cx& at(std::size_t r, std::size_t c) const { return flat_[(r << nq_) | c]; }
  std::vector<cx>& flat() { return flat_; }
  const std::vector<cx>& flat() const { return flat_; }

  double trace_real() const;
  double hermiticity_defect() const;
  double min_eigenvalue() const;  // debug/test use; costs an eigensolve

  void apply(const UnitaryGate& g, bool check = false);   // rho -> U rho U'
  void apply_matrix(const std::vector<int>& targets, const Matrix& m);
  void apply_channel(const KrausChannel& ch, bool check_completeness = true);

  Matrix to_eigen() const;

  // <psi| rho |psi>
  double overlap(const StateVector& psi) const;

 private:
  int nq_ = 0;
  std::vector<cx> flat_;
};

// Reduced state on `keep` (ascending original qubit order becomes the new
// qubit order). Throws on empty keep set.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

}  // namespace qsim

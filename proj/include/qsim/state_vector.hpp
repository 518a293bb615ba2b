#pragma once

#include <random>

#include "qsim/types.hpp"

namespace qsim {

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int num_qubits, std::uint64_t basis_state = 0);

  static StateVector all_plus(int num_qubits);
  static StateVector random(int num_qubits, std::mt19937_64& rng);

  int num_qubits() const { return nq_; }
  std::size_t dim() const { return amps_.size(); }
  std::vector<cx>& amps() { return amps_; }
  const std::vector<cx>& amps() const { return amps_; }
  cx& operator[](std::size_t i) { return amps_[i]; }
  const cx& operator[](std::size_t i) const { return amps_[i]; }

  double norm_sq() const;
  void normalize();
  cx inner(const StateVector& other) const;  // <this|other>

  // In-place tensor contraction on the target bits only; never builds the
  // dense 2^n x 2^n operator. check=true validates unitarity first.
  void apply(const UnitaryGate& g, bool check = false);
  void apply_matrix(const std::vector<int>& targets, const Matrix& m);

  // Diagonal phase flip: amps[i] *= -1 when all mask qubits are 1 (CZ family).
  void apply_cz(int a, int b);
  void apply_phase_flip(std::uint64_t qubit_mask);

  // coeff * X^x Z^z Pauli action, |psi> -> c * P |psi> (Y via x&z bits + coeff)
  void apply_pauli(std::uint64_t xmask, std::uint64_t zmask, cx coeff);

 private:
  int nq_ = 0;
  std::vector<cx> amps_;
};

enum class Basis { Z, X };

struct MeasureResult {
  int outcome;         // +1 or -1
  double probability;  // of the sampled outcome
};

// Collapses psi in place; outcome sampled from rng.
MeasureResult measure_qubit(StateVector& psi, int qubit, Basis basis,
                            std::mt19937_64& rng);

// Projects onto the given outcome (+1/-1) and renormalizes; returns the
// branch probability. Throws if the branch probability is ~0.
double postselect_qubit(StateVector& psi, int qubit, Basis basis, int outcome,
                        double zero_tol = 1e-12);

// Removes a qubit known to be in the computational state |bit>.
StateVector remove_qubit(const StateVector& psi, int qubit, int bit);

}  // namespace qsim

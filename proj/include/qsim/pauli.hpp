#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "qsim/types.hpp"

namespace qsim {

class StateVector;
class DensityMatrix;

// coefficient * (tensor product of I/X/Y/Z letters).
// Site j holds X iff x bit j set, Z iff z bit j set, Y iff both.
struct PauliString {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  cx coefficient = 1.0;

  static PauliString identity() { return {}; }
  static PauliString from_letters(const std::string& letters, cx coeff = 1.0);

  char letter(int site) const;
  std::string letters(int num_sites) const;
  int weight() const;  // number of non-identity sites

  bool same_letters(const PauliString& o) const { return x == o.x && z == o.z; }

  PauliString operator*(const PauliString& o) const;

  // Dense matrix on num_qubits qubits (tests / small oracles only).
  Matrix dense(int num_qubits) const;
};

struct PauliKey {
  std::uint64_t x, z;
  bool operator==(const PauliKey& o) const { return x == o.x && z == o.z; }
};

struct PauliKeyHash {
  std::size_t operator()(const PauliKey& k) const {
    std::uint64_t h = k.x * 0x9e3779b97f4a7c15ull;
    h ^= k.z + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

// Weighted sum of Pauli strings, keyed by letter pattern.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(const PauliString& p) { add(p); }

  void add(const PauliString& p);
  void add(std::uint64_t x, std::uint64_t z, cx coeff);

  PauliSum operator+(const PauliSum& o) const;
  PauliSum operator*(const PauliSum& o) const;
  PauliSum& operator*=(cx scale);

  // Drops terms with |coeff| <= eps. With eps = 0 only exact zeros go.
  void simplify(double eps = 0.0);

  std::size_t size() const { return terms_.size(); }
  const std::unordered_map<PauliKey, cx, PauliKeyHash>& terms() const {
    return terms_;
  }

  // Sum of |coeff|; bounds any expectation value.
  double one_norm() const;
  double two_norm_sq() const;  // sum of |coeff|^2
  bool is_hermitian(double tol = 1e-12) const;

  // Canonically ordered (x,z)-sorted term list.
  std::vector<PauliString> sorted_terms() const;

  Matrix dense(int num_qubits) const;

 private:
  std::unordered_map<PauliKey, cx, PauliKeyHash> terms_;
};

double expectation(const StateVector& psi, const PauliSum& obs);
double expectation(const DensityMatrix& rho, const PauliSum& obs);
cx expectation_term(const StateVector& psi, const PauliString& p);
cx expectation_term(const DensityMatrix& rho, const PauliString& p);

}  // namespace qsim

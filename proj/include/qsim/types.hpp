#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qsim {

using cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Qubit 0 is the least-significant bit of the amplitude index, project-wide.

struct UnitaryGate {
  std::vector<int> targets;  // targets[0] = least-significant gate bit
  Matrix matrix;             // 2^k x 2^k

  UnitaryGate() = default;
  UnitaryGate(std::vector<int> t, Matrix m) : targets(std::move(t)), matrix(std::move(m)) {}
};

// ||U'U - I||_max
double unitarity_defect(const Matrix& u);

inline void check_unitary(const Matrix& u, double tol = 1e-10) {
  if (unitarity_defect(u) > tol) throw std::invalid_argument("matrix is not unitary");
}

struct KrausChannel {
  std::vector<int> targets;
  std::vector<Matrix> kraus_ops;

  // sum K'K = I within tol
  double completeness_defect() const;
  void check_complete(double tol = 1e-12) const;
};

}  // namespace qsim

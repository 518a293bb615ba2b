#pragma once

#include <string>
#include <vector>

#include "qsim/types.hpp"

namespace qsim {

inline constexpr int kParamOrderingVersion = 1;

// Generalized Gell-Mann generators, tr(L_i L_j) = 2 delta_ij, canonical
// order: symmetric off-diagonal (j<k lexicographic), antisymmetric
// off-diagonal, then diagonal. dim=2 reduces to Pauli X, Y, Z.
struct GellMannBasis {
  int dim = 0;
  std::vector<Matrix> generators;  // dim^2 - 1 entries
};

GellMannBasis gell_mann_basis(int dim);

// Process-wide cache keyed by dim (thread-safe).
const GellMannBasis& cached_gell_mann_basis(int dim);

using ParamVector = std::vector<double>;

// U = exp(-i sum_j c_j Lambda_j), via Hermitian eigendecomposition.
Matrix unitary_from_params(const GellMannBasis& basis, const ParamVector& c);

// Hermitian generator H = sum_j c_j Lambda_j.
Matrix hermitian_from_params(const GellMannBasis& basis, const ParamVector& c);

// JSON serialization: {"dim":a,"ordering_version":1,"coefficients":[...]}
std::string param_vector_to_json(int dim, const ParamVector& c);
ParamVector param_vector_from_json(const std::string& text, int expect_dim);

}  // namespace qsim

#include "qsim/gellmann.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include <nlohmann/json.hpp>

#include <list>
#include <mutex>

namespace qsim {

GellMannBasis gell_mann_basis(int dim) {
  if (dim < 2) throw std::invalid_argument("Gell-Mann basis needs dim >= 2");
  GellMannBasis b;
  b.dim = dim;
  b.generators.reserve(std::size_t(dim) * dim - 1);
  for (int j = 0; j < dim; ++j)
    for (int k = j + 1; k < dim; ++k) {
      Matrix m = Matrix::Zero(dim, dim);
      m(j, k) = 1.0;
      m(k, j) = 1.0;
      b.generators.push_back(std::move(m));
    }
  for (int j = 0; j < dim; ++j)
    for (int k = j + 1; k < dim; ++k) {
      Matrix m = Matrix::Zero(dim, dim);
      m(j, k) = cx{0.0, -1.0};
      m(k, j) = cx{0.0, 1.0};
      b.generators.push_back(std::move(m));
    }
  for (int l = 1; l < dim; ++l) {
    Matrix m = Matrix::Zero(dim, dim);
    const double s = std::sqrt(2.0 / (double(l) * (l + 1)));
    for (int i = 0; i < l; ++i) m(i, i) = s;
    m(l, l) = -double(l) * s;
    b.generators.push_back(std::move(m));
  }
  return b;
}

const GellMannBasis& cached_gell_mann_basis(int dim) {
  static std::mutex mu;
  static std::list<GellMannBasis> cache;
  std::lock_guard<std::mutex> lock(mu);
  for (const auto& b : cache)
    if (b.dim == dim) return b;
  cache.push_back(gell_mann_basis(dim));
  return cache.back();
}

Matrix hermitian_from_params(const GellMannBasis& basis, const ParamVector& c) {
  if (c.size() != basis.generators.size())
    throw std::invalid_argument("parameter count != dim^2 - 1");
  // direct assembly in the canonical ordering; equivalent to sum c_j L_j but
  // O(dim^2) instead of a dense-matrix sum per generator
  const int d = basis.dim;
  Matrix h = Matrix::Zero(d, d);
  std::size_t idx = 0;
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) h(j, k) += c[idx++];
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) h(j, k) += cx{0.0, -c[idx++]};
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) h(k, j) = std::conj(h(j, k));
  for (int l = 1; l < d; ++l) {
    const double s = std::sqrt(2.0 / (double(l) * (l + 1)));
    const double v = c[idx++];
    for (int i = 0; i < l; ++i) h(i, i) += v * s;
    h(l, l) -= v * double(l) * s;
  }
  return h;
}

Matrix unitary_from_params(const GellMannBasis& basis, const ParamVector& c) {
  const Matrix h = hermitian_from_params(basis, c);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const auto& v = es.eigenvectors();
  const auto& w = es.eigenvalues();
  Matrix phases = Matrix::Zero(basis.dim, basis.dim);
  for (int i = 0; i < basis.dim; ++i)
    phases(i, i) = std::exp(cx{0.0, -w(i)});
  return v * phases * v.adjoint();
}

std::string param_vector_to_json(int dim, const ParamVector& c) {
  nlohmann::json j;
  j["dim"] = dim;
  j["ordering_version"] = kParamOrderingVersion;
  j["coefficients"] = c;
  return j.dump();
}

ParamVector param_vector_from_json(const std::string& text, int expect_dim) {
  const auto j = nlohmann::json::parse(text);
  if (j.at("ordering_version").get<int>() != kParamOrderingVersion)
    throw std::runtime_error("unsupported parameter ordering version");
  const int dim = j.at("dim").get<int>();
  if (expect_dim > 0 && dim != expect_dim)
    throw std::runtime_error("parameter vector dim mismatch");
  ParamVector c = j.at("coefficients").get<ParamVector>();
  if (c.size() != std::size_t(dim) * dim - 1)
    throw std::runtime_error("parameter vector length mismatch");
  return c;
}

}  // namespace qsim

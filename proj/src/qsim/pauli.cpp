#include "qsim/pauli.hpp"

#include <algorithm>
#include <bit>

#include "qsim/density_matrix.hpp"
#include "qsim/simd.hpp"
#include "qsim/state_vector.hpp"

namespace qsim {

namespace {
inline cx ipow(int p) {
  switch (p & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}
}  // namespace

PauliString PauliString::from_letters(const std::string& letters, cx coeff) {
  PauliString p;
  p.coefficient = coeff;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    switch (letters[i]) {
      case 'I': break;
      case 'X': p.x |= std::uint64_t{1} << i; break;
      case 'Z': p.z |= std::uint64_t{1} << i; break;
      case 'Y':
        p.x |= std::uint64_t{1} << i;
        p.z |= std::uint64_t{1} << i;
        break;
      default: throw std::invalid_argument("bad Pauli letter");
    }
  }
  return p;
}

char PauliString::letter(int site) const {
  const bool bx = x >> site & 1, bz = z >> site & 1;
  return bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
}

std::string PauliString::letters(int num_sites) const {
  std::string s(num_sites, 'I');
  for (int i = 0; i < num_sites; ++i) s[i] = letter(i);
  return s;
}

int PauliString::weight() const { return std::popcount(x | z); }

PauliString PauliString::operator*(const PauliString& o) const {
  // letters = i^{#Y} X^x Z^z per string; composing the X^xZ^z monomials
  // costs (-1)^{|z1 & x2|}, and the Y-count difference restores i powers.
  PauliString r;
  r.x = x ^ o.x;
  r.z = z ^ o.z;
  const int ny1 = std::popcount(x & z);
  const int ny2 = std::popcount(o.x & o.z);
  const int ny12 = std::popcount(r.x & r.z);
  int p = (ny1 + ny2 - ny12) & 3;
  cx phase = ipow(p);
  if (std::popcount(z & o.x) & 1) phase = -phase;
  r.coefficient = coefficient * o.coefficient * phase;
  return r;
}

Matrix PauliString::dense(int num_qubits) const {
  static const Matrix I = Matrix::Identity(2, 2);
  static const Matrix X = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  static const Matrix Y = (Matrix(2, 2) << 0, cx(0, -1), cx(0, 1), 0).finished();
  static const Matrix Z = (Matrix(2, 2) << 1, 0, 0, -1).finished();
  Matrix m = Matrix::Identity(1, 1);
  // qubit 0 = least significant: build as kron(letter_{n-1}, ..., letter_0)
  for (int q = 0; q < num_qubits; ++q) {
    const Matrix* f = &I;
    switch (letter(q)) {
      case 'X': f = &X; break;
      case 'Y': f = &Y; break;
      case 'Z': f = &Z; break;
      default: break;
    }
    Matrix next(m.rows() * 2, m.cols() * 2);
    next.block(0, 0, m.rows(), m.cols()) = (*f)(0, 0) * m;
    next.block(0, m.cols(), m.rows(), m.cols()) = (*f)(0, 1) * m;
    next.block(m.rows(), 0, m.rows(), m.cols()) = (*f)(1, 0) * m;
    next.block(m.rows(), m.cols(), m.rows(), m.cols()) = (*f)(1, 1) * m;
    m = std::move(next);
  }
  return coefficient * m;
}

void PauliSum::add(const PauliString& p) { add(p.x, p.z, p.coefficient); }

void PauliSum::add(std::uint64_t x, std::uint64_t z, cx coeff) {
  auto [it, fresh] = terms_.try_emplace(PauliKey{x, z}, coeff);
  if (!fresh) {
    it->second += coeff;
    if (it->second == cx{0.0}) terms_.erase(it);
  }
}

PauliSum PauliSum::operator+(const PauliSum& o) const {
  PauliSum r(*this);
  for (const auto& [k, c] : o.terms_) r.add(k.x, k.z, c);
  return r;
}

PauliSum PauliSum::operator*(const PauliSum& o) const {
  PauliSum r;
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) {
      PauliString a{k1.x, k1.z, c1}, b{k2.x, k2.z, c2};
      r.add(a * b);
    }
  return r;
}

PauliSum& PauliSum::operator*=(cx scale) {
  for (auto& [k, c] : terms_) c *= scale;
  return *this;
}

void PauliSum::simplify(double eps) {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = (std::abs(it->second) <= eps) ? terms_.erase(it) : std::next(it);
}

double PauliSum::one_norm() const {
  double s = 0.0;
  for (const auto& [k, c] : terms_) s += std::abs(c);
  return s;
}

double PauliSum::two_norm_sq() const {
  double s = 0.0;
  for (const auto& [k, c] : terms_) s += std::norm(c);
  return s;
}

bool PauliSum::is_hermitian(double tol) const {
  // term basis is Hermitian (I/X/Y/Z products with Y letters), so Hermiticity
  // is coefficient realness
  for (const auto& [k, c] : terms_)
    if (std::abs(c.imag()) > tol) return false;
  return true;
}

std::vector<PauliString> PauliSum::sorted_terms() const {
  std::vector<PauliString> v;
  v.reserve(terms_.size());
  for (const auto& [k, c] : terms_) v.push_back({k.x, k.z, c});
  std::sort(v.begin(), v.end(), [](const PauliString& a, const PauliString& b) {
    return a.x != b.x ? a.x < b.x : a.z < b.z;
  });
  return v;
}

Matrix PauliSum::dense(int num_qubits) const {
  const std::size_t d = std::size_t{1} << num_qubits;
  Matrix m = Matrix::Zero(d, d);
  for (const auto& [k, c] : terms_) m += PauliString{k.x, k.z, c}.dense(num_qubits);
  return m;
}

cx expectation_term(const StateVector& psi, const PauliString& p) {
  const std::uint64_t lim = (psi.num_qubits() < 64)
                                ? (std::uint64_t{1} << psi.num_qubits())
                                : ~std::uint64_t{0};
  if ((p.x | p.z) >= lim && (p.x | p.z) != 0)
    throw std::invalid_argument("observable qubit-count mismatch");
  const cx raw = simd::active().term_expect(psi.amps().data(),
                                            psi.amps().size(), p.x, p.z);
  return p.coefficient * ipow(std::popcount(p.x & p.z)) * raw;
}

cx expectation_term(const DensityMatrix& rho, const PauliString& p) {
  // tr(rho P) without forming the dense observable
  const int n = rho.num_qubits();
  if ((p.x | p.z) >> n)
    throw std::invalid_argument("observable qubit-count mismatch");
  const std::size_t d = rho.dim();
  cx s = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    cx v = rho.at(j, j ^ p.x);
    if (std::popcount(j & p.z) & 1) v = -v;
    s += v;
  }
  return p.coefficient * ipow(std::popcount(p.x & p.z)) * s;
}

double expectation(const StateVector& psi, const PauliSum& obs) {
  cx s = 0.0;
  for (const auto& [k, c] : obs.terms())
    s += expectation_term(psi, PauliString{k.x, k.z, c});
  return s.real();
}

double expectation(const DensityMatrix& rho, const PauliSum& obs) {
  cx s = 0.0;
  for (const auto& [k, c] : obs.terms())
    s += expectation_term(rho, PauliString{k.x, k.z, c});
  return s.real();
}

}  // namespace qsim

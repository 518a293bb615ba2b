#include "spt/cluster.hpp"

#include <bit>
#include <stdexcept>

namespace spt {

using qsim::cx;
using qsim::PauliString;
using qsim::PauliSum;
using qsim::StateVector;

StateVector cluster_state(int N) {
  StateVector psi = StateVector::all_plus(N);
  for (int i = 0; i < N; ++i) psi.apply_cz(i, (i + 1) % N);
  return psi;
}

PauliString sop(int a, int b, int N) {
  if (a < 0 || b >= N || b - a < 2 || ((b - a) & 1))
    throw std::invalid_argument("sop needs 0 <= a < b < N with b-a even >= 2");
  PauliString p;
  p.z = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
  for (int i = a + 1; i < b; i += 2) p.x |= std::uint64_t{1} << i;
  return p;
}

cx cluster_expectation(const PauliString& p, int N) {
  // Conjugate P through the ring CZ layer, then evaluate on |+>^N.
  // CZ(a,b): X_a -> X_a Z_b and X_b -> X_b Z_a; composing via full Pauli
  // products keeps the phase bookkeeping exact.
  PauliString cur = p;
  for (int i = 0; i < N; ++i) {
    const int j = (i + 1) % N;
    const bool xi = cur.x >> i & 1, xj = cur.x >> j & 1;
    PauliString deco = PauliString::identity();
    if (xi) deco.z ^= std::uint64_t{1} << j;
    if (xj) deco.z ^= std::uint64_t{1} << i;
    if (deco.z) {
      cur = cur * deco;
      if (xi && xj) cur.coefficient = -cur.coefficient;
    }
  }
  // <+^N| X^x Z^z |+^N> = 0 unless z-part vanishes
  if (cur.z) return cx{0.0};
  return cur.coefficient;
}

double cluster_expectation(const PauliSum& sum, int N) {
  cx s = 0.0;
  for (const auto& [k, c] : sum.terms())
    s += cluster_expectation(PauliString{k.x, k.z, c}, N);
  return s.real();
}

}  // namespace spt

#pragma once

#include <unordered_map>

#include "qsim/pauli.hpp"

namespace qcnn {

// Exact dyadic complex number (re + i im) / 2^k. The convolution-pooling
// conjugation rules only ever produce such coefficients, which makes the
// Pauli-basis isometry invariant a hard equality rather than a tolerance.
struct DyadicComplex {
  long long re = 0;
  long long im = 0;
  int k = 0;

  static DyadicComplex one() { return {1, 0, 0}; }
  static DyadicComplex half() { return {1, 0, 1}; }

  void normalize();
  DyadicComplex operator*(const DyadicComplex& o) const;
  DyadicComplex operator+(const DyadicComplex& o) const;
  DyadicComplex operator-() const { return {-re, -im, k}; }
  bool is_zero() const { return re == 0 && im == 0; }
  qsim::cx to_cx() const;
  double abs2() const;
  bool operator==(const DyadicComplex& o) const;
};

// PauliSum with exact dyadic coefficients, keyed by letter pattern.
class DyadicPauliSum {
 public:
  void add(std::uint64_t x, std::uint64_t z, DyadicComplex c);
  const std::unordered_map<qsim::PauliKey, DyadicComplex, qsim::PauliKeyHash>&
  terms() const {
    return terms_;
  }
  std::size_t size() const { return terms_.size(); }

  qsim::PauliSum to_pauli_sum() const;
  // Exact sum of |coeff|^2 as a dyadic rational (num / 2^k).
  std::pair<long long, int> two_norm_sq_exact() const;
  double one_norm() const;

 private:
  std::unordered_map<qsim::PauliKey, DyadicComplex, qsim::PauliKeyHash> terms_;
};

// Relabeling between a coarse ring of `coarse_size` sites and the fine ring
// it came from; coarse site i sits at fine position 3 i + 1.
struct LayerGeometry {
  int coarse_size = 0;
  int fine_size = 0;  // 3 * coarse_size
  int fine_site(int i) const { return 3 * i + 1; }
};

// Heisenberg images of single coarse-site Paulis through one
// convolution-pooling unit (ring indices on the fine chain):
//   X_i -> X_{s-2} X_s X_{s+2}
//   Z_i -> (Z_s + Z_{s-2} X_{s-1} + X_{s+1} Z_{s+2}
//           - Z_{s-2} X_{s-1} Z_s X_{s+1} Z_{s+2}) / 2
// with s = 3i+1. Y follows from Y = i X Z.
DyadicPauliSum conjugate_x(int i, const LayerGeometry& g);
DyadicPauliSum conjugate_z(int i, const LayerGeometry& g);

// Pull a whole operator on the coarse ring back one unit.
DyadicPauliSum conjugate_through_unit(const DyadicPauliSum& op,
                                      const LayerGeometry& g);

struct MultiscaleSop {
  int num_sites = 0;
  int depth = 0;
  DyadicPauliSum exact;
  std::size_t term_count = 0;
  double dropped_weight = 0.0;  // from truncation, 0 in exact mode

  qsim::PauliSum to_pauli_sum() const { return exact.to_pauli_sum(); }
};

// O = (U_cp^(d) ... U_cp^(1))' Z_{r-1} X_r Z_{r+1} (U_cp^(d) ... U_cp^(1))
// on N = m 3^d sites; readout_index picks r on the final ring (default
// middle). truncate_threshold drops small terms after each layer (0 = exact).
MultiscaleSop multiscale_sop(int N, int d, int readout_index = -1,
                             double truncate_threshold = 0.0);

// Deferred pooling-measurement observable: X on the measured fine position
// `c` of unit `u` (1-based), pulled back to the physical chain.
DyadicPauliSum flag_observable(int N, int d, int unit, int c);

// Drops terms with |coeff| < threshold; returns the dropped weight sum|c|.
double truncate(DyadicPauliSum& sum, double threshold);

}  // namespace qcnn

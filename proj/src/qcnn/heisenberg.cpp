#include "qcnn/heisenberg.hpp"

#include <cmath>
#include <stdexcept>

namespace qcnn {

using qsim::PauliKey;
using qsim::PauliString;

void DyadicComplex::normalize() {
  if (re == 0 && im == 0) {
    k = 0;
    return;
  }
  while (k > 0 && (re % 2 == 0) && (im % 2 == 0)) {
    re /= 2;
    im /= 2;
    --k;
  }
}

DyadicComplex DyadicComplex::operator*(const DyadicComplex& o) const {
  DyadicComplex r{re * o.re - im * o.im, re * o.im + im * o.re, k + o.k};
  r.normalize();
  return r;
}

DyadicComplex DyadicComplex::operator+(const DyadicComplex& o) const {
  const int kk = std::max(k, o.k);
  const long long s1 = 1ll << (kk - k), s2 = 1ll << (kk - o.k);
  DyadicComplex r{re * s1 + o.re * s2, im * s1 + o.im * s2, kk};
  r.normalize();
  return r;
}

qsim::cx DyadicComplex::to_cx() const {
  const double d = std::ldexp(1.0, -k);
  return {re * d, im * d};
}

double DyadicComplex::abs2() const {
  const double d = std::ldexp(1.0, -k);
  return (double(re) * re + double(im) * im) * d * d;
}

bool DyadicComplex::operator==(const DyadicComplex& o) const {
  DyadicComplex a = *this, b = o;
  a.normalize();
  b.normalize();
  return a.re == b.re && a.im == b.im && a.k == b.k;
}

void DyadicPauliSum::add(std::uint64_t x, std::uint64_t z, DyadicComplex c) {
  c.normalize();
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(PauliKey{x, z}, c);
  if (!fresh) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

qsim::PauliSum DyadicPauliSum::to_pauli_sum() const {
  qsim::PauliSum s;
  for (const auto& [key, c] : terms_) s.add(key.x, key.z, c.to_cx());
  return s;
}

std::pair<long long, int> DyadicPauliSum::two_norm_sq_exact() const {
  // sum (re^2 + im^2) / 4^k with a running common denominator
  long long num = 0;
  int kk = 0;
  for (const auto& [key, c] : terms_) {
    long long n = c.re * c.re + c.im * c.im;
    int k2 = 2 * c.k;
    while (kk < k2) {
      num <<= 1;
      ++kk;
    }
    num += n << (kk - k2);
  }
  while (kk > 0 && num % 2 == 0) {
    num /= 2;
    --kk;
  }
  return {num, kk};
}

double DyadicPauliSum::one_norm() const {
  double s = 0.0;
  for (const auto& [key, c] : terms_) s += std::sqrt(c.abs2());
  return s;
}

namespace {

struct RuleTerm {
  std::uint64_t x, z;
  DyadicComplex c;
};

// multiply exact term (x1,z1,c1) by (x2,z2,c2); the Pauli phase from letter
// products is one of {1,i,-1,-i} and folds into the dyadic coefficient
void mul_into(std::uint64_t& x1, std::uint64_t& z1, DyadicComplex& c1,
              std::uint64_t x2, std::uint64_t z2, const DyadicComplex& c2) {
  const PauliString pa{x1, z1, 1.0}, pb{x2, z2, 1.0};
  const PauliString prod = pa * pb;
  const qsim::cx ph = prod.coefficient;
  DyadicComplex phase;
  if (std::abs(ph - qsim::cx{1, 0}) < 0.5) phase = {1, 0, 0};
  else if (std::abs(ph - qsim::cx{-1, 0}) < 0.5) phase = {-1, 0, 0};
  else if (std::abs(ph - qsim::cx{0, 1}) < 0.5) phase = {0, 1, 0};
  else phase = {0, -1, 0};
  x1 = prod.x;
  z1 = prod.z;
  c1 = c1 * c2 * phase;
}

std::uint64_t rbit(int pos, int L) {
  return std::uint64_t{1} << (((pos % L) + L) % L);
}

std::vector<RuleTerm> x_rule(int i, const LayerGeometry& g) {
  const int s = g.fine_site(i), L = g.fine_size;
  return {{rbit(s - 2, L) | rbit(s, L) | rbit(s + 2, L), 0,
           DyadicComplex::one()}};
}

std::vector<RuleTerm> z_rule(int i, const LayerGeometry& g) {
  const int s = g.fine_site(i), L = g.fine_size;
  const std::uint64_t zs = rbit(s, L);
  const std::uint64_t zl = rbit(s - 2, L), xl = rbit(s - 1, L);
  const std::uint64_t xr = rbit(s + 1, L), zr = rbit(s + 2, L);
  return {
      {0, zs, DyadicComplex::half()},
      {xl, zl, DyadicComplex::half()},
      {xr, zr, DyadicComplex::half()},
      {xl | xr, zl | zs | zr, {-1, 0, 1}},
  };
}

std::vector<RuleTerm> y_rule(int i, const LayerGeometry& g) {
  // Y = i X Z
  const auto xs = x_rule(i, g);
  const auto zs = z_rule(i, g);
  std::vector<RuleTerm> out;
  out.reserve(zs.size());
  for (const auto& zt : zs) {
    RuleTerm t = xs[0];
    t.c = t.c * DyadicComplex{0, 1, 0};
    mul_into(t.x, t.z, t.c, zt.x, zt.z, zt.c);
    out.push_back(t);
  }
  return out;
}

}  // namespace

DyadicPauliSum conjugate_x(int i, const LayerGeometry& g) {
  DyadicPauliSum s;
  for (const auto& t : x_rule(i, g)) s.add(t.x, t.z, t.c);
  return s;
}

DyadicPauliSum conjugate_z(int i, const LayerGeometry& g) {
  DyadicPauliSum s;
  for (const auto& t : z_rule(i, g)) s.add(t.x, t.z, t.c);
  return s;
}

DyadicPauliSum conjugate_through_unit(const DyadicPauliSum& op,
                                      const LayerGeometry& g) {
  DyadicPauliSum out;
  for (const auto& [key, coeff] : op.terms()) {
    // expand site by site; running product over the fine ring
    std::vector<RuleTerm> acc = {{0, 0, coeff}};
    for (int i = 0; i < g.coarse_size; ++i) {
      const bool bx = key.x >> i & 1, bz = key.z >> i & 1;
      if (!bx && !bz) continue;
      const std::vector<RuleTerm> img =
          bx ? (bz ? y_rule(i, g) : x_rule(i, g)) : z_rule(i, g);
      std::vector<RuleTerm> next;
      next.reserve(acc.size() * img.size());
      for (const auto& a : acc)
        for (const auto& t : img) {
          RuleTerm r = a;
          mul_into(r.x, r.z, r.c, t.x, t.z, t.c);
          next.push_back(r);
        }
      acc.swap(next);
    }
    for (const auto& t : acc) out.add(t.x, t.z, t.c);
  }
  return out;
}

double truncate(DyadicPauliSum& sum, double threshold) {
  if (threshold < 0) throw std::invalid_argument("threshold must be >= 0");
  if (threshold == 0) return 0.0;
  DyadicPauliSum kept;
  double dropped = 0.0;
  for (const auto& [key, c] : sum.terms()) {
    if (std::sqrt(c.abs2()) < threshold)
      dropped += std::sqrt(c.abs2());
    else
      kept.add(key.x, key.z, c);
  }
  sum = std::move(kept);
  return dropped;
}

MultiscaleSop multiscale_sop(int N, int d, int readout_index,
                             double truncate_threshold) {
  int m = N;
  for (int k = 0; k < d; ++k) {
    if (m % 3 != 0) throw std::invalid_argument("N must equal m*3^d");
    m /= 3;
  }
  if (m < 3) throw std::invalid_argument("final layer needs >= 3 qubits");
  const int r = readout_index < 0 ? m / 2 : readout_index;
  if (r < 0 || r >= m) throw std::invalid_argument("bad readout index");

  MultiscaleSop res;
  res.num_sites = N;
  res.depth = d;
  DyadicPauliSum op;
  // Z_{r-1} X_r Z_{r+1} on the final ring
  op.add(rbit(r, m), rbit(r - 1, m) | rbit(r + 1, m), DyadicComplex::one());
  int coarse = m;
  for (int layer = d; layer >= 1; --layer) {
    const LayerGeometry g{coarse, 3 * coarse};
    op = conjugate_through_unit(op, g);
    if (truncate_threshold > 0)
      res.dropped_weight += truncate(op, truncate_threshold);
    coarse *= 3;
  }
  res.exact = std::move(op);
  res.term_count = res.exact.size();
  return res;
}

DyadicPauliSum flag_observable(int N, int d, int unit, int c) {
  if (unit < 1 || unit > d) throw std::invalid_argument("bad unit index");
  int chain = N;
  for (int k = 1; k < unit; ++k) chain /= 3;
  if (c < 0 || c >= chain || (c % 3) == 1)
    throw std::invalid_argument("flag site must be a measured position");
  // X_c through its own unit picks up the fine-bond decorations
  DyadicPauliSum op;
  op.add(rbit(c, chain), rbit(c - 1, chain) | rbit(c + 1, chain),
         DyadicComplex::one());
  int coarse = chain;
  for (int layer = unit - 1; layer >= 1; --layer) {
    const LayerGeometry g{coarse, 3 * coarse};
    op = conjugate_through_unit(op, g);
    coarse *= 3;
  }
  return op;
}

}  // namespace qcnn

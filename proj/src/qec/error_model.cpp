#include "qec/error_model.hpp"

#include <stdexcept>

namespace qec {

void ErrorModel::validate() const {
  if (px < 0 || py < 0 || pz < 0 || pxx < 0)
    throw std::invalid_argument("negative error probability");
  if (px + py + pz > 1.0)
    throw std::invalid_argument("px + py + pz exceeds 1");
  if (pxx > 1.0) throw std::invalid_argument("pxx exceeds 1");
  for (auto [a, b] : pairs)
    if (a < 0 || b < 0 || a > 8 || b > 8 || a == b)
      throw std::invalid_argument("bad correlated pair");
}

ErrorModel ErrorModel::scaled_to(double total) const {
  const double t0 = total_rate();
  if (t0 <= 0) throw std::invalid_argument("cannot scale a zero model");
  ErrorModel out = *this;
  const double s = total / t0;
  out.px *= s;
  out.py *= s;
  out.pz *= s;
  out.pxx *= s;
  return out;
}

qsim::KrausChannel depolarize_channel(int qubit, double px, double py,
                                      double pz) {
  static const Matrix X = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  static const Matrix Y =
      (Matrix(2, 2) << 0, cx(0, -1), cx(0, 1), 0).finished();
  static const Matrix Z = (Matrix(2, 2) << 1, 0, 0, -1).finished();
  qsim::KrausChannel ch;
  ch.targets = {qubit};
  ch.kraus_ops.push_back(std::sqrt(1.0 - px - py - pz) *
                         Matrix::Identity(2, 2));
  if (px > 0) ch.kraus_ops.push_back(std::sqrt(px) * X);
  if (py > 0) ch.kraus_ops.push_back(std::sqrt(py) * Y);
  if (pz > 0) ch.kraus_ops.push_back(std::sqrt(pz) * Z);
  return ch;
}

qsim::KrausChannel xx_channel(int a, int b, double pxx) {
  qsim::KrausChannel ch;
  ch.targets = {a, b};
  Matrix xx = Matrix::Zero(4, 4);
  xx(0, 3) = xx(3, 0) = xx(1, 2) = xx(2, 1) = 1.0;
  ch.kraus_ops.push_back(std::sqrt(1.0 - pxx) * Matrix::Identity(4, 4));
  if (pxx > 0) ch.kraus_ops.push_back(std::sqrt(pxx) * xx);
  return ch;
}

void apply_noise(DensityMatrix& rho, const ErrorModel& em) {
  em.validate();
  for (int q = 0; q < rho.num_qubits(); ++q)
    rho.apply_channel(depolarize_channel(q, em.px, em.py, em.pz), false);
  if (em.pxx > 0)
    for (auto [a, b] : em.pairs)
      rho.apply_channel(xx_channel(a, b, em.pxx), false);
}

void apply_block_noise(DensityMatrix& rho3, const ErrorModel& em, int block) {
  const int base = 3 * block;
  for (int q = 0; q < 3; ++q)
    rho3.apply_channel(depolarize_channel(q, em.px, em.py, em.pz), false);
  if (em.pxx > 0)
    for (auto [a, b] : em.pairs) {
      if (a >= base && a < base + 3 && b >= base && b < base + 3)
        rho3.apply_channel(xx_channel(a - base, b - base, em.pxx), false);
    }
}

}  // namespace qec

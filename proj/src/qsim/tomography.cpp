#include "qsim/tomography.hpp"

namespace qsim {

Eigen::Vector3d bloch_vector(const DensityMatrix& rho) {
  if (rho.num_qubits() != 1)
    throw std::invalid_argument("bloch_vector wants a single qubit");
  Eigen::Vector3d r;
  r.x() = 2.0 * rho.at(0, 1).real();
  r.y() = -2.0 * rho.at(0, 1).imag();
  r.z() = (rho.at(0, 0) - rho.at(1, 1)).real();
  return r;
}

DensityMatrix dm_from_bloch(const Eigen::Vector3d& r) {
  DensityMatrix rho(1);
  rho.at(0, 0) = 0.5 * (1.0 + r.z());
  rho.at(1, 1) = 0.5 * (1.0 - r.z());
  rho.at(0, 1) = 0.5 * cx{r.x(), -r.y()};
  rho.at(1, 0) = 0.5 * cx{r.x(), r.y()};
  return rho;
}

BlochAffineMap process_tomography_1q(const OneQubitChannel& channel) {
  auto image = [&](const Eigen::Vector3d& r) {
    const DensityMatrix out = channel(dm_from_bloch(r));
    if (std::abs(out.trace_real() - 1.0) > 1e-8 ||
        out.hermiticity_defect() > 1e-8)
      throw std::runtime_error("channel is not trace preserving");
    return bloch_vector(out);
  };
  BlochAffineMap m;
  m.c = image(Eigen::Vector3d::Zero());
  m.M.col(0) = image(Eigen::Vector3d::UnitX()) - m.c;
  m.M.col(1) = image(Eigen::Vector3d::UnitY()) - m.c;
  m.M.col(2) = image(Eigen::Vector3d::UnitZ()) - m.c;
  return m;
}

}  // namespace qsim

#pragma once

#include <functional>

#include "qsim/density_matrix.hpp"

namespace qsim {

// Single-qubit channel as an affine map on Bloch vectors, r -> M r + c.
struct BlochAffineMap {
  Eigen::Matrix3d M = Eigen::Matrix3d::Identity();
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
};

Eigen::Vector3d bloch_vector(const DensityMatrix& rho1q);
DensityMatrix dm_from_bloch(const Eigen::Vector3d& r);

using OneQubitChannel = std::function<DensityMatrix(const DensityMatrix&)>;

// Exact process tomography from the channel action on the three Pauli
// eigenbasis inputs plus the maximally mixed input. Throws if the channel is
// not trace preserving (deviation > 1e-8).
BlochAffineMap process_tomography_1q(const OneQubitChannel& channel);

}  // namespace qsim

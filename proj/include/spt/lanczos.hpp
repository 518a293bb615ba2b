#pragma once

#include <functional>
#include <optional>

#include "qsim/state_vector.hpp"
#include "spt/hamiltonian.hpp"

namespace spt {

struct LanczosOptions {
  double tol = 1e-10;          // residual tolerance, relative to max(1,|E|)
  int restart_depth = 40;      // Krylov block size per restart
  int max_restarts = 200;
  std::uint64_t seed = 1;
  // Optional projector applied to the start vector and after each restart
  // (e.g. symmetric-sector projection). Must commute with H.
  std::function<void(std::vector<cx>&)> project;
};

struct GroundStateResult {
  double energy = 0.0;
  std::vector<cx> vector;
  double residual = 0.0;
  double gap = 0.0;        // first excited Ritz value minus ground Ritz value
  bool degenerate = false; // gap < 10 * tol
  int iterations = 0;
  bool converged = false;
};

// Lanczos with full reorthogonalization and thick restarts on the Ritz
// vector. Deterministic given opts.seed. Throws on non-convergence.
GroundStateResult ground_state(const SparseHamiltonian& h,
                               const LanczosOptions& opts = {});

// Dense eigensolver oracle for dimensions <= ~4096.
GroundStateResult dense_ground_state(const SparseHamiltonian& h);

// Projector onto the +1/+1 sector of two commuting involutions given as
// X-masks (qubit chains): v -> (1+P0)(1+P1) v / norm.
std::function<void(std::vector<cx>&)> symmetric_sector_projector(
    std::uint64_t xmask0, std::uint64_t xmask1);

// Same for local unitary involutions (qudit chains), one d x d matrix applied
// on every site.
std::function<void(std::vector<cx>&)> symmetric_sector_projector_local(
    int num_sites, int local_dim, const Matrix& r0, const Matrix& r1);

}  // namespace spt

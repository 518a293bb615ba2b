#include "qcnn/dataset.hpp"

#include <thread>

#include "spt/cluster.hpp"
#include "spt/hamiltonian.hpp"
#include "spt/lanczos.hpp"
#include "spt/state_cache.hpp"

namespace qcnn {

using qsim::StateVector;

qsim::StateVector cluster_ground_state(int N, double h1, double h2,
                                       std::uint64_t seed,
                                       const std::string& cache_dir) {
  const double tol = 1e-10;
  spt::CacheKey key{"cluster", 1.0, h1, h2, N, seed, tol, true};
  if (!cache_dir.empty()) {
    if (auto hit = spt::cache_load(cache_dir, key)) {
      StateVector psi(N);
      psi.amps() = std::move(hit->second);
      return psi;
    }
  }
  const auto h = spt::build_cluster_hamiltonian({1.0, h1, h2, N});
  spt::LanczosOptions opt;
  opt.tol = tol;
  opt.seed = seed;
  opt.restart_depth = N >= 18 ? 30 : 40;
  opt.project = spt::symmetric_sector_projector(spt::sublattice_mask(N, 0),
                                                spt::sublattice_mask(N, 1));
  const auto gs = spt::ground_state(h, opt);
  if (!cache_dir.empty()) spt::cache_store(cache_dir, key, gs.energy, gs.vector);
  StateVector psi(N);
  psi.amps() = gs.vector;
  return psi;
}

int sop_oracle_label(double sop_value, double threshold) {
  return sop_value > threshold ? 1 : 0;
}

TrainingSet generate_training_set(int N, int count, double h1_max,
                                  std::uint64_t seed,
                                  const std::string& cache_dir) {
  if (count < 2) throw std::invalid_argument("need at least 2 points");
  TrainingSet set;
  set.reserve(count);
  // mid-chain SOP of length ~ floor(N/2) with even end distance
  int span = N / 2;
  if (span % 2) --span;
  const int a = (N - span) / 2;
  const int b = a + span;
  const auto s_ab = spt::sop(a, b, N);
  for (int i = 0; i < count; ++i) {
    TrainingSample s;
    s.h1 = h1_max * double(i) / double(count - 1);
    s.h2 = 0.0;
    s.label = s.h1 < 1.0 ? 1 : 0;
    s.state = cluster_ground_state(N, s.h1, s.h2, seed, cache_dir);
    s.sop_value = qsim::expectation(s.state, qsim::PauliSum(s_ab));
    // hard check only where the SOP signal is unambiguous; near-critical
    // points keep the annotation but short chains blur around ~0.3
    if (std::abs(s.sop_value) > 0.45 &&
        sop_oracle_label(s.sop_value, 0.45) != s.label)
      throw std::runtime_error("training label contradicts the SOP oracle");
    set.push_back(std::move(s));
  }
  return set;
}

std::vector<SweepPoint> phase_sweep(const TrainableCircuit& circuit,
                                    const qsim::ParamVector& params,
                                    const std::vector<double>& h1_values,
                                    const std::vector<double>& h2_values,
                                    int jobs, const std::string& cache_dir,
                                    std::uint64_t seed) {
  std::vector<SweepPoint> grid;
  for (double h2 : h2_values)
    for (double h1 : h1_values) grid.push_back({h1, h2, 0.0, false, ""});
  const int nt = std::max(1, jobs);
  auto work = [&](std::size_t i) {
    auto& pt = grid[i];
    try {
      const StateVector psi =
          cluster_ground_state(circuit.hyperparams().N, pt.h1, pt.h2, seed,
                               cache_dir);
      pt.output = circuit.classify(psi, params);
      pt.ok = true;
    } catch (const std::exception& e) {
      pt.ok = false;
      pt.error = e.what();
      pt.output = std::nan("");
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < grid.size(); i += nt) work(i);
    });
  for (auto& th : pool) th.join();
  return grid;
}

}  // namespace qcnn

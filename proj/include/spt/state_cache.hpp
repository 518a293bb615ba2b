#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsim/types.hpp"

namespace spt {

// Ground-state cache entry: header JSON line + raw little-endian complex
// doubles. Key fields identify (model, params, N, seed, tol, sector).
struct CacheKey {
  std::string model;   // "cluster" | "haldane"
  double J = 1.0, a = 0.0, b = 0.0;  // (h1,h2) or (omega,-)
  int N = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  bool symmetric_sector = true;

  std::string filename() const;  // stable hash-based name
};

void cache_store(const std::string& dir, const CacheKey& key, double energy,
                 const std::vector<qsim::cx>& state);

std::optional<std::pair<double, std::vector<qsim::cx>>> cache_load(
    const std::string& dir, const CacheKey& key);

}  // namespace spt

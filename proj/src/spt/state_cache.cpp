#include "spt/state_cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

namespace spt {

namespace {
nlohmann::json key_json(const CacheKey& k) {
  return nlohmann::json{{"model", k.model}, {"J", k.J},     {"a", k.a},
                        {"b", k.b},         {"N", k.N},     {"seed", k.seed},
                        {"tol", k.tol},     {"sym", k.symmetric_sector}};
}
}  // namespace

std::string CacheKey::filename() const {
  const std::string dump = key_json(*this).dump();
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "gs_%016llx.bin",
                static_cast<unsigned long long>(h));
  return buf;
}

void cache_store(const std::string& dir, const CacheKey& key, double energy,
                 const std::vector<qsim::cx>& state) {
  std::filesystem::create_directories(dir);
  nlohmann::json hdr = key_json(key);
  hdr["energy"] = energy;
  hdr["dim"] = state.size();
  const std::string path = dir + "/" + key.filename();
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << hdr.dump() << '\n';
  f.write(reinterpret_cast<const char*>(state.data()),
          std::streamsize(state.size() * sizeof(qsim::cx)));
}

std::optional<std::pair<double, std::vector<qsim::cx>>> cache_load(
    const std::string& dir, const CacheKey& key) {
  const std::string path = dir + "/" + key.filename();
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  std::string line;
  if (!std::getline(f, line)) return std::nullopt;
  nlohmann::json hdr;
  try {
    hdr = nlohmann::json::parse(line);
  } catch (...) {
    return std::nullopt;
  }
  if (hdr.value("dim", std::size_t{0}) == 0) return std::nullopt;
  std::vector<qsim::cx> state(hdr["dim"].get<std::size_t>());
  f.read(reinterpret_cast<char*>(state.data()),
         std::streamsize(state.size() * sizeof(qsim::cx)));
  if (!f) return std::nullopt;
  return std::make_pair(hdr["energy"].get<double>(), std::move(state));
}

}  // namespace spt

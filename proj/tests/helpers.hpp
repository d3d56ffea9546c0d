#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace test_helpers {

inline std::filesystem::path data_dir() {
  return std::filesystem::path(TEST_DATA_DIR);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(static_cast<bool>(in), "cannot open ", path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline std::filesystem::path fresh_temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("disagg_test_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Independent simplex sampler for cross-checks: sorted uniform gaps, a
// different construction from the library's normalized exponentials.
inline std::vector<std::vector<double>> gap_simplex_sample(
    std::size_t count, std::size_t arity, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::vector<double>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> cuts(arity - 1);
    for (double& c : cuts) c = unif(rng);
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> point(arity);
    double prev = 0.0;
    for (std::size_t j = 0; j + 1 < arity; ++j) {
      point[j] = cuts[j] - prev;
      prev = cuts[j];
    }
    point[arity - 1] = 1.0 - prev;
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace test_helpers

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "disagg/shares.hpp"

namespace disagg {

enum class SamplerKind {
  // Flat density on the simplex (normalized unit exponentials).
  uniform_simplex,
  // Dirichlet with concentration alpha on the middle category and 1
  // elsewhere: skews mass toward neutral answers.
  neutral_weighted,
};

struct SimulationConfig {
  std::size_t sample_count = 0;
  std::size_t arity = 3;
  std::uint64_t seed = 0;
  SamplerKind sampler = SamplerKind::uniform_simplex;
  double alpha = 4.0;

  void validate() const;  // sample_count >= 1, arity >= 2, alpha > 0
};

// Deterministic given the config: sample i depends only on (seed, i), so any
// partitioning of the index range reproduces the same list.
std::vector<SharesVector> sample_shares(const SimulationConfig& config);

struct SamplePoint {
  double disp = 0.0;
  double d = 0.0;
};

// DISP and D evaluated on every sample. Requires arity 3 (DISP is defined
// for three-category shares only).
std::vector<SamplePoint> sample_metrics(const SimulationConfig& config);

struct ComparisonReport {
  std::size_t sample_count = 0;
  // Absent when either statistic has zero variance across the sample.
  std::optional<double> pearson_correlation;
  std::optional<double> spearman_correlation;
  double mean_disp = 0.0;
  double mean_d = 0.0;
  double stddev_disp = 0.0;
  double stddev_d = 0.0;
  double share_disp_greater = 0.0;  // fraction of samples with DISP > D
};

ComparisonReport compare(std::span<const SamplePoint> samples);
ComparisonReport compare(const SimulationConfig& config);

}  // namespace disagg

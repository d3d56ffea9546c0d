#include "disagg/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "disagg/error.hpp"
#include "disagg/metrics.hpp"

namespace disagg {

namespace {

// Sample i draws from its own splitmix64 stream keyed by (seed, i), so the
// generated list does not depend on how the index range is partitioned
// across workers.
struct SampleStream {
  std::uint64_t state;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  SampleStream(std::uint64_t seed, std::uint64_t index)
      : state(mix(seed + 0x9E3779B97F4A7C15ULL * (index + 1))) {}

  std::uint64_t next_u64() {
    state += 0x9E3779B97F4A7C15ULL;
    return mix(state);
  }

  // Uniform on (0, 1]; never zero, so logs are safe.
  double uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double exponential() { return -std::log(uniform()); }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  // Marsaglia-Tsang; the alpha < 1 case boosts through gamma(alpha + 1).
  double gamma(double alpha) {
    if (alpha < 1.0) {
      return gamma(alpha + 1.0) * std::pow(uniform(), 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
      double x = normal();
      double t = 1.0 + c * x;
      if (t <= 0.0) continue;
      double v = t * t * t;
      double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }
};

std::vector<double> draw_raw(const SimulationConfig& config,
                             std::uint64_t index) {
  SampleStream stream(config.seed, index);
  std::vector<double> raw(config.arity);
  if (config.sampler == SamplerKind::uniform_simplex) {
    for (double& v : raw) v = stream.exponential();
  } else {
    const std::size_t middle = (config.arity - 1) / 2;
    for (std::size_t j = 0; j < config.arity; ++j) {
      raw[j] = j == middle ? stream.gamma(config.alpha) : stream.exponential();
    }
  }
  const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
  for (double& v : raw) v /= total;
  return raw;
}

}  // namespace

void SimulationConfig::validate() const {
  if (sample_count < 1) {
    fail(ErrorKind::config, "sample_count must be at least 1");
  }
  if (arity < 2) {
    fail(ErrorKind::config, "arity must be at least 2");
  }
  if (sampler == SamplerKind::neutral_weighted && !(alpha > 0.0)) {
    fail(ErrorKind::config, "alpha must be positive");
  }
}

std::vector<SharesVector> sample_shares(const SimulationConfig& config) {
  config.validate();
  std::vector<SharesVector> out;
  out.reserve(config.sample_count);
  for (std::size_t i = 0; i < config.sample_count; ++i) {
    out.emplace_back(draw_raw(config, i));
  }
  return out;
}

std::vector<SamplePoint> sample_metrics(const SimulationConfig& config) {
  config.validate();
  if (config.arity != 3) {
    fail(ErrorKind::invalid_arity,
         "the dispersion statistic is defined for three-category shares; "
         "got arity " + std::to_string(config.arity));
  }
  std::vector<SamplePoint> out;
  out.reserve(config.sample_count);
  for (std::size_t i = 0; i < config.sample_count; ++i) {
    SharesVector shares(draw_raw(config, i));
    out.push_back({dispersion(ThreeCategoryShares(shares)).value,
                   discrepancy(shares).value});
  }
  return out;
}

namespace {

// Ranks with ties averaged, the usual convention for rank correlation.
std::vector<double> tie_averaged_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> pearson(std::span<const double> x,
                              std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

ComparisonReport compare(std::span<const SamplePoint> samples) {
  if (samples.empty()) {
    fail(ErrorKind::config, "comparison needs at least one sample");
  }
  const std::size_t n = samples.size();
  std::vector<double> disp(n), d(n);
  std::size_t greater = 0;
  for (std::size_t i = 0; i < n; ++i) {
    disp[i] = samples[i].disp;
    d[i] = samples[i].d;
    if (disp[i] > d[i]) ++greater;
  }

  ComparisonReport report;
  report.sample_count = n;
  report.share_disp_greater =
      static_cast<double>(greater) / static_cast<double>(n);
  report.mean_disp = std::accumulate(disp.begin(), disp.end(), 0.0) /
                     static_cast<double>(n);
  report.mean_d =
      std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
  double vdisp = 0.0, vd = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    vdisp += (disp[i] - report.mean_disp) * (disp[i] - report.mean_disp);
    vd += (d[i] - report.mean_d) * (d[i] - report.mean_d);
  }
  report.stddev_disp = std::sqrt(vdisp / static_cast<double>(n));
  report.stddev_d = std::sqrt(vd / static_cast<double>(n));

  report.pearson_correlation = pearson(disp, d);
  if (report.pearson_correlation) {
    report.spearman_correlation =
        pearson(tie_averaged_ranks(disp), tie_averaged_ranks(d));
  }
  return report;
}

ComparisonReport compare(const SimulationConfig& config) {
  return compare(sample_metrics(config));
}

}  // namespace disagg

#include "disagg/metrics.hpp"

#include <cmath>
#include <string>

#include "disagg/error.hpp"

namespace disagg {

namespace {

constexpr double kNoiseEpsilon = 1e-12;

// Pulls values a hair outside [0, 1] back onto the boundary; anything
// farther out indicates a real defect upstream.
double clamp_unit(double v, const char* what) {
  if (v < 0.0) {
    if (v < -1e-9) fail(ErrorKind::validation, std::string(what) + " below 0");
    return 0.0;
  }
  if (v > 1.0) {
    if (v > 1.0 + 1e-9) fail(ErrorKind::validation, std::string(what) + " above 1");
    return 1.0;
  }
  return v;
}

}  // namespace

BalanceValue balance(const ThreeCategoryShares& s) {
  return {s.up() - s.down()};
}

DispersionValue dispersion(const ThreeCategoryShares& s) {
  const double b = s.up() - s.down();
  double radicand = s.up() + s.down() - b * b;
  if (radicand < 0.0) {
    // Boundary inputs can land a few ulp below zero; real negatives cannot
    // occur for valid shares.
    if (radicand < -kNoiseEpsilon) {
      fail(ErrorKind::validation, "dispersion radicand below tolerance");
    }
    radicand = 0.0;
  }
  return {clamp_unit(std::sqrt(radicand), "dispersion")};
}

DiscrepancyValue discrepancy(const SharesVector& s) {
  const std::size_t n = s.arity();
  const double center = 1.0 / static_cast<double>(n);
  double dist_sq = 0.0;
  for (double v : s.values()) {
    const double dev = v - center;
    dist_sq += dev * dev;
  }
  const double ratio = std::sqrt(dist_sq) / max_vertex_distance(n);
  return {clamp_unit(1.0 - ratio, "discrepancy")};
}

double max_vertex_distance(std::size_t arity) {
  if (arity < 2) {
    fail(ErrorKind::invalid_arity,
         "simplex needs at least 2 categories, got " + std::to_string(arity));
  }
  const double n = static_cast<double>(arity);
  return std::sqrt((n - 1.0) / n);
}

}  // namespace disagg

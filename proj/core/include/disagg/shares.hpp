#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace disagg {

// A point on the probability simplex: the ordered proportions of respondents
// per response category. Stored as fractions in [0, 1] summing to one.
class SharesVector {
 public:
  // Raw sums within [1 - kSumBand, 1 + kSumBand] are renormalized by the
  // constructor; anything farther off is rejected as a data error.
  static constexpr double kSumBand = 0.02;
  // Guaranteed |sum - 1| after construction.
  static constexpr double kSumEpsilon = 1e-6;
  // Negative noise tolerated on inputs (clamped to zero).
  static constexpr double kNegativeEpsilon = 1e-12;

  explicit SharesVector(std::vector<double> raw);

  std::size_t arity() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  double sum() const;

  bool operator==(const SharesVector&) const = default;

 private:
  std::vector<double> values_;
};

// Business-survey response shares: up / unchanged / down.
class ThreeCategoryShares {
 public:
  ThreeCategoryShares(double up, double same, double down);
  explicit ThreeCategoryShares(SharesVector shares);  // arity 3 required

  double up() const { return shares_[0]; }
  double same() const { return shares_[1]; }
  double down() const { return shares_[2]; }
  const SharesVector& shares() const { return shares_; }

 private:
  SharesVector shares_;
};

}  // namespace disagg

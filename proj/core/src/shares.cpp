#include "disagg/shares.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "disagg/error.hpp"

namespace disagg {

SharesVector::SharesVector(std::vector<double> raw) : values_(std::move(raw)) {
  if (values_.size() < 2) {
    fail(ErrorKind::invalid_arity,
         "share vector needs at least 2 categories, got " +
             std::to_string(values_.size()));
  }
  for (double& v : values_) {
    if (!std::isfinite(v)) {
      fail(ErrorKind::invalid_shares, "non-finite share value");
    }
    if (v < 0.0) {
      if (v < -kNegativeEpsilon) {
        fail(ErrorKind::invalid_shares,
             "negative share value " + std::to_string(v));
      }
      v = 0.0;
    }
  }
  double total = std::accumulate(values_.begin(), values_.end(), 0.0);
  if (total < 1.0 - kSumBand || total > 1.0 + kSumBand) {
    fail(ErrorKind::invalid_shares,
         "share sum " + std::to_string(total) + " outside [" +
             std::to_string(1.0 - kSumBand) + ", " +
             std::to_string(1.0 + kSumBand) + "]");
  }
  if (total != 1.0) {
    for (double& v : values_) v /= total;
  }
}

double SharesVector::sum() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

ThreeCategoryShares::ThreeCategoryShares(double up, double same, double down)
    : shares_(std::vector<double>{up, same, down}) {}

ThreeCategoryShares::ThreeCategoryShares(SharesVector shares)
    : shares_(std::move(shares)) {
  if (shares_.arity() != 3) {
    fail(ErrorKind::invalid_arity,
         "three-category shares require arity 3, got " +
             std::to_string(shares_.arity()));
  }
}

}  // namespace disagg

#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "disagg/observation.hpp"

namespace disagg {

struct IngestPolicies {
  DontKnowPolicy dk = DontKnowPolicy::drop_renormalize;
  double sum_band = SharesVector::kSumBand;

  bool operator==(const IngestPolicies&) const = default;
};

// An immutable-after-construction collection of observations keyed by
// (geo, question, period). Merging is explicit and order-independent;
// overlapping keys or differing policies are errors.
class Dataset {
 public:
  using Key = std::tuple<std::string, std::string, Period>;

  explicit Dataset(IngestPolicies policies = {}, std::string provenance = {});

  void add(Observation obs);
  void merge(const Dataset& other);

  const std::map<Key, Observation>& observations() const {
    return observations_;
  }
  bool empty() const { return observations_.empty(); }
  std::size_t size() const { return observations_.size(); }

  // Observations of one (geo, question) series, in period order.
  std::vector<const Observation*> series_observations(
      std::string_view geo, std::string_view question) const;

  std::vector<std::string> geos() const;
  std::vector<std::string> questions_of_geo(std::string_view geo) const;
  std::optional<std::pair<Period, Period>> span() const;

  const IngestPolicies& policies() const { return policies_; }
  const std::string& provenance() const { return provenance_; }

 private:
  IngestPolicies policies_;
  std::string provenance_;
  std::map<Key, Observation> observations_;
};

struct GapEntry {
  std::string geo;
  std::string question;
  Period first_available;
  Period last_available;
  std::vector<Period> missing;  // months of [from, to] with no observation
};

// Gaps per (geo, question) against the requested range. Pairs with no
// observation at all are not listed: nothing is known about their expected
// coverage. Entries are sorted by (geo, question).
std::vector<GapEntry> missing_report(const Dataset& d, Period from, Period to);

}  // namespace disagg

#include "disagg/dataset.hpp"

#include <algorithm>
#include <set>

#include "disagg/error.hpp"

namespace disagg {

Dataset::Dataset(IngestPolicies policies, std::string provenance)
    : policies_(policies), provenance_(std::move(provenance)) {}

void Dataset::add(Observation obs) {
  Key key{obs.geo, obs.question, obs.period};
  auto [it, inserted] = observations_.emplace(std::move(key), std::move(obs));
  if (!inserted) {
    const Observation& o = it->second;
    fail(ErrorKind::duplicate_key, "duplicate observation for (" + o.geo +
                                       ", " + o.question + ", " +
                                       o.period.str() + ")");
  }
}

void Dataset::merge(const Dataset& other) {
  if (!(policies_ == other.policies_)) {
    fail(ErrorKind::config, "cannot merge datasets ingested under different policies");
  }
  for (const auto& [key, obs] : other.observations_) {
    add(obs);
  }
  if (!other.provenance_.empty()) {
    provenance_ += provenance_.empty() ? other.provenance_
                                       : "+" + other.provenance_;
  }
}

std::vector<const Observation*> Dataset::series_observations(
    std::string_view geo, std::string_view question) const {
  std::vector<const Observation*> out;
  // Keys are ordered, so the (geo, question) block is contiguous.
  auto it = observations_.lower_bound(
      Key{std::string(geo), std::string(question), Period{}});
  for (; it != observations_.end(); ++it) {
    const Observation& o = it->second;
    if (o.geo != geo || o.question != question) break;
    out.push_back(&o);
  }
  return out;
}

std::vector<std::string> Dataset::geos() const {
  std::set<std::string> seen;
  for (const auto& [key, obs] : observations_) seen.insert(obs.geo);
  return {seen.begin(), seen.end()};
}

std::vector<std::string> Dataset::questions_of_geo(std::string_view geo) const {
  std::set<std::string> seen;
  for (const auto& [key, obs] : observations_) {
    if (obs.geo == geo) seen.insert(obs.question);
  }
  return {seen.begin(), seen.end()};
}

std::optional<std::pair<Period, Period>> Dataset::span() const {
  if (observations_.empty()) return std::nullopt;
  Period lo = observations_.begin()->second.period;
  Period hi = lo;
  for (const auto& [key, obs] : observations_) {
    lo = std::min(lo, obs.period);
    hi = std::max(hi, obs.period);
  }
  return std::make_pair(lo, hi);
}

std::vector<GapEntry> missing_report(const Dataset& d, Period from, Period to) {
  std::vector<GapEntry> report;
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& [key, obs] : d.observations()) {
    pairs.emplace(obs.geo, obs.question);
  }
  for (const auto& [geo, question] : pairs) {
    auto obs = d.series_observations(geo, question);
    std::set<Period> have;
    for (const Observation* o : obs) have.insert(o->period);
    GapEntry entry{geo, question, obs.front()->period, obs.back()->period, {}};
    for (Period p : period_range(from, to)) {
      if (!have.contains(p)) entry.missing.push_back(p);
    }
    if (!entry.missing.empty()) report.push_back(std::move(entry));
  }
  return report;
}

}  // namespace disagg

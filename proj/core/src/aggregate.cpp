#include "disagg/aggregate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "disagg/error.hpp"
#include "disagg/metrics.hpp"

namespace disagg {

namespace {

// Per-period unweighted mean over the constituents that have a value; the
// count used becomes the point's coverage.
IndicatorSeries pointwise_mean(std::span<const IndicatorSeries> parts,
                               std::string geo, IndicatorId id) {
  std::map<Period, std::pair<double, int>> acc;
  for (const IndicatorSeries& s : parts) {
    for (const SeriesPoint& p : s.points()) {
      auto& [sum, n] = acc[p.period];
      sum += p.value;
      n += 1;
    }
  }
  IndicatorSeries out(std::move(geo), id);
  for (const auto& [period, sum_n] : acc) {
    out.append({period, sum_n.first / sum_n.second, sum_n.second});
  }
  return out;
}

void check_same_geo(std::span<const IndicatorSeries> parts) {
  for (const IndicatorSeries& s : parts) {
    if (s.geo() != parts.front().geo()) {
      fail(ErrorKind::geo_mismatch,
           "constituent series mix geographies " +
               std::string(parts.front().geo()) + " and " +
               std::string(s.geo()));
    }
  }
}

}  // namespace

IndicatorSeries question_series(const Dataset& d, std::string_view geo,
                                std::string_view question_code) {
  auto observations = d.series_observations(geo, question_code);
  if (observations.empty()) {
    fail(ErrorKind::empty_series,
         "no observations for (" + std::string(geo) + ", " +
             std::string(question_code) + ")");
  }
  IndicatorSeries out(std::string(geo), question_indicator(question_code));
  for (const Observation* obs : observations) {
    out.append({obs->period, discrepancy(obs->shares).value, 1});
  }
  return out;
}

IndicatorSeries sector_series(std::span<const IndicatorSeries> questions,
                              IndicatorId sector) {
  if (kind(sector) != IndicatorKind::sector) {
    fail(ErrorKind::indicator_mismatch,
         std::string(to_string(sector)) + " is not a sector indicator");
  }
  if (questions.empty()) {
    fail(ErrorKind::empty_series,
         "sector aggregation needs at least one question series");
  }
  check_same_geo(questions);
  const std::vector<IndicatorId> expected = constituents(sector);
  std::set<IndicatorId> seen;
  for (const IndicatorSeries& s : questions) {
    if (std::find(expected.begin(), expected.end(), s.indicator()) ==
        expected.end()) {
      fail(ErrorKind::indicator_mismatch,
           std::string(to_string(s.indicator())) + " is not a question of " +
               std::string(to_string(sector)));
    }
    if (!seen.insert(s.indicator()).second) {
      fail(ErrorKind::indicator_mismatch,
           "duplicate constituent " + std::string(to_string(s.indicator())));
    }
  }
  return pointwise_mean(questions, std::string(questions.front().geo()),
                        sector);
}

IndicatorSeries consumer_series(std::span<const IndicatorSeries> questions) {
  if (questions.size() != 5) {
    fail(ErrorKind::indicator_mismatch,
         "consumer aggregation takes the five consumer question series, got " +
             std::to_string(questions.size()));
  }
  return sector_series(questions, IndicatorId::D_CONS);
}

IndicatorSeries business_series(std::span<const IndicatorSeries> sectors) {
  const std::vector<IndicatorId> expected = constituents(IndicatorId::D_BUSI);
  if (sectors.size() != expected.size()) {
    fail(ErrorKind::indicator_mismatch,
         "business aggregation takes the four sector series, got " +
             std::to_string(sectors.size()));
  }
  std::set<IndicatorId> seen;
  for (const IndicatorSeries& s : sectors) {
    if (std::find(expected.begin(), expected.end(), s.indicator()) ==
        expected.end()) {
      fail(ErrorKind::indicator_mismatch,
           std::string(to_string(s.indicator())) +
               " is not a business sector indicator");
    }
    if (!seen.insert(s.indicator()).second) {
      fail(ErrorKind::indicator_mismatch,
           "duplicate sector " + std::string(to_string(s.indicator())));
    }
  }
  check_same_geo(sectors);
  return pointwise_mean(sectors, std::string(sectors.front().geo()),
                        IndicatorId::D_BUSI);
}

IndicatorSeries total_series(const IndicatorSeries& business,
                             const IndicatorSeries& consumer) {
  if (business.indicator() != IndicatorId::D_BUSI ||
      consumer.indicator() != IndicatorId::D_CONS) {
    fail(ErrorKind::indicator_mismatch,
         "total aggregation takes (D_BUSI, D_CONS), got (" +
             std::string(to_string(business.indicator())) + ", " +
             std::string(to_string(consumer.indicator())) + ")");
  }
  if (business.geo() != consumer.geo()) {
    fail(ErrorKind::geo_mismatch, "business series is for " + business.geo() +
                                      ", consumer series for " +
                                      consumer.geo());
  }
  const IndicatorSeries parts[] = {business, consumer};
  return pointwise_mean(parts, business.geo(), IndicatorId::D_TOTAL);
}

SummaryRow summarize(const IndicatorSeries& s) {
  if (s.empty()) {
    fail(ErrorKind::empty_series, "cannot summarize an empty series");
  }
  SummaryRow row;
  row.geo = s.geo();
  row.indicator = s.indicator();
  row.min = row.max = s.points().front().value;
  double sum = 0.0;
  for (const SeriesPoint& p : s.points()) {
    sum += p.value;
    row.min = std::min(row.min, p.value);
    row.max = std::max(row.max, p.value);
  }
  row.n_obs = static_cast<std::int64_t>(s.size());
  row.mean = std::clamp(sum / static_cast<double>(s.size()), row.min, row.max);
  return row;
}

RankingTable rank(std::vector<SummaryRow> rows) {
  if (rows.empty()) {
    fail(ErrorKind::empty_series, "nothing to rank");
  }
  RankingTable table;
  table.indicator = rows.front().indicator;
  std::set<std::string> geos;
  for (const SummaryRow& row : rows) {
    if (row.indicator != table.indicator) {
      fail(ErrorKind::indicator_mismatch,
           "ranking mixes indicators " +
               std::string(to_string(table.indicator)) + " and " +
               std::string(to_string(row.indicator)));
    }
    if (!geos.insert(row.geo).second) {
      fail(ErrorKind::duplicate_key, "duplicate geo in ranking: " + row.geo);
    }
  }
  std::sort(rows.begin(), rows.end(),
            [](const SummaryRow& a, const SummaryRow& b) {
              if (a.mean != b.mean) return a.mean < b.mean;
              return a.geo < b.geo;
            });
  for (const SummaryRow& row : rows) {
    table.entries.push_back({row.geo, row.mean});
  }
  return table;
}

std::vector<IndicatorSeries> compute_all(const Dataset& d,
                                         const SeriesFilter& filter) {
  const std::vector<std::string> geos =
      filter.geos.empty() ? d.geos() : filter.geos;
  auto wanted = [&](IndicatorId id) {
    return filter.indicators.empty() ||
           std::find(filter.indicators.begin(), filter.indicators.end(), id) !=
               filter.indicators.end();
  };

  std::vector<IndicatorSeries> out;
  for (const std::string& geo : geos) {
    std::map<IndicatorId, IndicatorSeries> computed;
    for (const std::string& question : d.questions_of_geo(geo)) {
      IndicatorSeries qs = question_series(d, geo, question);
      computed.emplace(qs.indicator(), std::move(qs));
    }
    if (computed.empty()) continue;

    for (SurveyId survey : kAllSurveys) {
      std::vector<IndicatorSeries> parts;
      for (IndicatorId q : constituents(sector_indicator(survey))) {
        auto it = computed.find(q);
        if (it != computed.end()) parts.push_back(it->second);
      }
      if (!parts.empty()) {
        IndicatorSeries s = sector_series(parts, sector_indicator(survey));
        computed.emplace(s.indicator(), std::move(s));
      }
    }

    bool any_business_sector = false;
    std::vector<IndicatorSeries> sectors;
    for (IndicatorId sector : constituents(IndicatorId::D_BUSI)) {
      auto it = computed.find(sector);
      if (it != computed.end()) {
        sectors.push_back(it->second);
        any_business_sector = true;
      } else {
        sectors.emplace_back(geo, sector);  // empty: contributes nowhere
      }
    }
    if (any_business_sector) {
      IndicatorSeries busi = business_series(sectors);
      computed.emplace(IndicatorId::D_BUSI, std::move(busi));
    }

    auto busi = computed.find(IndicatorId::D_BUSI);
    auto cons = computed.find(IndicatorId::D_CONS);
    if (busi != computed.end() && cons != computed.end()) {
      IndicatorSeries total = total_series(busi->second, cons->second);
      computed.emplace(IndicatorId::D_TOTAL, std::move(total));
    }

    for (auto& [id, s] : computed) {
      if (wanted(id) && !s.empty()) out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace disagg

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "disagg/catalog.hpp"

namespace disagg {

// The 24 published indicators: 17 question-level discrepancy series, five
// sector aggregates, and the business / total composites.
enum class IndicatorId : std::uint8_t {
  D_I5, D_I6, D_I7,
  D_S3, D_S5, D_S6,
  D_R3, D_R4, D_R5, D_R6,
  D_B4, D_B5,
  D_C2, D_C4, D_C6, D_C7, D_C9,
  D_INDU, D_SERV, D_RETA, D_BUIL, D_CONS,
  D_BUSI, D_TOTAL,
};

enum class IndicatorKind { question, sector, composite };

std::string_view to_string(IndicatorId id);
std::optional<IndicatorId> indicator_from_string(std::string_view text);
IndicatorKind kind(IndicatorId id);

// All 24 ids in catalog order.
std::span<const IndicatorId> all_indicators();

// D_<code> for a question code ("I5" -> D_I5); unknown code is an error.
IndicatorId question_indicator(std::string_view question_code);

// The sector aggregate of a survey (INDU -> D_INDU, CONS -> D_CONS).
IndicatorId sector_indicator(SurveyId survey);

// Survey behind a question- or sector-level indicator.
SurveyId survey_of(IndicatorId id);

// Question indicators of a sector; the four business sectors for D_BUSI;
// {D_BUSI, D_CONS} for D_TOTAL. Empty for question-level ids.
std::vector<IndicatorId> constituents(IndicatorId id);

struct SeriesPoint {
  Period period;
  double value = 0.0;  // in [0, 1]
  // Constituent series contributing at this period (1 for question series).
  int coverage = 1;
};

// Time-indexed values of one indicator for one geography. Periods strictly
// increase; every value lies in [0, 1].
class IndicatorSeries {
 public:
  IndicatorSeries(std::string geo, IndicatorId indicator);

  void append(SeriesPoint p);

  const std::string& geo() const { return geo_; }
  IndicatorId indicator() const { return indicator_; }
  const std::vector<SeriesPoint>& points() const { return points_; }
  bool empty() const { return points_.empty(); }
  std::size_t size() const { return points_.size(); }

 private:
  std::string geo_;
  IndicatorId indicator_;
  std::vector<SeriesPoint> points_;
};

struct SummaryRow {
  std::string geo;
  IndicatorId indicator = IndicatorId::D_I5;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::int64_t n_obs = 0;
};

struct RankingEntry {
  std::string geo;
  double mean = 0.0;
};

// Countries in increasing order of average disagreement; ties broken by
// geo code.
struct RankingTable {
  IndicatorId indicator = IndicatorId::D_I5;
  std::vector<RankingEntry> entries;
};

}  // namespace disagg

#pragma once

#include <span>
#include <string>
#include <vector>

#include "disagg/dataset.hpp"
#include "disagg/series.hpp"

namespace disagg {

// Discrepancy per available period of one (geo, question); months without an
// observation are simply absent. Errors when the dataset holds no
// observation for the pair.
IndicatorSeries question_series(const Dataset& d, std::string_view geo,
                                std::string_view question_code);

// Unweighted per-period mean of the question series of one sector.
// A period is emitted when at least one constituent has a value; the count
// used is kept as the point's coverage.
IndicatorSeries sector_series(std::span<const IndicatorSeries> questions,
                              IndicatorId sector);

// Mean of the five consumer question series (D_CONS).
IndicatorSeries consumer_series(std::span<const IndicatorSeries> questions);

// Mean of D_INDU, D_SERV, D_RETA, D_BUIL, skip-missing per period. All four
// series must be present (individually they may be empty, e.g. a truncated
// sector simply stops contributing).
IndicatorSeries business_series(std::span<const IndicatorSeries> sectors);

// Mean of D_BUSI and D_CONS for one geo, skip-missing per period.
IndicatorSeries total_series(const IndicatorSeries& business,
                             const IndicatorSeries& consumer);

// Mean / min / max / count over all points; empty series is an error.
SummaryRow summarize(const IndicatorSeries& s);

// Ascending by mean, ties by geo code. All rows must share one indicator
// and have distinct geos.
RankingTable rank(std::vector<SummaryRow> rows);

struct SeriesFilter {
  std::vector<std::string> geos;          // empty -> all geos in the dataset
  std::vector<IndicatorId> indicators;    // empty -> all 24
};

// The full pipeline for every selected geo: question series, sector series,
// D_BUSI and D_TOTAL where computable. Only non-empty series are returned,
// ordered by (geo, indicator).
std::vector<IndicatorSeries> compute_all(const Dataset& d,
                                         const SeriesFilter& filter = {});

}  // namespace disagg

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "disagg/dataset.hpp"
#include "disagg/series.hpp"

namespace disagg {

struct ParseOptions {
  IngestPolicies policies{};
  const Catalog* catalog = nullptr;  // nullptr -> Catalog::standard()
  std::string source_name = "<stream>";
  // When set, rows outside [from, to] are skipped.
  std::optional<Period> from;
  std::optional<Period> to;
};

// Parses one share-data CSV. The header selects the schema:
//   geo,survey,question,period,up,same,down          business rows
//   geo,survey,question,period,pp,p,e,m,mm,dk        raw consumer rows
//   geo,survey,question,period,pp,p,e,m,mm           consumer rows already
//                                                    reduced by the drop
//                                                    policy (no reprocessing)
// An optional trailing `coverage` column carries flags from a previous dump.
// Values are percentages or fractions, detected per file: any value above
// 1.5 marks the whole file as percentages.
Dataset parse_csv(std::istream& in, const ParseOptions& options = {});
Dataset parse_csv_file(const std::filesystem::path& path,
                       ParseOptions options = {});

// Canonical dumps. Shares are post-policy fractions printed with full
// precision, plus the coverage column, so parse(write(d)) reproduces every
// observation (values to the last bit before renormalization noise, flags
// exactly).
void write_business_csv(const Dataset& d, std::ostream& out);
void write_consumer_csv(const Dataset& d, std::ostream& out);

// `geo,indicator,stat,value` rows mirroring published descriptive tables.
// The value field tolerates a decimal comma (everything after the third
// comma is the value).
enum class StatKind { mean, min, max };

std::string_view to_string(StatKind stat);

struct StatRow {
  std::string geo;
  IndicatorId indicator = IndicatorId::D_I5;
  StatKind stat = StatKind::mean;
  double value = 0.0;
};

std::vector<StatRow> parse_stats_csv(std::istream& in,
                                     const std::string& source_name = "<stream>");

// `geo,indicator,mean,min,max,n_obs` summary rows.
std::vector<SummaryRow> parse_summary_csv(std::istream& in,
                                          const std::string& source_name = "<stream>");

// `geo,indicator,period,value` long-format series rows.
std::vector<IndicatorSeries> parse_series_csv(std::istream& in,
                                              const std::string& source_name = "<stream>");

}  // namespace disagg

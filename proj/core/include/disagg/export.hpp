#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "disagg/dataset.hpp"
#include "disagg/series.hpp"
#include "disagg/simulate.hpp"

namespace disagg {

// Run configuration echoed into every JSON envelope. Carries no timestamp:
// outputs are byte-identical across runs with identical inputs.
struct RunMetadata {
  IngestPolicies policies{};
  std::optional<Period> from;
  std::optional<Period> to;
  std::vector<std::string> inputs;
  std::optional<std::uint64_t> seed;
};

void write_series_csv(std::span<const IndicatorSeries> series,
                      std::ostream& out);
void write_series_json(std::span<const IndicatorSeries> series,
                       const RunMetadata& meta, std::ostream& out);

void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out);
void write_summary_json(std::span<const SummaryRow> rows,
                        const RunMetadata& meta, std::ostream& out);

void write_ranking_csv(const RankingTable& table, std::ostream& out);
void write_ranking_json(const RankingTable& table, const RunMetadata& meta,
                        std::ostream& out);

void write_report_json(const ComparisonReport& report,
                       const SimulationConfig& config, std::ostream& out);
void write_samples_csv(std::span<const SamplePoint> samples,
                       std::ostream& out);

// Write-temp-then-rename; partially written files never appear under the
// final name.
void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace disagg

#include "disagg/export.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "disagg/error.hpp"

namespace disagg {

namespace {

using Json = nlohmann::ordered_json;

std::string fixed9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

Json metadata_json(const RunMetadata& meta) {
  Json j;
  j["dk_policy"] = std::string(to_string(meta.policies.dk));
  j["sum_band"] = meta.policies.sum_band;
  j["from"] = meta.from ? Json(meta.from->str()) : Json(nullptr);
  j["to"] = meta.to ? Json(meta.to->str()) : Json(nullptr);
  j["inputs"] = meta.inputs;
  if (meta.seed) j["seed"] = *meta.seed;
  return j;
}

}  // namespace

void write_series_csv(std::span<const IndicatorSeries> series,
                      std::ostream& out) {
  out << "geo,indicator,period,value\n";
  for (const IndicatorSeries& s : series) {
    for (const SeriesPoint& p : s.points()) {
      out << s.geo() << ',' << to_string(s.indicator()) << ','
          << p.period.str() << ',' << fixed9(p.value) << '\n';
    }
  }
}

void write_series_json(std::span<const IndicatorSeries> series,
                       const RunMetadata& meta, std::ostream& out) {
  Json j;
  j["config"] = metadata_json(meta);
  Json list = Json::array();
  for (const IndicatorSeries& s : series) {
    Json entry;
    entry["geo"] = s.geo();
    entry["indicator"] = std::string(to_string(s.indicator()));
    Json points = Json::array();
    for (const SeriesPoint& p : s.points()) {
      points.push_back({{"period", p.period.str()},
                        {"value", p.value},
                        {"coverage", p.coverage}});
    }
    entry["points"] = std::move(points);
    list.push_back(std::move(entry));
  }
  j["series"] = std::move(list);
  out << j.dump(2) << '\n';
}

void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out) {
  out << "geo,indicator,mean,min,max,n_obs\n";
  for (const SummaryRow& r : rows) {
    out << r.geo << ',' << to_string(r.indicator) << ',' << fixed9(r.mean)
        << ',' << fixed9(r.min) << ',' << fixed9(r.max) << ',' << r.n_obs
        << '\n';
  }
}

void write_summary_json(std::span<const SummaryRow> rows,
                        const RunMetadata& meta, std::ostream& out) {
  Json j;
  j["config"] = metadata_json(meta);
  Json list = Json::array();
  for (const SummaryRow& r : rows) {
    list.push_back({{"geo", r.geo},
                    {"indicator", std::string(to_string(r.indicator))},
                    {"mean", r.mean},
                    {"min", r.min},
                    {"max", r.max},
                    {"n_obs", r.n_obs}});
  }
  j["summaries"] = std::move(list);
  out << j.dump(2) << '\n';
}

void write_ranking_csv(const RankingTable& table, std::ostream& out) {
  out << "indicator,rank,geo,mean\n";
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    out << to_string(table.indicator) << ',' << i + 1 << ','
        << table.entries[i].geo << ',' << fixed9(table.entries[i].mean)
        << '\n';
  }
}

void write_ranking_json(const RankingTable& table, const RunMetadata& meta,
                        std::ostream& out) {
  Json j;
  j["config"] = metadata_json(meta);
  j["indicator"] = std::string(to_string(table.indicator));
  Json list = Json::array();
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    list.push_back({{"rank", i + 1},
                    {"geo", table.entries[i].geo},
                    {"mean", table.entries[i].mean}});
  }
  j["ranking"] = std::move(list);
  out << j.dump(2) << '\n';
}

void write_report_json(const ComparisonReport& report,
                       const SimulationConfig& config, std::ostream& out) {
  Json j;
  j["config"] = {
      {"sample_count", config.sample_count},
      {"arity", config.arity},
      {"seed", config.seed},
      {"sampler", config.sampler == SamplerKind::uniform_simplex
                      ? "uniform-simplex"
                      : "neutral-weighted"},
  };
  if (config.sampler == SamplerKind::neutral_weighted) {
    j["config"]["alpha"] = config.alpha;
  }
  j["sample_count"] = report.sample_count;
  j["correlations_defined"] = report.pearson_correlation.has_value();
  j["pearson_correlation"] = report.pearson_correlation
                                 ? Json(*report.pearson_correlation)
                                 : Json(nullptr);
  j["spearman_correlation"] = report.spearman_correlation
                                  ? Json(*report.spearman_correlation)
                                  : Json(nullptr);
  j["mean_disp"] = report.mean_disp;
  j["mean_d"] = report.mean_d;
  j["stddev_disp"] = report.stddev_disp;
  j["stddev_d"] = report.stddev_d;
  j["share_disp_greater"] = report.share_disp_greater;
  out << j.dump(2) << '\n';
}

void write_samples_csv(std::span<const SamplePoint> samples,
                       std::ostream& out) {
  out << "disp,d\n";
  for (const SamplePoint& s : samples) {
    out << fixed9(s.disp) << ',' << fixed9(s.d) << '\n';
  }
}

void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      fail(ErrorKind::io, "cannot open for writing: " + tmp.string());
    }
    out << content;
    out.flush();
    if (!out) {
      fail(ErrorKind::io, "write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    fail(ErrorKind::io,
         "cannot move " + tmp.string() + " into place: " + ec.message());
  }
}

}  // namespace disagg

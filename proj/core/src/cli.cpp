#include "disagg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "disagg/aggregate.hpp"
#include "disagg/csv.hpp"
#include "disagg/error.hpp"
#include "disagg/export.hpp"
#include "disagg/svg.hpp"

namespace disagg {

namespace {

struct RunConfig {
  std::vector<std::string> inputs;
  std::optional<Period> from;
  std::optional<Period> to;
  IngestPolicies policies;
  std::vector<std::string> geos;
  std::vector<IndicatorId> indicators;
  std::set<std::string> formats{"csv", "json", "svg"};
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 1;
};

// Raw option values as they arrive from the parser.
struct RawOpts {
  std::vector<std::string> inputs;
  std::string from_text;
  std::string to_text;
  std::string dk_policy = "drop";
  std::vector<std::string> geos;
  std::vector<std::string> indicators;
  std::string formats = "csv,json,svg";
  std::string out_dir = ".";
  std::uint64_t seed = 1;
};

void add_common_options(CLI::App& cmd, RawOpts& opts, bool wants_input) {
  auto* input = cmd.add_option("--input", opts.inputs, "Input CSV file(s)");
  if (wants_input) input->required();
  cmd.add_option("--from", opts.from_text, "First period (YYYY-MM)");
  cmd.add_option("--to", opts.to_text, "Last period (YYYY-MM)");
  cmd.add_option("--dk-policy", opts.dk_policy,
                 "Consumer don't-know policy: drop|include")
      ->default_val("drop");
  cmd.add_option("--geo", opts.geos, "Geo code filter");
  cmd.add_option("--indicator", opts.indicators, "Indicator filter");
  cmd.add_option("--format", opts.formats,
                 "Output formats, comma separated: csv,json,svg")
      ->default_val("csv,json,svg");
  cmd.add_option("--out", opts.out_dir, "Output directory")->default_val(".");
  cmd.add_option("--seed", opts.seed, "Simulation seed")->default_val(1);
}

std::string valid_indicator_list() {
  std::string out;
  for (IndicatorId id : all_indicators()) {
    if (!out.empty()) out += ", ";
    out += to_string(id);
  }
  return out;
}

RunConfig resolve(const RawOpts& opts) {
  RunConfig config;
  config.inputs = opts.inputs;
  for (const std::string& path : config.inputs) {
    if (!std::filesystem::exists(path)) {
      fail(ErrorKind::io, "input path does not exist: " + path);
    }
  }
  if (!opts.from_text.empty()) config.from = parse_period(opts.from_text);
  if (!opts.to_text.empty()) config.to = parse_period(opts.to_text);
  if (config.from && config.to && *config.to < *config.from) {
    fail(ErrorKind::config, "--to precedes --from");
  }
  auto policy = dont_know_policy_from_string(opts.dk_policy);
  if (!policy) {
    fail(ErrorKind::config,
         "unknown --dk-policy \"" + opts.dk_policy + "\" (want drop|include)");
  }
  config.policies.dk = *policy;
  for (const std::string& geo : opts.geos) {
    if (Catalog::standard().find_geo(geo) == nullptr) {
      fail(ErrorKind::vocabulary, "unknown geo code \"" + geo + "\"");
    }
    config.geos.push_back(geo);
  }
  for (const std::string& text : opts.indicators) {
    auto id = indicator_from_string(text);
    if (!id) {
      fail(ErrorKind::vocabulary, "unknown indicator \"" + text +
                                      "\"; valid ids: " +
                                      valid_indicator_list());
    }
    config.indicators.push_back(*id);
  }
  config.formats.clear();
  std::stringstream ss(opts.formats);
  for (std::string fmt; std::getline(ss, fmt, ',');) {
    if (fmt != "csv" && fmt != "json" && fmt != "svg") {
      fail(ErrorKind::config,
           "unknown format \"" + fmt + "\" (want csv, json or svg)");
    }
    config.formats.insert(fmt);
  }
  if (config.formats.empty()) {
    fail(ErrorKind::config, "at least one output format is required");
  }
  config.out_dir = opts.out_dir;
  config.seed = opts.seed;
  return config;
}

RunMetadata metadata_of(const RunConfig& config, bool with_seed = false) {
  RunMetadata meta;
  meta.policies = config.policies;
  meta.from = config.from;
  meta.to = config.to;
  meta.inputs = config.inputs;
  if (with_seed) meta.seed = config.seed;
  return meta;
}

enum class InputKind { shares, stats, summary, series };

InputKind detect_input_kind(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open input file: " + path);
  std::string header;
  std::getline(in, header);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  if (header.rfind("geo,survey,question,period", 0) == 0) {
    return InputKind::shares;
  }
  if (header.rfind("geo,indicator,stat,value", 0) == 0) {
    return InputKind::stats;
  }
  if (header.rfind("geo,indicator,mean,min,max,n_obs", 0) == 0) {
    return InputKind::summary;
  }
  if (header.rfind("geo,indicator,period,value", 0) == 0) {
    return InputKind::series;
  }
  fail(ErrorKind::parse, path + ": unrecognized header \"" + header + "\"");
}

Dataset load_dataset(const RunConfig& config) {
  Dataset merged(config.policies, "");
  for (const std::string& path : config.inputs) {
    ParseOptions options;
    options.policies = config.policies;
    options.from = config.from;
    options.to = config.to;
    merged.merge(parse_csv_file(path, options));
  }
  return merged;
}

void ensure_out_dir(const RunConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) {
    fail(ErrorKind::io,
         "cannot create output directory: " + config.out_dir.string());
  }
}

void emit(const RunConfig& config, const std::string& name,
          const std::string& content) {
  atomic_write_file(config.out_dir / name, content);
  std::cout << "wrote " << (config.out_dir / name).string() << "\n";
}

// The series behind every summarize/rank invocation, regardless of whether
// the inputs are raw share files or previously computed series.
std::vector<IndicatorSeries> load_series(const RunConfig& config,
                                         InputKind kind) {
  if (kind == InputKind::shares) {
    SeriesFilter filter{config.geos, config.indicators};
    return compute_all(load_dataset(config), filter);
  }
  std::vector<IndicatorSeries> all;
  for (const std::string& path : config.inputs) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::io, "cannot open input file: " + path);
    for (IndicatorSeries& s : parse_series_csv(in, path)) {
      all.push_back(std::move(s));
    }
  }
  // Honor the filters for pre-computed series too.
  std::erase_if(all, [&](const IndicatorSeries& s) {
    if (!config.geos.empty() &&
        std::find(config.geos.begin(), config.geos.end(), s.geo()) ==
            config.geos.end()) {
      return true;
    }
    if (!config.indicators.empty() &&
        std::find(config.indicators.begin(), config.indicators.end(),
                  s.indicator()) == config.indicators.end()) {
      return true;
    }
    return false;
  });
  return all;
}

InputKind common_input_kind(const RunConfig& config,
                            std::initializer_list<InputKind> allowed) {
  InputKind kind = detect_input_kind(config.inputs.front());
  for (const std::string& path : config.inputs) {
    if (detect_input_kind(path) != kind) {
      fail(ErrorKind::config, "inputs mix different CSV schemas");
    }
  }
  if (std::find(allowed.begin(), allowed.end(), kind) == allowed.end()) {
    fail(ErrorKind::config,
         "this subcommand does not accept the schema of " +
             config.inputs.front());
  }
  return kind;
}

int cmd_validate(const RunConfig& config) {
  Dataset dataset = load_dataset(config);
  std::size_t complete = 0, renormalized = 0, imputed = 0;
  for (const auto& [key, obs] : dataset.observations()) {
    switch (obs.coverage) {
      case CoverageFlag::complete: ++complete; break;
      case CoverageFlag::renormalized: ++renormalized; break;
      case CoverageFlag::imputed_none: ++imputed; break;
    }
  }
  std::cout << "inputs: " << config.inputs.size() << "\n";
  std::cout << "observations: " << dataset.size() << " (complete " << complete
            << ", renormalized " << renormalized;
  if (imputed > 0) std::cout << ", imputed-none " << imputed;
  std::cout << ")\n";
  auto geos = dataset.geos();
  std::cout << "geos: " << geos.size() << "\n";
  if (auto span = dataset.span()) {
    Period from = config.from.value_or(span->first);
    Period to = config.to.value_or(span->second);
    std::cout << "periods: " << span->first.str() << " .. "
              << span->second.str() << "\n";
    auto gaps = missing_report(dataset, from, to);
    if (gaps.empty()) {
      std::cout << "gaps: none\n";
    } else {
      for (const GapEntry& gap : gaps) {
        std::cout << "gap: " << gap.geo << " " << gap.question << " available "
                  << gap.first_available.str() << ".."
                  << gap.last_available.str() << ", missing "
                  << gap.missing.size() << " month(s) in range\n";
      }
    }
  } else {
    std::cout << "periods: none\n";
  }
  return 0;
}

int cmd_compute(const RunConfig& config) {
  ensure_out_dir(config);
  SeriesFilter filter{config.geos, config.indicators};
  common_input_kind(config, {InputKind::shares});
  std::vector<IndicatorSeries> series = compute_all(load_dataset(config), filter);
  if (config.formats.contains("csv")) {
    std::ostringstream out;
    write_series_csv(series, out);
    emit(config, "series.csv", out.str());
  }
  if (config.formats.contains("json")) {
    std::ostringstream out;
    write_series_json(series, metadata_of(config), out);
    emit(config, "series.json", out.str());
  }
  return 0;
}

int cmd_summarize(const RunConfig& config) {
  ensure_out_dir(config);
  InputKind kind =
      common_input_kind(config, {InputKind::shares, InputKind::series});
  std::vector<SummaryRow> rows;
  for (const IndicatorSeries& s : load_series(config, kind)) {
    rows.push_back(summarize(s));
  }
  if (config.formats.contains("csv")) {
    std::ostringstream out;
    write_summary_csv(rows, out);
    emit(config, "summary.csv", out.str());
  }
  if (config.formats.contains("json")) {
    std::ostringstream out;
    write_summary_json(rows, metadata_of(config), out);
    emit(config, "summary.json", out.str());
  }
  return 0;
}

std::vector<SummaryRow> summaries_for_rank(const RunConfig& config,
                                           InputKind kind) {
  std::vector<SummaryRow> rows;
  if (kind == InputKind::shares || kind == InputKind::series) {
    for (const IndicatorSeries& s : load_series(config, kind)) {
      rows.push_back(summarize(s));
    }
    return rows;
  }
  for (const std::string& path : config.inputs) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::io, "cannot open input file: " + path);
    if (kind == InputKind::stats) {
      for (const StatRow& r : parse_stats_csv(in, path)) {
        if (r.stat != StatKind::mean) continue;
        rows.push_back({r.geo, r.indicator, r.value, r.value, r.value, 0});
      }
    } else {
      for (SummaryRow& r : parse_summary_csv(in, path)) {
        rows.push_back(std::move(r));
      }
    }
  }
  std::erase_if(rows, [&](const SummaryRow& r) {
    return !config.geos.empty() &&
           std::find(config.geos.begin(), config.geos.end(), r.geo) ==
               config.geos.end();
  });
  return rows;
}

int cmd_rank(const RunConfig& config) {
  ensure_out_dir(config);
  InputKind kind = common_input_kind(
      config,
      {InputKind::shares, InputKind::series, InputKind::stats,
       InputKind::summary});
  std::vector<SummaryRow> rows = summaries_for_rank(config, kind);

  // Default to the aggregate indicators of the published ranking table.
  std::vector<IndicatorId> wanted = config.indicators;
  if (wanted.empty()) {
    wanted = {IndicatorId::D_INDU, IndicatorId::D_SERV, IndicatorId::D_RETA,
              IndicatorId::D_BUIL, IndicatorId::D_CONS, IndicatorId::D_BUSI,
              IndicatorId::D_TOTAL};
  }
  for (IndicatorId id : wanted) {
    std::vector<SummaryRow> subset;
    for (const SummaryRow& r : rows) {
      if (r.indicator == id) subset.push_back(r);
    }
    if (subset.empty()) {
      std::cerr << "warning: no rows for " << to_string(id) << "; skipped\n";
      continue;
    }
    RankingTable table = rank(std::move(subset));
    const std::string base = "rank_" + std::string(to_string(id));
    if (config.formats.contains("csv")) {
      std::ostringstream out;
      write_ranking_csv(table, out);
      emit(config, base + ".csv", out.str());
    }
    if (config.formats.contains("json")) {
      std::ostringstream out;
      write_ranking_json(table, metadata_of(config), out);
      emit(config, base + ".json", out.str());
    }
  }
  return 0;
}

const IndicatorSeries* find_series(const std::vector<IndicatorSeries>& all,
                                   std::string_view geo, IndicatorId id) {
  for (const IndicatorSeries& s : all) {
    if (s.geo() == geo && s.indicator() == id) return &s;
  }
  return nullptr;
}

int cmd_plot(const RunConfig& config) {
  if (!config.formats.contains("svg")) {
    fail(ErrorKind::config, "plot emits SVG; add svg to --format");
  }
  ensure_out_dir(config);
  InputKind kind =
      common_input_kind(config, {InputKind::shares, InputKind::series});
  // Keep every geo here: the business-vs-consumer chart needs the EU
  // reference line even when --geo narrows the charted countries.
  RunConfig unfiltered = config;
  unfiltered.geos.clear();
  unfiltered.indicators.clear();
  std::vector<IndicatorSeries> all = load_series(unfiltered, kind);
  if (all.empty()) {
    std::cerr << "warning: no series to plot\n";
    return 0;
  }

  std::set<std::string> geos;
  for (const IndicatorSeries& s : all) {
    if (config.geos.empty() ||
        std::find(config.geos.begin(), config.geos.end(), s.geo()) !=
            config.geos.end()) {
      geos.insert(s.geo());
    }
  }

  const svg::LineStyle solid_blue{"#1a56a8", ""};
  const svg::LineStyle dashed_black{"#111111", "7,4"};
  const svg::LineStyle dashed_blue{"#1a56a8", "7,4"};
  const svg::LineStyle dotted_black{"#111111", "2,3"};
  const svg::LineStyle solid_black{"#111111", ""};
  const svg::LineStyle solid_gray{"#777777", ""};

  for (const std::string& geo : geos) {
    // Sector overview: the four business sector aggregates.
    {
      const std::pair<IndicatorId, svg::LineStyle> spec[] = {
          {IndicatorId::D_INDU, solid_blue},
          {IndicatorId::D_SERV, dashed_black},
          {IndicatorId::D_RETA, dashed_blue},
          {IndicatorId::D_BUIL, dotted_black},
      };
      std::vector<svg::ChartLine> lines;
      for (const auto& [id, style] : spec) {
        if (const IndicatorSeries* s = find_series(all, geo, id)) {
          lines.push_back({s, std::string(to_string(id)), style});
        }
      }
      if (lines.empty()) {
        std::cerr << "warning: no sector series for " << geo << "; skipped\n";
      } else {
        emit(config, "sectors_" + geo + ".svg",
             svg::line_chart("Sector disagreement - " + geo, lines));
      }
    }

    // Business vs consumer, with the EU business reference.
    {
      std::vector<svg::ChartLine> lines;
      if (const IndicatorSeries* s =
              find_series(all, geo, IndicatorId::D_BUSI)) {
        lines.push_back({s, "D_BUSI " + geo, solid_black});
      }
      if (const IndicatorSeries* s =
              find_series(all, geo, IndicatorId::D_CONS)) {
        lines.push_back({s, "D_CONS " + geo, dashed_blue});
      }
      if (geo != "EU") {
        if (const IndicatorSeries* s =
                find_series(all, "EU", IndicatorId::D_BUSI)) {
          lines.push_back({s, "D_BUSI EU", dotted_black});
        }
      }
      if (lines.empty()) {
        std::cerr << "warning: no composite series for " << geo
                  << "; skipped\n";
      } else {
        emit(config, "business_vs_consumer_" + geo + ".svg",
             svg::line_chart("Business vs consumer disagreement - " + geo,
                             lines));
      }
    }

    // Question-level detail per survey.
    for (SurveyId survey : kAllSurveys) {
      const svg::LineStyle styles[] = {solid_blue, dashed_black, dashed_blue,
                                       dotted_black, solid_gray};
      std::vector<svg::ChartLine> lines;
      std::size_t i = 0;
      for (IndicatorId id : constituents(sector_indicator(survey))) {
        if (const IndicatorSeries* s = find_series(all, geo, id)) {
          lines.push_back(
              {s, std::string(to_string(id)), styles[i % std::size(styles)]});
        }
        ++i;
      }
      if (!lines.empty()) {
        emit(config,
             "questions_" + geo + "_" + std::string(to_string(survey)) +
                 ".svg",
             svg::line_chart("Question disagreement - " + geo + " " +
                                 std::string(to_string(survey)),
                             lines));
      }
    }
  }
  return 0;
}

int cmd_simulate(const RunConfig& config, const SimulationConfig& sim) {
  ensure_out_dir(config);
  sim.validate();
  std::vector<SamplePoint> samples = sample_metrics(sim);
  ComparisonReport report = compare(samples);
  if (config.formats.contains("json")) {
    std::ostringstream out;
    write_report_json(report, sim, out);
    emit(config, "simulation.json", out.str());
  }
  if (config.formats.contains("csv")) {
    std::ostringstream out;
    write_samples_csv(samples, out);
    emit(config, "simulation_samples.csv", out.str());
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Survey disagreement indicators from business and consumer "
               "tendency survey share data"};
  app.require_subcommand(1);

  RawOpts opts;
  SimulationConfig sim;
  sim.sample_count = 100000;

  CLI::App* validate = app.add_subcommand(
      "validate", "Parse inputs and report coverage and gaps");
  add_common_options(*validate, opts, true);

  CLI::App* compute = app.add_subcommand(
      "compute", "Compute question, sector and composite series");
  add_common_options(*compute, opts, true);

  CLI::App* summarize = app.add_subcommand(
      "summarize", "Mean/min/max summaries of computed series");
  add_common_options(*summarize, opts, true);

  CLI::App* rank_cmd = app.add_subcommand(
      "rank", "Rank geos by average disagreement, ascending");
  add_common_options(*rank_cmd, opts, true);

  CLI::App* plot = app.add_subcommand("plot", "Emit SVG charts");
  add_common_options(*plot, opts, true);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo comparison of dispersion vs discrepancy");
  add_common_options(*simulate, opts, false);
  simulate->add_option("--samples", sim.sample_count, "Sample count")
      ->default_val(100000);
  simulate->add_option("--arity", sim.arity, "Share vector arity")
      ->default_val(3);
  std::string sampler = "uniform";
  simulate->add_option("--sampler", sampler,
                       "Sampler: uniform|neutral")
      ->default_val("uniform");
  simulate->add_option("--alpha", sim.alpha,
                       "Neutral-category concentration (neutral sampler)")
      ->default_val(4.0);

  std::vector<const char*> argv;
  argv.push_back("disagg");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    RunConfig config = resolve(opts);
    if (validate->parsed()) return cmd_validate(config);
    if (compute->parsed()) return cmd_compute(config);
    if (summarize->parsed()) return cmd_summarize(config);
    if (rank_cmd->parsed()) return cmd_rank(config);
    if (plot->parsed()) return cmd_plot(config);
    if (simulate->parsed()) {
      sim.seed = config.seed;
      if (sampler == "uniform") {
        sim.sampler = SamplerKind::uniform_simplex;
      } else if (sampler == "neutral") {
        sim.sampler = SamplerKind::neutral_weighted;
      } else {
        fail(ErrorKind::config,
             "unknown --sampler \"" + sampler + "\" (want uniform|neutral)");
      }
      return cmd_simulate(config, sim);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace disagg

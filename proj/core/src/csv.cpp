#include "disagg/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "disagg/error.hpp"

namespace disagg {

namespace {

// Rows whose raw sum differs from the denominator by more than this ratio
// are flagged renormalized; closer sums count as exact.
constexpr double kExactSumEpsilon = 1e-9;

// A file is percentage-valued when any share exceeds this.
constexpr double kPercentThreshold = 1.5;

[[noreturn]] void fail_at(ErrorKind kind, const std::string& source,
                          std::size_t line_no, const std::string& message) {
  fail(kind, source + ":" + std::to_string(line_no) + ": " + message);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& source,
                    std::size_t line_no) {
  const std::string t = trim(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(value)) {
    fail_at(ErrorKind::parse, source, line_no,
            "not a number: \"" + text + "\"");
  }
  return value;
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  // Strip a UTF-8 BOM on the first line.
  if (!lines.empty() && lines[0].rfind("\xEF\xBB\xBF", 0) == 0) {
    lines[0].erase(0, 3);
  }
  return lines;
}

enum class RowSchema { business, consumer_raw, consumer_reduced };

struct HeaderInfo {
  RowSchema schema;
  std::size_t share_count;
  bool has_coverage;
};

HeaderInfo detect_header(const std::string& header, const std::string& source) {
  std::vector<std::string> cols = split_fields(header);
  for (std::string& c : cols) c = trim(c);
  bool has_coverage = !cols.empty() && cols.back() == "coverage";
  if (has_coverage) cols.pop_back();

  auto matches = [&](std::initializer_list<const char*> want) {
    if (cols.size() != want.size()) return false;
    std::size_t i = 0;
    for (const char* w : want) {
      if (cols[i++] != w) return false;
    }
    return true;
  };

  if (matches({"geo", "survey", "question", "period", "up", "same", "down"})) {
    return {RowSchema::business, 3, has_coverage};
  }
  if (matches({"geo", "survey", "question", "period", "pp", "p", "e", "m",
               "mm", "dk"})) {
    return {RowSchema::consumer_raw, 6, has_coverage};
  }
  if (matches({"geo", "survey", "question", "period", "pp", "p", "e", "m",
               "mm"})) {
    return {RowSchema::consumer_reduced, 5, has_coverage};
  }
  fail(ErrorKind::parse,
       source + ":1: unrecognized header \"" + header + "\"");
}

struct RawRow {
  std::size_t line_no;
  std::string geo;
  SurveyId survey;
  const Question* question;
  Period period;
  std::vector<double> shares;
  std::optional<CoverageFlag> coverage;
};

}  // namespace

Dataset parse_csv(std::istream& in, const ParseOptions& options) {
  const Catalog& catalog =
      options.catalog != nullptr ? *options.catalog : Catalog::standard();
  const std::string& src = options.source_name;

  std::vector<std::string> lines = read_lines(in);
  if (lines.empty()) {
    fail(ErrorKind::parse, src + ": empty input (missing header)");
  }
  const HeaderInfo header = detect_header(lines[0], src);
  const std::size_t expected_fields =
      4 + header.share_count + (header.has_coverage ? 1 : 0);

  if (header.schema == RowSchema::consumer_reduced &&
      options.policies.dk != DontKnowPolicy::drop_renormalize) {
    fail(ErrorKind::config,
         src + ": 5-category consumer input carries already-reduced shares "
               "and requires the drop-renormalize policy");
  }

  // First pass: field-level parsing and vocabulary checks, buffering the raw
  // share values so the percent-vs-fraction decision is made per file.
  std::vector<RawRow> rows;
  bool any_above_threshold = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (trim(lines[i]).empty()) continue;
    std::vector<std::string> fields = split_fields(lines[i]);
    if (fields.size() != expected_fields) {
      fail_at(ErrorKind::parse, src, line_no,
              "expected " + std::to_string(expected_fields) + " fields, got " +
                  std::to_string(fields.size()));
    }

    RawRow row;
    row.line_no = line_no;
    row.geo = trim(fields[0]);
    if (catalog.find_geo(row.geo) == nullptr) {
      fail_at(ErrorKind::vocabulary, src, line_no,
              "unknown geo code \"" + row.geo + "\"");
    }
    const std::string survey_text = trim(fields[1]);
    auto survey = survey_from_string(survey_text);
    if (!survey) {
      fail_at(ErrorKind::vocabulary, src, line_no,
              "unknown survey \"" + survey_text + "\"");
    }
    row.survey = *survey;
    const std::string question_code = trim(fields[2]);
    row.question = catalog.find_question(question_code);
    if (row.question == nullptr) {
      fail_at(ErrorKind::vocabulary, src, line_no,
              "unknown question code \"" + question_code + "\"");
    }
    if (row.question->survey != row.survey) {
      fail_at(ErrorKind::vocabulary, src, line_no,
              "question " + question_code + " belongs to survey " +
                  std::string(to_string(row.question->survey)) + ", not " +
                  survey_text);
    }
    const int schema_arity = header.schema == RowSchema::business ? 3 : 6;
    if (row.question->raw_arity != schema_arity) {
      fail_at(ErrorKind::vocabulary, src, line_no,
              "question " + question_code + " has " +
                  std::to_string(row.question->raw_arity) +
                  " raw categories and does not fit this file's schema");
    }

    try {
      row.period = parse_period(trim(fields[3]));
    } catch (const Error& e) {
      fail_at(ErrorKind::parse, src, line_no, e.what());
    }

    for (std::size_t f = 0; f < header.share_count; ++f) {
      double v = parse_double(fields[4 + f], src, line_no);
      if (v > kPercentThreshold) any_above_threshold = true;
      row.shares.push_back(v);
    }
    if (header.has_coverage) {
      const std::string flag_text = trim(fields.back());
      row.coverage = coverage_from_string(flag_text);
      if (!row.coverage) {
        fail_at(ErrorKind::parse, src, line_no,
                "unknown coverage flag \"" + flag_text + "\"");
      }
    }
    rows.push_back(std::move(row));
  }

  const double denominator = any_above_threshold ? 100.0 : 1.0;
  const double band = options.policies.sum_band;

  Dataset dataset(options.policies, src);
  for (RawRow& row : rows) {
    if (options.from && row.period < *options.from) continue;
    if (options.to && *options.to < row.period) continue;

    double sum = std::accumulate(row.shares.begin(), row.shares.end(), 0.0);
    for (double v : row.shares) {
      if (v < 0.0) {
        fail_at(ErrorKind::validation, src, row.line_no,
                "negative share value " + std::to_string(v));
      }
      if (v > denominator * (1.0 + band)) {
        fail_at(ErrorKind::validation, src, row.line_no,
                "share value " + std::to_string(v) + " above the " +
                    (denominator > 1.0 ? "percentage" : "fraction") + " scale");
      }
    }
    if (sum < denominator * (1.0 - band) || sum > denominator * (1.0 + band)) {
      fail_at(ErrorKind::validation, src, row.line_no,
              "share sum " + std::to_string(sum) + " outside " +
                  std::to_string(denominator * (1.0 - band)) + ".." +
                  std::to_string(denominator * (1.0 + band)));
    }
    CoverageFlag flag =
        std::abs(sum - denominator) <= kExactSumEpsilon * denominator
            ? CoverageFlag::complete
            : CoverageFlag::renormalized;
    if (row.coverage) flag = *row.coverage;

    std::vector<double> fractions = std::move(row.shares);
    if (denominator != 1.0) {
      for (double& v : fractions) v /= denominator;
    }

    try {
      SharesVector shares{std::move(fractions)};
      if (header.schema == RowSchema::consumer_raw) {
        shares = apply_dont_know_policy(shares, options.policies.dk);
      }
      dataset.add(Observation{row.geo, row.question->code, row.period,
                              std::move(shares), flag});
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::duplicate_key) {
        fail_at(e.kind(), src, row.line_no, e.what());
      }
      fail_at(e.kind() == ErrorKind::degenerate_distribution
                  ? ErrorKind::degenerate_distribution
                  : ErrorKind::validation,
              src, row.line_no, e.what());
    }
  }
  return dataset;
}

Dataset parse_csv_file(const std::filesystem::path& path,
                       ParseOptions options) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorKind::io, "cannot open input file: " + path.string());
  }
  if (options.source_name == "<stream>") options.source_name = path.string();
  return parse_csv(in, options);
}

namespace {

std::string format_share(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_rows(const Dataset& d, std::ostream& out, bool consumer,
                std::size_t arity) {
  for (const auto& [key, obs] : d.observations()) {
    const Question* q = Catalog::standard().find_question(obs.question);
    if (q == nullptr) {
      fail(ErrorKind::io, "question " + obs.question +
                              " is not in the standard catalog; cannot serialize");
    }
    const bool is_consumer = q->survey == SurveyId::CONS;
    if (is_consumer != consumer) continue;
    if (consumer && obs.shares.arity() != arity) {
      fail(ErrorKind::io, "dataset mixes consumer arities; cannot serialize");
    }
    out << obs.geo << ',' << to_string(q->survey) << ',' << obs.question << ','
        << obs.period.str();
    for (double v : obs.shares.values()) out << ',' << format_share(v);
    out << ',' << to_string(obs.coverage) << '\n';
  }
}

}  // namespace

void write_business_csv(const Dataset& d, std::ostream& out) {
  out << "geo,survey,question,period,up,same,down,coverage\n";
  write_rows(d, out, /*consumer=*/false, 3);
}

void write_consumer_csv(const Dataset& d, std::ostream& out) {
  std::size_t arity =
      d.policies().dk == DontKnowPolicy::drop_renormalize ? 5 : 6;
  for (const auto& [key, obs] : d.observations()) {
    const Question* q = Catalog::standard().find_question(obs.question);
    if (q != nullptr && q->survey == SurveyId::CONS) {
      arity = obs.shares.arity();
      break;
    }
  }
  out << (arity == 5 ? "geo,survey,question,period,pp,p,e,m,mm,coverage\n"
                     : "geo,survey,question,period,pp,p,e,m,mm,dk,coverage\n");
  write_rows(d, out, /*consumer=*/true, arity);
}

std::string_view to_string(StatKind stat) {
  switch (stat) {
    case StatKind::mean: return "mean";
    case StatKind::min: return "min";
    case StatKind::max: return "max";
  }
  fail(ErrorKind::vocabulary, "unknown stat kind");
}

std::vector<StatRow> parse_stats_csv(std::istream& in,
                                     const std::string& source_name) {
  std::vector<std::string> lines = read_lines(in);
  if (lines.empty() || split_fields(lines[0]).size() < 4 ||
      trim(split_fields(lines[0])[0]) != "geo") {
    fail(ErrorKind::parse,
         source_name + ":1: expected header geo,indicator,stat,value");
  }
  std::vector<StatRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (trim(lines[i]).empty()) continue;
    std::vector<std::string> fields = split_fields(lines[i]);
    if (fields.size() < 4) {
      fail_at(ErrorKind::parse, source_name, line_no, "expected 4 fields");
    }
    StatRow row;
    row.geo = trim(fields[0]);
    if (Catalog::standard().find_geo(row.geo) == nullptr) {
      fail_at(ErrorKind::vocabulary, source_name, line_no,
              "unknown geo code \"" + row.geo + "\"");
    }
    auto indicator = indicator_from_string(trim(fields[1]));
    if (!indicator) {
      fail_at(ErrorKind::vocabulary, source_name, line_no,
              "unknown indicator \"" + trim(fields[1]) + "\"");
    }
    row.indicator = *indicator;
    const std::string stat_text = trim(fields[2]);
    if (stat_text == "mean") {
      row.stat = StatKind::mean;
    } else if (stat_text == "min") {
      row.stat = StatKind::min;
    } else if (stat_text == "max") {
      row.stat = StatKind::max;
    } else {
      fail_at(ErrorKind::vocabulary, source_name, line_no,
              "unknown stat \"" + stat_text + "\" (want mean|min|max)");
    }
    // Published tables use a decimal comma; everything past the third comma
    // is the value, with ',' read as '.'.
    std::string value_text = fields[3];
    for (std::size_t f = 4; f < fields.size(); ++f) {
      value_text += "." + fields[f];
    }
    for (char& ch : value_text) {
      if (ch == ',') ch = '.';
    }
    row.value = parse_double(value_text, source_name, line_no);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SummaryRow> parse_summary_csv(std::istream& in,
                                          const std::string& source_name) {
  std::vector<std::string> lines = read_lines(in);
  if (lines.empty() ||
      trim(lines[0]) != "geo,indicator,mean,min,max,n_obs") {
    fail(ErrorKind::parse,
         source_name + ":1: expected header geo,indicator,mean,min,max,n_obs");
  }
  std::vector<SummaryRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (trim(lines[i]).empty()) continue;
    std::vector<std::string> fields = split_fields(lines[i]);
    if (fields.size() != 6) {
      fail_at(ErrorKind::parse, source_name, line_no, "expected 6 fields");
    }
    SummaryRow row;
    row.geo = trim(fields[0]);
    auto indicator = indicator_from_string(trim(fields[1]));
    if (!indicator) {
      fail_at(ErrorKind::vocabulary, source_name, line_no,
              "unknown indicator \"" + trim(fields[1]) + "\"");
    }
    row.indicator = *indicator;
    row.mean = parse_double(fields[2], source_name, line_no);
    row.min = parse_double(fields[3], source_name, line_no);
    row.max = parse_double(fields[4], source_name, line_no);
    row.n_obs = static_cast<std::int64_t>(
        parse_double(fields[5], source_name, line_no));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<IndicatorSeries> parse_series_csv(std::istream& in,
                                              const std::string& source_name) {
  std::vector<std::string> lines = read_lines(in);
  if (lines.empty() || trim(lines[0]) != "geo,indicator,period,value") {
    fail(ErrorKind::parse,
         source_name + ":1: expected header geo,indicator,period,value");
  }
  std::vector<IndicatorSeries> series;
  auto find_series = [&](const std::string& geo,
                         IndicatorId id) -> IndicatorSeries& {
    for (IndicatorSeries& s : series) {
      if (s.geo() == geo && s.indicator() == id) return s;
    }
    return series.emplace_back(geo, id);
  };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (trim(lines[i]).empty()) continue;
    std::vector<std::string> fields = split_fields(lines[i]);
    if (fields.size() != 4) {
      fail_at(ErrorKind::parse, source_name, line_no, "expected 4 fields");
    }
    auto indicator = indicator_from_string(trim(fields[1]));
    if (!indicator) {
      fail_at(ErrorKind::vocabulary, source_name, line_no,
              "unknown indicator \"" + trim(fields[1]) + "\"");
    }
    try {
      find_series(trim(fields[0]), *indicator)
          .append({parse_period(trim(fields[2])),
                   parse_double(fields[3], source_name, line_no), 1});
    } catch (const Error& e) {
      fail_at(e.kind() == ErrorKind::parse ? ErrorKind::parse
                                           : ErrorKind::validation,
              source_name, line_no, e.what());
    }
  }
  return series;
}

}  // namespace disagg

#include <doctest.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "disagg/cli.hpp"
#include "helpers.hpp"

using namespace disagg;

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& what) {
  std::size_t count = 0;
  for (std::size_t pos = text.find(what); pos != std::string::npos;
       pos = text.find(what, pos + what.size())) {
    ++count;
  }
  return count;
}

std::string biz_fixture() {
  return (test_helpers::data_dir() / "sample_business.csv").string();
}
std::string cons_fixture() {
  return (test_helpers::data_dir() / "sample_consumer.csv").string();
}
std::string stats_fixture() {
  return (test_helpers::data_dir() / "ec_survey_stats.csv").string();
}

}  // namespace

TEST_CASE("compute emits one series per geo and indicator") {
  auto out = test_helpers::fresh_temp_dir("compute");
  int rc = run_cli({"compute", "--input", biz_fixture(), "--input",
                    cons_fixture(), "--out", out.string()});
  REQUIRE(rc == 0);

  std::string csv = test_helpers::read_file(out / "series.csv");
  std::set<std::string> series_keys;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "geo,indicator,period,value");
  while (std::getline(in, line)) {
    series_keys.insert(line.substr(0, line.find(',', line.find(',') + 1)));
  }
  CHECK(series_keys.size() == 2 * 24);
  CHECK(std::filesystem::exists(out / "series.json"));
  std::filesystem::remove_all(out);
}

TEST_CASE("unreadable inputs exit nonzero") {
  auto out = test_helpers::fresh_temp_dir("badinput");
  CHECK(run_cli({"compute", "--input", "/nonexistent/file.csv", "--out",
                 out.string()}) != 0);
  std::filesystem::remove_all(out);
}

TEST_CASE("unknown indicator ids are rejected") {
  auto out = test_helpers::fresh_temp_dir("badind");
  CHECK(run_cli({"rank", "--input", stats_fixture(), "--indicator", "D_FOO",
                 "--out", out.string()}) != 0);
  std::filesystem::remove_all(out);
}

TEST_CASE("rank over the published means puts Portugal first and the UK last") {
  auto out = test_helpers::fresh_temp_dir("rank");
  int rc = run_cli({"rank", "--input", stats_fixture(), "--indicator",
                    "D_INDU", "--indicator", "D_TOTAL", "--out", out.string(),
                    "--format", "csv"});
  REQUIRE(rc == 0);
  for (const char* name : {"rank_D_INDU.csv", "rank_D_TOTAL.csv"}) {
    std::string csv = test_helpers::read_file(out / name);
    std::istringstream in(csv);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    REQUIRE(lines.size() == 1 + 34);
    CHECK(lines[1].find(",1,PT,") != std::string::npos);
    CHECK(lines[34].find(",34,GB,") != std::string::npos);
  }
  std::filesystem::remove_all(out);
}

TEST_CASE("summarize emits one row per computed series") {
  auto out = test_helpers::fresh_temp_dir("summ");
  int rc = run_cli({"summarize", "--input", biz_fixture(), "--input",
                    cons_fixture(), "--out", out.string(), "--format", "csv"});
  REQUIRE(rc == 0);
  std::string csv = test_helpers::read_file(out / "summary.csv");
  CHECK(count_occurrences(csv, "\n") == 1 + 2 * 24);
  std::filesystem::remove_all(out);
}

TEST_CASE("plot draws the documented line sets") {
  auto out = test_helpers::fresh_temp_dir("plot");
  int rc = run_cli({"plot", "--input", biz_fixture(), "--input",
                    cons_fixture(), "--out", out.string()});
  REQUIRE(rc == 0);

  std::string sectors = test_helpers::read_file(out / "sectors_BE.svg");
  CHECK(count_occurrences(sectors, "<polyline") == 4);

  std::string bc = test_helpers::read_file(out / "business_vs_consumer_BE.svg");
  CHECK(count_occurrences(bc, "<polyline") == 3);  // BE busi, BE cons, EU busi

  // the EU chart does not duplicate its own reference line
  std::string eu = test_helpers::read_file(out / "business_vs_consumer_EU.svg");
  CHECK(count_occurrences(eu, "<polyline") == 2);

  // question charts exist per survey
  CHECK(std::filesystem::exists(out / "questions_BE_INDU.svg"));
  CHECK(std::filesystem::exists(out / "questions_BE_CONS.svg"));
  std::filesystem::remove_all(out);
}

TEST_CASE("plot on an empty dataset warns and writes nothing") {
  auto out = test_helpers::fresh_temp_dir("plotempty");
  auto empty = out / "empty.csv";
  {
    std::ofstream f(empty);
    f << "geo,survey,question,period,up,same,down\n";
  }
  int rc = run_cli({"plot", "--input", empty.string(), "--out", out.string()});
  CHECK(rc == 0);
  std::size_t svg_count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(out)) {
    if (entry.path().extension() == ".svg") ++svg_count;
  }
  CHECK(svg_count == 0);
  std::filesystem::remove_all(out);
}

TEST_CASE("geo filter narrows outputs but keeps the EU reference") {
  auto out = test_helpers::fresh_temp_dir("geofilter");
  int rc = run_cli({"plot", "--input", biz_fixture(), "--input",
                    cons_fixture(), "--geo", "BE", "--out", out.string()});
  REQUIRE(rc == 0);
  CHECK(std::filesystem::exists(out / "sectors_BE.svg"));
  CHECK_FALSE(std::filesystem::exists(out / "sectors_EU.svg"));
  std::string bc = test_helpers::read_file(out / "business_vs_consumer_BE.svg");
  CHECK(count_occurrences(bc, "<polyline") == 3);
  std::filesystem::remove_all(out);
}

TEST_CASE("validate reports coverage and gaps") {
  auto out = test_helpers::fresh_temp_dir("validate");
  CHECK(run_cli({"validate", "--input", biz_fixture(), "--input",
                 cons_fixture()}) == 0);
  CHECK(run_cli({"validate", "--input",
                 (test_helpers::data_dir() / "uk_truncation_business.csv")
                     .string(),
                 "--to", "2020-06"}) == 0);
  std::filesystem::remove_all(out);
}

TEST_CASE("identical invocations produce byte-identical outputs") {
  auto out_a = test_helpers::fresh_temp_dir("det_a");
  auto out_b = test_helpers::fresh_temp_dir("det_b");
  for (const auto& dir : {out_a, out_b}) {
    REQUIRE(run_cli({"compute", "--input", biz_fixture(), "--input",
                     cons_fixture(), "--out", dir.string()}) == 0);
    REQUIRE(run_cli({"plot", "--input", biz_fixture(), "--input",
                     cons_fixture(), "--out", dir.string()}) == 0);
    REQUIRE(run_cli({"simulate", "--samples", "2000", "--seed", "7", "--out",
                     dir.string()}) == 0);
  }
  std::size_t compared = 0;
  for (const auto& entry : std::filesystem::directory_iterator(out_a)) {
    const auto name = entry.path().filename();
    CHECK(test_helpers::read_file(out_a / name) ==
          test_helpers::read_file(out_b / name));
    ++compared;
  }
  CHECK(compared > 10);
  std::filesystem::remove_all(out_a);
  std::filesystem::remove_all(out_b);
}

TEST_CASE("simulate rejects a zero sample count") {
  auto out = test_helpers::fresh_temp_dir("simzero");
  CHECK(run_cli({"simulate", "--samples", "0", "--out", out.string()}) != 0);
  std::filesystem::remove_all(out);
}

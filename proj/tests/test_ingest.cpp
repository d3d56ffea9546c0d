#include <doctest.h>

#include <random>
#include <sstream>

#include "disagg/csv.hpp"
#include "disagg/error.hpp"
#include "helpers.hpp"

using namespace disagg;

namespace {

Dataset parse(const std::string& text, ParseOptions options = {}) {
  std::istringstream in(text);
  return parse_csv(in, options);
}

const Observation& only(const Dataset& d) {
  REQUIRE(d.size() == 1);
  return d.observations().begin()->second;
}

constexpr const char* kBizHeader = "geo,survey,question,period,up,same,down\n";
constexpr const char* kConsHeader =
    "geo,survey,question,period,pp,p,e,m,mm,dk\n";

}  // namespace

TEST_CASE("business rows parse into fraction shares") {
  Dataset d = parse(std::string(kBizHeader) +
                    "BE,INDU,I5,2020-03,33.3,33.3,33.4\n");
  const Observation& obs = only(d);
  CHECK(obs.geo == "BE");
  CHECK(obs.question == "I5");
  CHECK(obs.period == Period{2020, 3});
  CHECK(obs.shares.arity() == 3);
  CHECK(obs.shares[0] == doctest::Approx(1.0 / 3).epsilon(1e-2));
  CHECK(obs.shares.sum() == doctest::Approx(1.0).epsilon(1e-9));
  // 33.3 + 33.3 + 33.4 sums to the denominator exactly, so nothing was
  // rescaled.
  CHECK(obs.coverage == CoverageFlag::complete);
}

TEST_CASE("off-denominator sums inside the band are rescaled and flagged") {
  Dataset d = parse(std::string(kBizHeader) +
                    "BE,INDU,I5,2020-03,33.3,33.3,33.3\n");
  const Observation& obs = only(d);
  CHECK(obs.coverage == CoverageFlag::renormalized);
  CHECK(obs.shares[0] == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(obs.shares.sum() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sums outside the tolerance are row-level errors") {
  CHECK_THROWS_WITH_AS(
      parse(std::string(kBizHeader) + "BE,INDU,I5,2020-03,40,40,10\n"),
      doctest::Contains(":2:"), Error);
  // 2% of 100 exactly at the edge still passes
  CHECK_NOTHROW(
      parse(std::string(kBizHeader) + "BE,INDU,I5,2020-03,40,40,18\n"));
}

TEST_CASE("fraction files are detected per file") {
  Dataset d = parse(std::string(kBizHeader) +
                    "BE,INDU,I5,2020-03,0.25,0.5,0.25\n"
                    "BE,INDU,I5,2020-04,0.3,0.45,0.25\n");
  CHECK(d.size() == 2);
  for (const auto& [key, obs] : d.observations()) {
    CHECK(obs.coverage == CoverageFlag::complete);
    CHECK(obs.shares.sum() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("consumer rows honor the drop-renormalize policy") {
  Dataset d = parse(std::string(kConsHeader) +
                    "BE,CONS,C6,2020-03,5,20,40,20,10,5\n");
  const Observation& obs = only(d);
  CHECK(obs.shares.arity() == 5);
  CHECK(obs.shares[0] == doctest::Approx(5.0 / 95).epsilon(1e-12));
  CHECK(obs.shares[1] == doctest::Approx(20.0 / 95).epsilon(1e-12));
  CHECK(obs.shares[2] == doctest::Approx(40.0 / 95).epsilon(1e-12));
  CHECK(obs.shares[3] == doctest::Approx(20.0 / 95).epsilon(1e-12));
  CHECK(obs.shares[4] == doctest::Approx(10.0 / 95).epsilon(1e-12));
}

TEST_CASE("consumer rows keep six categories under include-as-category") {
  ParseOptions options;
  options.policies.dk = DontKnowPolicy::include_as_category;
  Dataset d = parse(std::string(kConsHeader) +
                        "BE,CONS,C6,2020-03,5,20,40,20,10,5\n",
                    options);
  const Observation& obs = only(d);
  CHECK(obs.shares.arity() == 6);
  CHECK(obs.shares[5] == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("don't-know policy on share vectors") {
  SharesVector raw({0.1, 0.2, 0.4, 0.2, 0.05, 0.05});
  SharesVector dropped = apply_dont_know_policy(raw, DontKnowPolicy::drop_renormalize);
  REQUIRE(dropped.arity() == 5);
  CHECK(dropped[0] == doctest::Approx(0.1 / 0.95).epsilon(1e-12));
  CHECK(dropped[1] == doctest::Approx(0.2 / 0.95).epsilon(1e-12));
  CHECK(dropped[2] == doctest::Approx(0.4 / 0.95).epsilon(1e-12));
  CHECK(dropped[3] == doctest::Approx(0.2 / 0.95).epsilon(1e-12));
  CHECK(dropped[4] == doctest::Approx(0.05 / 0.95).epsilon(1e-12));

  SharesVector no_dk({0.2, 0.2, 0.2, 0.2, 0.2, 0.0});
  SharesVector same = apply_dont_know_policy(no_dk, DontKnowPolicy::drop_renormalize);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(same[i] == doctest::Approx(0.2).epsilon(1e-12));
  }

  SharesVector all_dk({0.0, 0.0, 0.0, 0.0, 0.0, 1.0});
  CHECK_THROWS_AS(apply_dont_know_policy(all_dk, DontKnowPolicy::drop_renormalize),
                  Error);

  SharesVector untouched =
      apply_dont_know_policy(raw, DontKnowPolicy::include_as_category);
  CHECK(untouched.arity() == 6);

  // Already-reduced vectors are rejected, never silently reprocessed.
  SharesVector reduced({0.2, 0.2, 0.2, 0.2, 0.2});
  CHECK_THROWS_AS(
      apply_dont_know_policy(reduced, DontKnowPolicy::drop_renormalize), Error);
}

TEST_CASE("degenerate all-don't-know consumer rows fail with row context") {
  CHECK_THROWS_WITH_AS(parse(std::string(kConsHeader) +
                             "BE,CONS,C6,2020-03,0,0,0,0,0,100\n"),
                       doctest::Contains(":2:"), Error);
}

TEST_CASE("vocabulary violations carry the offending token") {
  CHECK_THROWS_WITH_AS(
      parse(std::string(kBizHeader) + "XX,INDU,I5,2020-03,30,40,30\n"),
      doctest::Contains("XX"), Error);
  CHECK_THROWS_WITH_AS(
      parse(std::string(kBizHeader) + "BE,INDU,I9,2020-03,30,40,30\n"),
      doctest::Contains("I9"), Error);
  // question/survey mismatch
  CHECK_THROWS_AS(
      parse(std::string(kBizHeader) + "BE,INDU,S3,2020-03,30,40,30\n"), Error);
  // consumer question cannot appear in a business file
  CHECK_THROWS_AS(
      parse(std::string(kBizHeader) + "BE,CONS,C6,2020-03,30,40,30\n"), Error);
  // malformed period
  CHECK_THROWS_WITH_AS(
      parse(std::string(kBizHeader) + "BE,INDU,I5,2020-13,30,40,30\n"),
      doctest::Contains("2020-13"), Error);
}

TEST_CASE("duplicate keys inside one file are rejected") {
  CHECK_THROWS_WITH_AS(parse(std::string(kBizHeader) +
                             "BE,INDU,I5,2020-03,30,40,30\n"
                             "BE,INDU,I5,2020-03,31,39,30\n"),
                       doctest::Contains("duplicate"), Error);
}

TEST_CASE("unknown headers are rejected") {
  CHECK_THROWS_AS(parse("a,b,c\n1,2,3\n"), Error);
  CHECK_THROWS_AS(parse(""), Error);
}

TEST_CASE("reduced consumer files require the drop policy") {
  ParseOptions options;
  options.policies.dk = DontKnowPolicy::include_as_category;
  CHECK_THROWS_AS(parse("geo,survey,question,period,pp,p,e,m,mm\n"
                        "BE,CONS,C6,2020-03,0.1,0.2,0.4,0.2,0.1\n",
                        options),
                  Error);
  // With drop-renormalize the shares are taken as final.
  Dataset d = parse(
      "geo,survey,question,period,pp,p,e,m,mm\n"
      "BE,CONS,C6,2020-03,0.1,0.2,0.4,0.2,0.1\n");
  CHECK(only(d).shares.arity() == 5);
}

TEST_CASE("period filter drops rows outside the range") {
  ParseOptions options;
  options.from = Period{2020, 2};
  options.to = Period{2020, 2};
  Dataset d = parse(std::string(kBizHeader) +
                        "BE,INDU,I5,2020-01,30,40,30\n"
                        "BE,INDU,I5,2020-02,31,39,30\n"
                        "BE,INDU,I5,2020-03,32,38,30\n",
                    options);
  CHECK(d.size() == 1);
  CHECK(only(d).period == Period{2020, 2});
}

TEST_CASE("dataset merge joins disjoint keys and rejects collisions") {
  Dataset a = parse(std::string(kBizHeader) + "BE,INDU,I5,2020-01,30,40,30\n");
  Dataset b = parse(std::string(kBizHeader) + "BE,INDU,I5,2020-02,30,40,30\n");
  a.merge(b);
  CHECK(a.size() == 2);
  CHECK_THROWS_AS(a.merge(b), Error);

  Dataset other_policy{
      IngestPolicies{DontKnowPolicy::include_as_category,
                     SharesVector::kSumBand},
      ""};
  CHECK_THROWS_AS(other_policy.merge(a), Error);
}

TEST_CASE("dataset dumps re-parse to identical observations") {
  // Mixed flags and both schema families.
  Dataset original = parse(std::string(kBizHeader) +
                           "BE,INDU,I5,2020-01,33.3,33.3,33.3\n"
                           "BE,INDU,I6,2020-01,25,50,25\n"
                           "EU,BUIL,B4,2020-02,40.1,39.8,20.0\n");
  Dataset consumers = parse(std::string(kConsHeader) +
                            "BE,CONS,C6,2020-03,5,20,40,20,10,5\n"
                            "EU,CONS,C2,2020-03,4,16,60.2,14,3,2.8\n");
  original.merge(consumers);

  std::ostringstream biz, cons;
  write_business_csv(original, biz);
  write_consumer_csv(original, cons);

  Dataset reparsed = parse(biz.str());
  reparsed.merge(parse(cons.str()));

  REQUIRE(reparsed.size() == original.size());
  auto it = original.observations().begin();
  auto jt = reparsed.observations().begin();
  for (; it != original.observations().end(); ++it, ++jt) {
    CHECK(it->second.geo == jt->second.geo);
    CHECK(it->second.question == jt->second.question);
    CHECK(it->second.period == jt->second.period);
    CHECK(it->second.coverage == jt->second.coverage);
    REQUIRE(it->second.shares.arity() == jt->second.shares.arity());
    for (std::size_t i = 0; i < it->second.shares.arity(); ++i) {
      CHECK(std::abs(it->second.shares[i] - jt->second.shares[i]) < 1e-9);
    }
  }
}

TEST_CASE("fuzzed valid rows always yield valid observations") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 33);
  const Catalog& catalog = Catalog::standard();

  std::ostringstream file;
  file << kBizHeader;
  const char* questions[] = {"I5", "I6", "I7", "S3", "S5", "S6",
                             "R3", "R4", "R5", "R6", "B4", "B5"};
  for (const char* q : questions) {
    // one row per month keeps (question, period) pairs unique
    for (int m = 1; m <= 10; ++m) {
      double a = unif(rng), b = unif(rng), c = unif(rng);
      double total = a + b + c;
      // scale to a percentage row with a slightly-off sum
      double scale = 100.0 * (0.99 + 0.02 * unif(rng)) / total;
      file << catalog.geos()[pick(rng)].code << ','
           << to_string(catalog.find_question(q)->survey) << ',' << q << ','
           << Period{2019, m}.str() << ',' << a * scale << ',' << b * scale
           << ',' << c * scale << '\n';
    }
  }
  std::istringstream in(file.str());
  Dataset d = parse_csv(in, {});
  for (const auto& [key, obs] : d.observations()) {
    CHECK(obs.shares.sum() == doctest::Approx(1.0).epsilon(1e-9));
    for (double v : obs.shares.values()) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("missing report lists the gap months inside the range") {
  Dataset complete = parse(std::string(kBizHeader) +
                           "BE,INDU,I5,2020-01,30,40,30\n"
                           "BE,INDU,I5,2020-02,30,40,30\n"
                           "BE,INDU,I5,2020-03,30,40,30\n");
  CHECK(missing_report(complete, {2020, 1}, {2020, 3}).empty());

  Dataset gapped = parse(std::string(kBizHeader) +
                         "BE,INDU,I5,2020-01,30,40,30\n"
                         "BE,INDU,I5,2020-03,30,40,30\n");
  auto report = missing_report(gapped, {2020, 1}, {2020, 3});
  REQUIRE(report.size() == 1);
  CHECK(report[0].geo == "BE");
  CHECK(report[0].question == "I5");
  REQUIRE(report[0].missing.size() == 1);
  CHECK(report[0].missing[0] == Period{2020, 2});
}

TEST_CASE("truncated building series reports a gap against the range end") {
  Dataset d = parse_csv_file(test_helpers::data_dir() /
                             "uk_truncation_business.csv");
  auto report = missing_report(d, {2019, 9}, {2020, 6});
  bool found_b4 = false;
  for (const GapEntry& gap : report) {
    if (gap.geo == "GB" && gap.question == "B4") {
      found_b4 = true;
      CHECK(gap.last_available == Period{2019, 11});
      CHECK(gap.missing.size() == 7);  // 2019-12 .. 2020-06
      CHECK(gap.missing.front() == Period{2019, 12});
      CHECK(gap.missing.back() == Period{2020, 6});
    }
  }
  CHECK(found_b4);
}

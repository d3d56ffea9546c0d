#pragma once

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace disagg {

// The five monthly tendency surveys of the EC joint harmonised programme.
enum class SurveyId { INDU, SERV, RETA, BUIL, CONS };

inline constexpr std::array<SurveyId, 5> kAllSurveys = {
    SurveyId::INDU, SurveyId::SERV, SurveyId::RETA, SurveyId::BUIL,
    SurveyId::CONS};

std::string_view to_string(SurveyId survey);
std::optional<SurveyId> survey_from_string(std::string_view text);

// Calendar month, totally ordered, iterable month by month.
struct Period {
  int year = 0;
  int month = 0;  // 1..12

  auto operator<=>(const Period&) const = default;

  Period next() const;
  std::string str() const;  // "YYYY-MM"
};

// Accepts "YYYY-MM" and the "YYYY.M<m>" style used in survey releases.
Period parse_period(std::string_view text);

// Signed month difference b - a; zero when equal.
int months_between(Period a, Period b);

// Inclusive [first, last]; empty when first > last.
std::vector<Period> period_range(Period first, Period last);

struct Question {
  std::string code;  // "I5" .. "C9"
  SurveyId survey = SurveyId::INDU;
  std::string description;
  // Response categories in the raw data: 3 for business questions,
  // 6 for consumer questions (5 substantive plus don't-know).
  int raw_arity = 3;
};

struct Geo {
  std::string code;  // ISO 3166-1 alpha-2, plus "EU" and "EA"
  std::string name;
  // EU and EA series are published already aggregated across members.
  bool pre_aggregated = false;
};

// The fixed vocabulary of surveys, questions and geographies. The built-in
// table is frozen; with_question() derives an extended catalog for datasets
// that carry additional (non-EC) question codes.
class Catalog {
 public:
  static const Catalog& standard();

  std::span<const Question> questions() const { return questions_; }
  std::vector<const Question*> questions_of(SurveyId survey) const;
  const Question* find_question(std::string_view code) const;

  std::span<const Geo> geos() const { return geos_; }
  const Geo* find_geo(std::string_view code) const;

  Catalog with_question(Question extra) const;

 private:
  Catalog() = default;

  std::vector<Question> questions_;
  std::vector<Geo> geos_;
};

}  // namespace disagg

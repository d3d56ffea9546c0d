#include "disagg/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "disagg/error.hpp"

namespace disagg {

std::string_view to_string(SurveyId survey) {
  switch (survey) {
    case SurveyId::INDU: return "INDU";
    case SurveyId::SERV: return "SERV";
    case SurveyId::RETA: return "RETA";
    case SurveyId::BUIL: return "BUIL";
    case SurveyId::CONS: return "CONS";
  }
  fail(ErrorKind::vocabulary, "unknown survey id");
}

std::optional<SurveyId> survey_from_string(std::string_view text) {
  for (SurveyId s : kAllSurveys) {
    if (text == to_string(s)) return s;
  }
  return std::nullopt;
}

Period Period::next() const {
  return month == 12 ? Period{year + 1, 1} : Period{year, month + 1};
}

std::string Period::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  return buf;
}

namespace {

std::optional<int> parse_int(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace

Period parse_period(std::string_view text) {
  // "YYYY-MM" or "YYYY.M<m>"
  std::optional<int> year, month;
  if (text.size() >= 6 && text[4] == '-') {
    year = parse_int(text.substr(0, 4));
    month = parse_int(text.substr(5));
  } else if (text.size() >= 6 && text[4] == '.' &&
             (text[5] == 'M' || text[5] == 'm')) {
    year = parse_int(text.substr(0, 4));
    month = parse_int(text.substr(6));
  }
  if (!year || !month) {
    fail(ErrorKind::parse,
         "malformed period \"" + std::string(text) + "\" (want YYYY-MM)");
  }
  if (*month < 1 || *month > 12) {
    fail(ErrorKind::parse, "invalid month in period \"" + std::string(text) + "\"");
  }
  return Period{*year, *month};
}

int months_between(Period a, Period b) {
  return (b.year - a.year) * 12 + (b.month - a.month);
}

std::vector<Period> period_range(Period first, Period last) {
  std::vector<Period> out;
  for (Period p = first; p <= last; p = p.next()) out.push_back(p);
  return out;
}

const Catalog& Catalog::standard() {
  static const Catalog instance = [] {
    Catalog c;
    c.questions_ = {
        {"I5", SurveyId::INDU, "Production expectations for the months ahead", 3},
        {"I6", SurveyId::INDU, "Selling price expectations over the next 3 months", 3},
        {"I7", SurveyId::INDU, "Employment expectations over the next 3 months", 3},
        {"S3", SurveyId::SERV, "Expectation of the demand over the next 3 months", 3},
        {"S5", SurveyId::SERV, "Expectations of the employment over the next 3 months", 3},
        {"S6", SurveyId::SERV, "Expectations of the prices over the next 3 months", 3},
        {"R3", SurveyId::RETA, "Orders expectations over the next 3 months", 3},
        {"R4", SurveyId::RETA, "Business activity expectations over the next 3 months", 3},
        {"R5", SurveyId::RETA, "Employment expectations over the next 3 months", 3},
        {"R6", SurveyId::RETA, "Prices expectations over the next 3 months", 3},
        {"B4", SurveyId::BUIL, "Employment expectations over the next 3 months", 3},
        {"B5", SurveyId::BUIL, "Prices expectations over the next 3 months", 3},
        {"C2", SurveyId::CONS, "Financial situation over next 12 months", 6},
        {"C4", SurveyId::CONS, "General economic situation over next 12 months", 6},
        {"C6", SurveyId::CONS, "Price trends over next 12 months", 6},
        {"C7", SurveyId::CONS, "Unemployment expectations over next 12 months", 6},
        {"C9", SurveyId::CONS, "Major purchases over next 12 months", 6},
    };
    c.geos_ = {
        {"BE", "Belgium", false},
        {"BG", "Bulgaria", false},
        {"CZ", "Czech Republic", false},
        {"DK", "Denmark", false},
        {"DE", "Germany", false},
        {"EE", "Estonia", false},
        {"IE", "Ireland", false},
        {"GR", "Greece", false},
        {"ES", "Spain", false},
        {"FR", "France", false},
        {"HR", "Croatia", false},
        {"IT", "Italy", false},
        {"CY", "Cyprus", false},
        {"LV", "Latvia", false},
        {"LT", "Lithuania", false},
        {"HU", "Hungary", false},
        {"MT", "Malta", false},
        {"NL", "Netherlands", false},
        {"AT", "Austria", false},
        {"PL", "Poland", false},
        {"PT", "Portugal", false},
        {"RO", "Romania", false},
        {"SI", "Slovenia", false},
        {"SK", "Slovakia", false},
        {"FI", "Finland", false},
        {"SE", "Sweden", false},
        {"GB", "United Kingdom", false},
        {"ME", "Montenegro", false},
        {"MK", "North Macedonia", false},
        {"AL", "Albania", false},
        {"RS", "Serbia", false},
        {"TR", "Turkey", false},
        {"EU", "European Union", true},
        {"EA", "Euro Area", true},
    };
    return c;
  }();
  return instance;
}

std::vector<const Question*> Catalog::questions_of(SurveyId survey) const {
  std::vector<const Question*> out;
  for (const Question& q : questions_) {
    if (q.survey == survey) out.push_back(&q);
  }
  return out;
}

const Question* Catalog::find_question(std::string_view code) const {
  auto it = std::find_if(questions_.begin(), questions_.end(),
                         [&](const Question& q) { return q.code == code; });
  return it == questions_.end() ? nullptr : &*it;
}

const Geo* Catalog::find_geo(std::string_view code) const {
  auto it = std::find_if(geos_.begin(), geos_.end(),
                         [&](const Geo& g) { return g.code == code; });
  return it == geos_.end() ? nullptr : &*it;
}

Catalog Catalog::with_question(Question extra) const {
  if (find_question(extra.code) != nullptr) {
    fail(ErrorKind::duplicate_key,
         "question code already registered: " + extra.code);
  }
  if (extra.raw_arity < 2) {
    fail(ErrorKind::invalid_arity,
         "question " + extra.code + " needs at least 2 response categories");
  }
  Catalog c = *this;
  c.questions_.push_back(std::move(extra));
  return c;
}

}  // namespace disagg

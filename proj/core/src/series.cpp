#include "disagg/series.hpp"

#include <array>
#include <string>

#include "disagg/error.hpp"

namespace disagg {

namespace {

constexpr std::array<IndicatorId, 24> kAllIndicators = {
    IndicatorId::D_I5,   IndicatorId::D_I6,   IndicatorId::D_I7,
    IndicatorId::D_S3,   IndicatorId::D_S5,   IndicatorId::D_S6,
    IndicatorId::D_R3,   IndicatorId::D_R4,   IndicatorId::D_R5,
    IndicatorId::D_R6,   IndicatorId::D_B4,   IndicatorId::D_B5,
    IndicatorId::D_C2,   IndicatorId::D_C4,   IndicatorId::D_C6,
    IndicatorId::D_C7,   IndicatorId::D_C9,   IndicatorId::D_INDU,
    IndicatorId::D_SERV, IndicatorId::D_RETA, IndicatorId::D_BUIL,
    IndicatorId::D_CONS, IndicatorId::D_BUSI, IndicatorId::D_TOTAL,
};

constexpr std::array<std::string_view, 24> kIndicatorNames = {
    "D_I5", "D_I6", "D_I7", "D_S3", "D_S5", "D_S6", "D_R3", "D_R4",
    "D_R5", "D_R6", "D_B4", "D_B5", "D_C2", "D_C4", "D_C6", "D_C7",
    "D_C9", "D_INDU", "D_SERV", "D_RETA", "D_BUIL", "D_CONS", "D_BUSI",
    "D_TOTAL",
};

}  // namespace

std::string_view to_string(IndicatorId id) {
  return kIndicatorNames[static_cast<std::size_t>(id)];
}

std::optional<IndicatorId> indicator_from_string(std::string_view text) {
  for (std::size_t i = 0; i < kIndicatorNames.size(); ++i) {
    if (kIndicatorNames[i] == text) return kAllIndicators[i];
  }
  return std::nullopt;
}

IndicatorKind kind(IndicatorId id) {
  if (id <= IndicatorId::D_C9) return IndicatorKind::question;
  if (id <= IndicatorId::D_CONS) return IndicatorKind::sector;
  return IndicatorKind::composite;
}

std::span<const IndicatorId> all_indicators() { return kAllIndicators; }

IndicatorId question_indicator(std::string_view question_code) {
  auto id = indicator_from_string("D_" + std::string(question_code));
  if (!id || kind(*id) != IndicatorKind::question) {
    fail(ErrorKind::vocabulary,
         "no question indicator for code \"" + std::string(question_code) + "\"");
  }
  return *id;
}

IndicatorId sector_indicator(SurveyId survey) {
  switch (survey) {
    case SurveyId::INDU: return IndicatorId::D_INDU;
    case SurveyId::SERV: return IndicatorId::D_SERV;
    case SurveyId::RETA: return IndicatorId::D_RETA;
    case SurveyId::BUIL: return IndicatorId::D_BUIL;
    case SurveyId::CONS: return IndicatorId::D_CONS;
  }
  fail(ErrorKind::vocabulary, "unknown survey id");
}

SurveyId survey_of(IndicatorId id) {
  switch (id) {
    case IndicatorId::D_I5:
    case IndicatorId::D_I6:
    case IndicatorId::D_I7:
    case IndicatorId::D_INDU: return SurveyId::INDU;
    case IndicatorId::D_S3:
    case IndicatorId::D_S5:
    case IndicatorId::D_S6:
    case IndicatorId::D_SERV: return SurveyId::SERV;
    case IndicatorId::D_R3:
    case IndicatorId::D_R4:
    case IndicatorId::D_R5:
    case IndicatorId::D_R6:
    case IndicatorId::D_RETA: return SurveyId::RETA;
    case IndicatorId::D_B4:
    case IndicatorId::D_B5:
    case IndicatorId::D_BUIL: return SurveyId::BUIL;
    case IndicatorId::D_C2:
    case IndicatorId::D_C4:
    case IndicatorId::D_C6:
    case IndicatorId::D_C7:
    case IndicatorId::D_C9:
    case IndicatorId::D_CONS: return SurveyId::CONS;
    default:
      fail(ErrorKind::vocabulary, "no single survey behind composite indicator " +
                                      std::string(to_string(id)));
  }
}

std::vector<IndicatorId> constituents(IndicatorId id) {
  switch (id) {
    case IndicatorId::D_INDU:
      return {IndicatorId::D_I5, IndicatorId::D_I6, IndicatorId::D_I7};
    case IndicatorId::D_SERV:
      return {IndicatorId::D_S3, IndicatorId::D_S5, IndicatorId::D_S6};
    case IndicatorId::D_RETA:
      return {IndicatorId::D_R3, IndicatorId::D_R4, IndicatorId::D_R5,
              IndicatorId::D_R6};
    case IndicatorId::D_BUIL:
      return {IndicatorId::D_B4, IndicatorId::D_B5};
    case IndicatorId::D_CONS:
      return {IndicatorId::D_C2, IndicatorId::D_C4, IndicatorId::D_C6,
              IndicatorId::D_C7, IndicatorId::D_C9};
    case IndicatorId::D_BUSI:
      return {IndicatorId::D_INDU, IndicatorId::D_SERV, IndicatorId::D_RETA,
              IndicatorId::D_BUIL};
    case IndicatorId::D_TOTAL:
      return {IndicatorId::D_BUSI, IndicatorId::D_CONS};
    default:
      return {};
  }
}

IndicatorSeries::IndicatorSeries(std::string geo, IndicatorId indicator)
    : geo_(std::move(geo)), indicator_(indicator) {}

void IndicatorSeries::append(SeriesPoint p) {
  if (!points_.empty() && !(points_.back().period < p.period)) {
    fail(ErrorKind::validation,
         "series periods must strictly increase; got " + p.period.str() +
             " after " + points_.back().period.str());
  }
  if (p.value < 0.0 || p.value > 1.0) {
    fail(ErrorKind::validation,
         "series value " + std::to_string(p.value) + " outside [0, 1]");
  }
  points_.push_back(p);
}

}  // namespace disagg

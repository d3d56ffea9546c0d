#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "disagg/catalog.hpp"
#include "disagg/shares.hpp"

namespace disagg {

// Provenance of an observation's shares:
//   complete      raw values summed exactly to the expected denominator
//   renormalized  raw sum was off (within the accepted band) and was rescaled
//   imputed-none  reserved: accepted on input, never produced by the parser
enum class CoverageFlag { complete, renormalized, imputed_none };

std::string_view to_string(CoverageFlag flag);
std::optional<CoverageFlag> coverage_from_string(std::string_view text);

// Treatment of the consumer survey's don't-know category before any metric
// is computed. Fixed once per pipeline run.
enum class DontKnowPolicy { drop_renormalize, include_as_category };

std::string_view to_string(DontKnowPolicy policy);
std::optional<DontKnowPolicy> dont_know_policy_from_string(std::string_view text);

// Consumer vectors are ordered (PP, P, E, M, MM, N). drop_renormalize removes
// the trailing don't-know share and rescales the five substantive categories
// to sum one; include_as_category returns the input unchanged. Requires
// arity 6: vectors already reduced to arity 5 are rejected, never reprocessed.
SharesVector apply_dont_know_policy(const SharesVector& raw,
                                    DontKnowPolicy policy);

// One validated (geography, question, month) survey record.
struct Observation {
  std::string geo;
  std::string question;
  Period period;
  SharesVector shares;
  CoverageFlag coverage = CoverageFlag::complete;
};

}  // namespace disagg

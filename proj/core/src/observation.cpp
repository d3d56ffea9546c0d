#include "disagg/observation.hpp"

#include <string>
#include <vector>

#include "disagg/error.hpp"

namespace disagg {

std::string_view to_string(CoverageFlag flag) {
  switch (flag) {
    case CoverageFlag::complete: return "complete";
    case CoverageFlag::renormalized: return "renormalized";
    case CoverageFlag::imputed_none: return "imputed-none";
  }
  fail(ErrorKind::vocabulary, "unknown coverage flag");
}

std::optional<CoverageFlag> coverage_from_string(std::string_view text) {
  if (text == "complete") return CoverageFlag::complete;
  if (text == "renormalized") return CoverageFlag::renormalized;
  if (text == "imputed-none") return CoverageFlag::imputed_none;
  return std::nullopt;
}

std::string_view to_string(DontKnowPolicy policy) {
  switch (policy) {
    case DontKnowPolicy::drop_renormalize: return "drop-renormalize";
    case DontKnowPolicy::include_as_category: return "include-as-category";
  }
  fail(ErrorKind::vocabulary, "unknown don't-know policy");
}

std::optional<DontKnowPolicy> dont_know_policy_from_string(
    std::string_view text) {
  if (text == "drop-renormalize" || text == "drop") {
    return DontKnowPolicy::drop_renormalize;
  }
  if (text == "include-as-category" || text == "include") {
    return DontKnowPolicy::include_as_category;
  }
  return std::nullopt;
}

SharesVector apply_dont_know_policy(const SharesVector& raw,
                                    DontKnowPolicy policy) {
  if (raw.arity() != 6) {
    fail(ErrorKind::invalid_arity,
         "don't-know policy applies to 6-category consumer vectors, got arity " +
             std::to_string(raw.arity()));
  }
  if (policy == DontKnowPolicy::include_as_category) return raw;

  const double substantive = raw[0] + raw[1] + raw[2] + raw[3] + raw[4];
  if (substantive <= 0.0) {
    fail(ErrorKind::degenerate_distribution,
         "all responses are don't-know; no distribution remains after drop");
  }
  std::vector<double> kept(raw.values().begin(), raw.values().begin() + 5);
  for (double& v : kept) v /= substantive;
  return SharesVector(std::move(kept));
}

}  // namespace disagg

#pragma once

#include <optional>
#include <string>

#include "resolvekit/rule.hpp"

namespace resolvekit {

// A rational lower bound num/den (den > 0), or minus infinity.
struct LimitEstimate {
  bool minus_infinity = false;
  int numerator = 0;
  int denominator = 1;
  int power = 1;           // the s where the best ratio was first reached
  bool certified = false;  // the bound is the exact limit
  std::string certificate;  // how the certificate was obtained, or why none
};

struct LimitReport {
  int max_power = 1;
  LimitEstimate p_L;
  LimitEstimate p_R;
  LimitEstimate q_R;
  LimitEstimate q_L;
};

// Best ratio degree(phi^s)/s over 1 <= s <= max_power for each of the four
// degrees.  Certificates come from expansiveness decisions at s = 1.
LimitReport limit_estimates(const Endomorphism& e, int max_power);

std::string to_string(const LimitEstimate& v);

}  // namespace resolvekit

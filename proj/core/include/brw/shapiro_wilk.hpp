#pragma once

#include <span>

namespace brw {

struct ShapiroWilkResult {
  double w;
  double p_value;
};

// Shapiro-Wilk W statistic and p-value for a complete (uncensored) sample,
// 3 <= n <= 5000, following Royston's AS R94 normalization. Input need not
// be sorted. Throws std::domain_error for n out of range or zero range.
ShapiroWilkResult shapiro_wilk(std::span<const double> values);

}  // namespace brw

#pragma once

namespace brw {

// Standard normal quantile (Wichura's PPND16 rational approximations,
// relative error below 1e-15 on (0,1)). Throws std::domain_error outside (0,1).
double normal_quantile(double p);

// Standard normal lower/upper tail areas via erfc.
double normal_cdf(double x);
double normal_upper_tail(double x);

}  // namespace brw

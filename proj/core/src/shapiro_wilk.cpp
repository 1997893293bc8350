#include "brw/shapiro_wilk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "brw/normal.hpp"

namespace brw {

namespace {

// Horner evaluation with ascending coefficients c[0] + c[1] x + ...
double poly(const double* c, int n, double x) {
  double acc = c[n - 1];
  for (int i = n - 2; i >= 0; --i) acc = acc * x + c[i];
  return acc;
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }
double normal_upper_tail(double x) { return 0.5 * std::erfc(x * M_SQRT1_2); }

double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::domain_error("normal_quantile argument must lie in (0,1)");

  static constexpr double a[8] = {
      3.3871328727963666080e0,  1.3314166789178437745e2,
      1.9715909503065514427e3,  1.3731693765509461125e4,
      4.5921953931549871457e4,  6.7265770927008700853e4,
      3.3430575583588128105e4,  2.5090809287301226727e3};
  static constexpr double b[8] = {
      1.0,                      4.2313330701600911252e1,
      6.8718700749205790830e2,  5.3941960214247511077e3,
      2.1213794301586595867e4,  3.9307895800092710610e4,
      2.8729085735721942674e4,  5.2264952788528545610e3};
  static constexpr double c[8] = {
      1.42343711074968357734e0,  4.63033784615654529590e0,
      5.76949722146069140550e0,  3.64784832476320460504e0,
      1.27045825245236838258e0,  2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static constexpr double d[8] = {
      1.0,                       2.05319162663775882187e0,
      1.67638483018380384940e0,  6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2,
      5.47593808499534494600e-4, 1.05075007164441684324e-9};
  static constexpr double e[8] = {
      6.65790464350110377720e0,  5.46378491116411436990e0,
      1.78482653991729133580e0,  2.96560571828504891230e-1,
      2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static constexpr double f[8] = {
      1.0,                       5.99832206555887937690e-1,
      1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5,
      1.42151175831644588870e-7, 2.04426310338993978564e-15};

  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    double num = a[7], den = b[7];
    for (int i = 6; i >= 0; --i) {
      num = num * r + a[i];
      den = den * r + b[i];
    }
    return q * num / den;
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    double num = c[7], den = d[7];
    for (int i = 6; i >= 0; --i) {
      num = num * r + c[i];
      den = den * r + d[i];
    }
    val = num / den;
  } else {
    r -= 5.0;
    double num = e[7], den = f[7];
    for (int i = 6; i >= 0; --i) {
      num = num * r + e[i];
      den = den * r + f[i];
    }
    val = num / den;
  }
  return q < 0.0 ? -val : val;
}

ShapiroWilkResult shapiro_wilk(std::span<const double> values) {
  // AS R94 polynomial constants (Royston 1995), complete-sample path.
  static constexpr double g[2] = {-2.273, 0.459};
  static constexpr double c1[6] = {0.0,      0.221157,  -0.147981,
                                   -2.071190, 4.434685, -2.706056};
  static constexpr double c2[6] = {0.0,      0.042981,  -0.293762,
                                   -1.752461, 5.682633, -3.582633};
  static constexpr double c3[4] = {0.544, -0.39978, 0.025054, -6.714e-4};
  static constexpr double c4[4] = {1.3822, -0.77857, 0.062767, -0.0020322};
  static constexpr double c5[4] = {-1.5861, -0.31082, -0.083751, 0.0038915};
  static constexpr double c6[3] = {-0.4803, -0.082676, 0.0030302};

  const int n = static_cast<int>(values.size());
  if (n < 3 || n > 5000)
    throw std::domain_error("shapiro_wilk requires 3 <= n <= 5000");

  std::vector<double> x(values.begin(), values.end());
  std::sort(x.begin(), x.end());

  const double range = x.back() - x.front();
  if (!(range > 1e-19))
    throw std::domain_error("shapiro_wilk: sample range is effectively zero");

  const int n2 = n / 2;
  const double an = n;

  // Half-vector of expected-order-statistic coefficients, Blom scores
  // normalized per Royston. h[m] corresponds to the (m+1)-th smallest value.
  std::vector<double> h(static_cast<std::size_t>(n2));
  if (n == 3) {
    h[0] = M_SQRT1_2;
  } else {
    double summ2 = 0.0;
    const double an25 = an + 0.25;
    for (int m = 0; m < n2; ++m) {
      h[static_cast<std::size_t>(m)] = normal_quantile((m + 1 - 0.375) / an25);
      summ2 += h[static_cast<std::size_t>(m)] * h[static_cast<std::size_t>(m)];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(c1, 6, rsn) - h[0] / ssumm2;
    int start;
    double fac;
    if (n > 5) {
      start = 2;
      const double a2 = poly(c2, 6, rsn) - h[1] / ssumm2;
      fac = std::sqrt((summ2 - 2.0 * h[0] * h[0] - 2.0 * h[1] * h[1]) /
                      (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      h[0] = a1;
      h[1] = a2;
    } else {
      start = 1;
      fac = std::sqrt((summ2 - 2.0 * h[0] * h[0]) / (1.0 - 2.0 * a1 * a1));
      h[0] = a1;
    }
    for (int m = start; m < n2; ++m)
      h[static_cast<std::size_t>(m)] = -h[static_cast<std::size_t>(m)] / fac;
  }

  // Full antisymmetric coefficient vector: a_i = -h[i] for the lower half,
  // +h[n-1-i] for the upper half, 0 in the middle for odd n.
  auto coeff = [&](int i) -> double {
    const int j = n - 1 - i;
    if (i < j) return -h[static_cast<std::size_t>(i)];
    if (i > j) return h[static_cast<std::size_t>(j)];
    return 0.0;
  };

  double sa = 0.0, sx = 0.0;
  for (int i = 0; i < n; ++i) {
    sa += coeff(i);
    sx += x[static_cast<std::size_t>(i)] / range;
  }
  sa /= n;
  sx /= n;

  double ssa = 0.0, ssx = 0.0, sax = 0.0;
  for (int i = 0; i < n; ++i) {
    const double asa = coeff(i) - sa;
    const double xsx = x[static_cast<std::size_t>(i)] / range - sx;
    ssa += asa * asa;
    ssx += xsx * xsx;
    sax += asa * xsx;
  }

  // 1-W computed directly to avoid cancellation for W near 1.
  const double ssassx = std::sqrt(ssa * ssx);
  const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
  const double w = 1.0 - w1;

  double pw;
  if (n == 3) {
    // Exact for n = 3.
    constexpr double pi6 = 1.90985931710274;    // 6/pi
    constexpr double stqr = 1.04719755119660;   // asin(sqrt(3/4))
    pw = pi6 * (std::asin(std::sqrt(w)) - stqr);
    pw = std::clamp(pw, 0.0, 1.0);
    return {w, pw};
  }

  double y = std::log(w1);
  const double logn = std::log(an);
  double m, s;
  if (n <= 11) {
    const double gamma = poly(g, 2, an);
    if (y >= gamma) return {w, 1e-99};
    y = -std::log(gamma - y);
    m = poly(c3, 4, an);
    s = std::exp(poly(c4, 4, an));
  } else {
    m = poly(c5, 4, logn);
    s = std::exp(poly(c6, 3, logn));
  }
  pw = normal_upper_tail((y - m) / s);
  return {w, pw};
}

}  // namespace brw

#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <cmath>
#include <vector>

#include "brw/medium.hpp"
#include "brw/rng.hpp"

using namespace brw;

namespace {

MediumSpec every_point_spec(IntensityLaw split, IntensityLaw death) {
  MediumSpec s;
  s.sources = SourceConfiguration::every_point();
  s.split_law = split;
  s.death_law = death;
  return s;
}

}  // namespace

TEST_CASE("weibull inverse cdf closed forms") {
  // unit quantile of the standardized law: u = 1 - exp(-1)
  CHECK(weibull_inverse_cdf(1.0 - std::exp(-1.0), 2.0, 2.26) ==
        doctest::Approx(2.26).epsilon(1e-12));
  // closed-form median
  CHECK(weibull_inverse_cdf(0.5, 2.0, 1.13) ==
        doctest::Approx(1.13 * std::sqrt(std::log(2.0))).epsilon(1e-12));
  CHECK(weibull_inverse_cdf(0.5, 2.0, 1.13) == doctest::Approx(0.94078).epsilon(1e-4));
  // lower endpoint
  CHECK(weibull_inverse_cdf(1e-300, 2.0, 2.26) < 1e-100);
  // strictly increasing
  double prev = 0.0;
  for (double u = 0.05; u < 1.0; u += 0.05) {
    const double v = weibull_inverse_cdf(u, 2.0, 2.26);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(weibull_inverse_cdf(0.0, 2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(weibull_inverse_cdf(1.0, 2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(weibull_inverse_cdf(-0.5, 2.0, 1.0), std::domain_error);
}

TEST_CASE("constant media assign the constants everywhere") {
  const LatticeWindow w(1, 11);
  const MediumRealization m = sample_medium(
      every_point_spec(IntensityLaw::constant(2.0), IntensityLaw::constant(1.0)),
      77, w);
  for (std::int32_t x = w.low(); x <= w.high(); ++x) {
    CHECK(m.xi_plus({x}) == 2.0);
    CHECK(m.xi_minus({x}) == 1.0);
    CHECK(potential(m, {x}) == 1.0);
  }
}

TEST_CASE("weibull sample means match the closed form") {
  // E(Weib(k, lambda)) = lambda * Gamma(1 + 1/k)
  const LatticeWindow w(1, 1000001);
  const MediumRealization m = sample_medium(
      every_point_spec(IntensityLaw::weibull(2.0, 2.26),
                       IntensityLaw::weibull(2.0, 1.13)),
      123, w);
  double sp = 0.0, sm = 0.0;
  const std::int64_t n = 1000000;
  for (std::int64_t i = 0; i < n; ++i) {
    const auto [xp, xm] = m.rates_at(i);
    sp += xp;
    sm += xm;
  }
  CHECK(sp / static_cast<double>(n) > 1.99);   // analytic 2.0029
  CHECK(sp / static_cast<double>(n) < 2.02);
  CHECK(sm / static_cast<double>(n) > 0.99);   // analytic 1.0014
  CHECK(sm / static_cast<double>(n) < 1.01);
}

TEST_CASE("potential is zero off sources and the difference at sources") {
  const LatticeWindow w(1, 21);
  MediumSpec s;
  s.sources = SourceConfiguration::single_point({0});
  s.split_law = IntensityLaw::constant(2.0);
  s.death_law = IntensityLaw::constant(1.0);
  const MediumRealization m = sample_medium(s, 1, w);
  CHECK(potential(m, {0}) == 1.0);
  CHECK(potential(m, {1}) == 0.0);
  CHECK(potential(m, {-5}) == 0.0);
  CHECK(potential(m, {1000}) == 0.0);  // off-window points are not sources
  CHECK(m.is_source_index(w.index({0})));
  CHECK(!m.is_source_index(w.index({1})));

  // critical constant medium has V identically zero
  const LatticeWindow w2(1, 11);
  const MediumRealization crit = sample_medium(
      every_point_spec(IntensityLaw::constant(1.0), IntensityLaw::constant(1.0)),
      5, w2);
  for (std::int32_t x = w2.low(); x <= w2.high(); ++x)
    CHECK(potential(crit, {x}) == 0.0);
}

TEST_CASE("identical seeds reproduce the identical table") {
  const LatticeWindow w(2, 9);
  const MediumSpec spec = every_point_spec(IntensityLaw::weibull(2.0, 2.26),
                                           IntensityLaw::weibull(2.0, 1.13));
  const MediumRealization a = sample_medium(spec, 42, w);
  const MediumRealization b = sample_medium(spec, 42, w);
  const MediumRealization c = sample_medium(spec, 43, w);
  bool any_diff = false;
  for (std::int64_t i = 0; i < w.size(); ++i) {
    CHECK(a.rates_at(i) == b.rates_at(i));
    any_diff |= a.rates_at(i) != c.rates_at(i);
  }
  CHECK(any_diff);
}

TEST_CASE("draws at distinct points are uncorrelated across seeds") {
  const LatticeWindow w(1, 11);
  const MediumSpec spec = every_point_spec(IntensityLaw::weibull(2.0, 2.26),
                                           IntensityLaw::weibull(2.0, 2.26));
  const int n_seeds = 2000;
  std::vector<double> xs, ys;
  for (int s = 0; s < n_seeds; ++s) {
    const MediumRealization m =
        sample_medium(spec, static_cast<std::uint64_t>(s), w);
    xs.push_back(m.xi_plus({-3}));
    ys.push_back(m.xi_plus({4}));
  }
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n_seeds; ++i) {
    mx += xs[static_cast<std::size_t>(i)];
    my += ys[static_cast<std::size_t>(i)];
  }
  mx /= n_seeds;
  my /= n_seeds;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (int i = 0; i < n_seeds; ++i) {
    const double dx = xs[static_cast<std::size_t>(i)] - mx;
    const double dy = ys[static_cast<std::size_t>(i)] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  const double corr = sxy / std::sqrt(sxx * syy);
  CHECK(std::fabs(corr) < 3.0 / std::sqrt(static_cast<double>(n_seeds)));
}

TEST_CASE("kolmogorov-smirnov: weibull draws against the analytic cdf") {
  const LatticeWindow w(1, 100001);
  const double k = 2.0, lambda = 2.26;
  const MediumRealization m = sample_medium(
      every_point_spec(IntensityLaw::weibull(k, lambda),
                       IntensityLaw::constant(0.0)),
      2024, w);
  const std::int64_t n = 100000;
  std::vector<double> draws;
  draws.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) draws.push_back(m.rates_at(i).first);
  std::sort(draws.begin(), draws.end());
  double d_stat = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double x = draws[static_cast<std::size_t>(i)];
    const double f = 1.0 - std::exp(-std::pow(x / lambda, k));
    const double lo = static_cast<double>(i) / static_cast<double>(n);
    const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
    d_stat = std::max({d_stat, f - lo, hi - f});
  }
  // 1% asymptotic critical value: 1.6276 / sqrt(n)
  CHECK(d_stat < 1.6276 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("source validation") {
  const LatticeWindow w(1, 5);
  MediumSpec s;
  s.split_law = IntensityLaw::constant(1.0);
  s.death_law = IntensityLaw::constant(1.0);

  s.sources = SourceConfiguration::point_set({{7}});
  CHECK_THROWS_AS(sample_medium(s, 1, w), std::domain_error);

  s.sources = SourceConfiguration::point_set({{1}, {1}});
  CHECK_THROWS_AS(sample_medium(s, 1, w), std::domain_error);

  s.sources = SourceConfiguration::point_set({});
  CHECK_THROWS_AS(sample_medium(s, 1, w), std::domain_error);

  s.sources = SourceConfiguration::point_set({{1}, {-1}});
  const MediumRealization ok = sample_medium(s, 1, w);
  CHECK(ok.finite_source_indices().size() == 2);
}

TEST_CASE("law validation and description") {
  CHECK_THROWS_AS(IntensityLaw::constant(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(IntensityLaw::weibull(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(IntensityLaw::weibull(2.0, -1.0), std::invalid_argument);
  CHECK(IntensityLaw::weibull(2.0, 2.26).mean() ==
        doctest::Approx(2.0029).epsilon(1e-4));
  CHECK(IntensityLaw::constant(2.0).describe() == "2");
  CHECK(IntensityLaw::weibull(2.0, 1.13).describe() == "Weib(2,1.13)");
}

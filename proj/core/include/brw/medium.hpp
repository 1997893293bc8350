#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "brw/lattice.hpp"

namespace brw {

// Inverse CDF of Weibull(shape k, scale lambda) with CDF 1 - exp(-(x/l)^k).
// "Weib(2, 2.26)" reads as (k=2, lambda=2.26); mean = lambda * Gamma(1+1/k).
// Throws std::domain_error unless 0 < u < 1.
double weibull_inverse_cdf(double u, double shape, double scale);

struct IntensityLaw {
  enum class Kind { Constant, Weibull };
  Kind kind = Kind::Constant;
  double value = 0.0;  // Constant
  double shape = 0.0;  // Weibull k
  double scale = 0.0;  // Weibull lambda

  static IntensityLaw constant(double v);
  static IntensityLaw weibull(double shape, double scale);

  bool is_random() const noexcept { return kind == Kind::Weibull; }
  double mean() const;
  // Inverse-CDF sample; constants ignore u.
  double quantile(double u) const;
  std::string describe() const;
};

struct SourceConfiguration {
  enum class Kind { SinglePoint, EveryPoint, PointSet };
  Kind kind = Kind::EveryPoint;
  std::vector<LatticePoint> points;  // SinglePoint: one entry; PointSet: >=1

  static SourceConfiguration single_point(LatticePoint p);
  static SourceConfiguration every_point();
  static SourceConfiguration point_set(std::vector<LatticePoint> pts);
};

struct MediumSpec {
  SourceConfiguration sources;
  IntensityLaw split_law;   // xi+
  IntensityLaw death_law;   // xi-
  bool iid_across_sources = true;

  bool is_random() const noexcept {
    return split_law.is_random() || death_law.is_random();
  }
};

// One sampled assignment of (xi+, xi-) per source. Finite source sets are
// materialized eagerly; EveryPoint media evaluate draws on demand from a
// counter-based generator keyed by (medium_seed, point index), so values are
// deterministic regardless of visit order and nothing is stored up front.
class MediumRealization {
 public:
  MediumRealization(MediumSpec spec, std::uint64_t medium_seed,
                    LatticeWindow window);

  const MediumSpec& spec() const noexcept { return spec_; }
  const LatticeWindow& window() const noexcept { return window_; }
  std::uint64_t medium_seed() const noexcept { return seed_; }

  bool is_source_index(std::int64_t idx) const;
  // (xi+, xi-) at a window point by index; (0,0) off sources.
  std::pair<double, double> rates_at(std::int64_t idx) const;

  double xi_plus(const LatticePoint& p) const;
  double xi_minus(const LatticePoint& p) const;

  // Source point indices in increasing order; for EveryPoint this is the
  // whole window, enumerated lazily by the caller via window().size().
  const std::vector<std::int64_t>& finite_source_indices() const;
  bool every_point() const noexcept {
    return spec_.sources.kind == SourceConfiguration::Kind::EveryPoint;
  }

 private:
  MediumSpec spec_;
  std::uint64_t seed_;
  LatticeWindow window_;
  std::vector<std::int64_t> source_indices_;                  // sorted, finite case
  std::unordered_map<std::int64_t, std::pair<double, double>> table_;

  std::pair<double, double> draw_pair(std::int64_t idx) const;
};

// V(x) = xi+(x) - xi-(x) at sources, 0 elsewhere (including off-window points).
double potential(const MediumRealization& m, const LatticePoint& p);

// Samples every source point independently via inverse-CDF draws.
// Deterministic in (spec, medium_seed, window).
MediumRealization sample_medium(const MediumSpec& spec,
                                std::uint64_t medium_seed,
                                const LatticeWindow& w);

}  // namespace brw

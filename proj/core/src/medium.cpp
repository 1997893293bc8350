#include "brw/medium.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "brw/rng.hpp"

namespace brw {

namespace {
// Stream tags separating the xi+ and xi- draws at a point.
constexpr std::uint64_t kXiPlusTag = 0x78692b;
constexpr std::uint64_t kXiMinusTag = 0x78692d;
}  // namespace

double weibull_inverse_cdf(double u, double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw std::domain_error("Weibull shape and scale must be positive");
  if (!(u > 0.0) || !(u < 1.0))
    throw std::domain_error("Weibull quantile argument must lie in (0,1)");
  return scale * std::pow(-std::log1p(-u), 1.0 / shape);
}

IntensityLaw IntensityLaw::constant(double v) {
  if (v < 0.0) throw std::invalid_argument("constant intensity must be >= 0");
  IntensityLaw law;
  law.kind = Kind::Constant;
  law.value = v;
  return law;
}

IntensityLaw IntensityLaw::weibull(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw std::invalid_argument("Weibull shape and scale must be positive");
  IntensityLaw law;
  law.kind = Kind::Weibull;
  law.shape = shape;
  law.scale = scale;
  return law;
}

double IntensityLaw::mean() const {
  if (kind == Kind::Constant) return value;
  return scale * std::tgamma(1.0 + 1.0 / shape);
}

double IntensityLaw::quantile(double u) const {
  if (kind == Kind::Constant) return value;
  return weibull_inverse_cdf(u, shape, scale);
}

std::string IntensityLaw::describe() const {
  char buf[64];
  if (kind == Kind::Constant)
    std::snprintf(buf, sizeof buf, "%g", value);
  else
    std::snprintf(buf, sizeof buf, "Weib(%g,%g)", shape, scale);
  return buf;
}

SourceConfiguration SourceConfiguration::single_point(LatticePoint p) {
  SourceConfiguration c;
  c.kind = Kind::SinglePoint;
  c.points.push_back(std::move(p));
  return c;
}

SourceConfiguration SourceConfiguration::every_point() {
  SourceConfiguration c;
  c.kind = Kind::EveryPoint;
  return c;
}

SourceConfiguration SourceConfiguration::point_set(
    std::vector<LatticePoint> pts) {
  SourceConfiguration c;
  c.kind = Kind::PointSet;
  c.points = std::move(pts);
  return c;
}

MediumRealization::MediumRealization(MediumSpec spec, std::uint64_t medium_seed,
                                     LatticeWindow window)
    : spec_(std::move(spec)), seed_(medium_seed), window_(std::move(window)) {
  using Kind = SourceConfiguration::Kind;
  if (spec_.sources.kind == Kind::EveryPoint) return;

  if (spec_.sources.points.empty())
    throw std::domain_error("source set must be nonempty");
  source_indices_.reserve(spec_.sources.points.size());
  for (const LatticePoint& p : spec_.sources.points) {
    if (!window_.contains(p))
      throw std::domain_error("source point outside lattice window");
    source_indices_.push_back(window_.index(p));
  }
  std::sort(source_indices_.begin(), source_indices_.end());
  if (std::adjacent_find(source_indices_.begin(), source_indices_.end()) !=
      source_indices_.end())
    throw std::domain_error("duplicate source point");

  table_.reserve(source_indices_.size());
  for (std::int64_t idx : source_indices_) table_.emplace(idx, draw_pair(idx));
}

std::pair<double, double> MediumRealization::draw_pair(std::int64_t idx) const {
  const auto key = static_cast<std::uint64_t>(idx);
  double xp = spec_.split_law.kind == IntensityLaw::Kind::Constant
                  ? spec_.split_law.value
                  : spec_.split_law.quantile(
                        rng::unit_open(rng::combine(seed_, kXiPlusTag), key));
  double xm = spec_.death_law.kind == IntensityLaw::Kind::Constant
                  ? spec_.death_law.value
                  : spec_.death_law.quantile(
                        rng::unit_open(rng::combine(seed_, kXiMinusTag), key));
  return {xp, xm};
}

bool MediumRealization::is_source_index(std::int64_t idx) const {
  if (every_point()) return true;
  return table_.find(idx) != table_.end();
}

std::pair<double, double> MediumRealization::rates_at(std::int64_t idx) const {
  if (every_point()) return draw_pair(idx);
  auto it = table_.find(idx);
  if (it == table_.end()) return {0.0, 0.0};
  return it->second;
}

double MediumRealization::xi_plus(const LatticePoint& p) const {
  if (!window_.contains(p)) return 0.0;
  return rates_at(window_.index(p)).first;
}

double MediumRealization::xi_minus(const LatticePoint& p) const {
  if (!window_.contains(p)) return 0.0;
  return rates_at(window_.index(p)).second;
}

const std::vector<std::int64_t>& MediumRealization::finite_source_indices()
    const {
  if (every_point())
    throw std::logic_error(
        "EveryPoint medium has no finite source list; enumerate the window");
  return source_indices_;
}

double potential(const MediumRealization& m, const LatticePoint& p) {
  if (!m.window().contains(p)) return 0.0;
  auto [xp, xm] = m.rates_at(m.window().index(p));
  return xp - xm;
}

MediumRealization sample_medium(const MediumSpec& spec,
                                std::uint64_t medium_seed,
                                const LatticeWindow& w) {
  return MediumRealization(spec, medium_seed, w);
}

}  // namespace brw

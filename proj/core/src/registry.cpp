#include "brw/registry.hpp"

#include <stdexcept>

namespace brw {

namespace {

MediumSpec make_medium(SourceConfiguration sources, IntensityLaw split,
                       IntensityLaw death) {
  MediumSpec spec;
  spec.sources = std::move(sources);
  spec.split_law = split;
  spec.death_law = death;
  spec.iid_across_sources = true;
  return spec;
}

const IntensityLaw kConst2 = IntensityLaw::constant(2.0);
const IntensityLaw kConst1 = IntensityLaw::constant(1.0);
const IntensityLaw kWeibHigh = IntensityLaw::weibull(2.0, 2.26);  // mean ~ 2
const IntensityLaw kWeibLow = IntensityLaw::weibull(2.0, 1.13);   // mean ~ 1

std::vector<LatticePoint> simplex(std::int32_t r) {
  return {{r, 0, 0}, {0, r, 0}, {0, 0, r}};
}

}  // namespace

ModelDefinition model_registry(int model_id) {
  ModelDefinition m;
  m.id = model_id;
  const LatticePoint origin1{0};
  switch (model_id) {
    case 1:
      m.name = "non-random supercritical non-homogeneous";
      m.dimension = 1;
      m.medium = make_medium(SourceConfiguration::single_point(origin1),
                             kConst2, kConst1);
      break;
    case 2:
      m.name = "random supercritical non-homogeneous";
      m.dimension = 1;
      m.medium = make_medium(SourceConfiguration::single_point(origin1),
                             kWeibHigh, kWeibLow);
      m.is_random = true;
      break;
    case 3:
      m.name = "non-random supercritical homogeneous";
      m.dimension = 1;
      m.medium =
          make_medium(SourceConfiguration::every_point(), kConst2, kConst1);
      break;
    case 4:
      m.name = "random supercritical homogeneous";
      m.dimension = 1;
      m.medium =
          make_medium(SourceConfiguration::every_point(), kWeibHigh, kWeibLow);
      m.is_random = true;
      break;
    case 5:
      m.name = "non-random critical homogeneous";
      m.dimension = 1;
      m.medium =
          make_medium(SourceConfiguration::every_point(), kConst1, kConst1);
      break;
    case 6:
      m.name = "random critical homogeneous";
      m.dimension = 1;
      m.medium =
          make_medium(SourceConfiguration::every_point(), kWeibLow, kWeibLow);
      m.is_random = true;
      break;
    case 7:
      m.name = "non-random supercritical simplex sqrt(2)";
      m.dimension = 3;
      m.medium = make_medium(SourceConfiguration::point_set(simplex(1)),
                             kConst2, kConst1);
      break;
    case 8:
      m.name = "non-random supercritical simplex 2*sqrt(2)";
      m.dimension = 3;
      m.medium = make_medium(SourceConfiguration::point_set(simplex(2)),
                             kConst2, kConst1);
      break;
    case 9:
      m.name = "random supercritical simplex sqrt(2)";
      m.dimension = 3;
      m.medium = make_medium(SourceConfiguration::point_set(simplex(1)),
                             kWeibHigh, kWeibLow);
      m.is_random = true;
      break;
    case 10:
      m.name = "random supercritical simplex 2*sqrt(2)";
      m.dimension = 3;
      m.medium = make_medium(SourceConfiguration::point_set(simplex(2)),
                             kWeibHigh, kWeibLow);
      m.is_random = true;
      break;
    default:
      throw std::domain_error("unknown model id (valid: 1..10)");
  }
  return m;
}

}  // namespace brw

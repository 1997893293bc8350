#pragma once

#include <string>

#include "brw/medium.hpp"

namespace brw {

// Built-in model catalogue: ten benchmark configurations pairing non-random
// and random media across dimensions and source layouts.
struct ModelDefinition {
  int id = 0;
  std::string name;
  int dimension = 1;
  MediumSpec medium;
  bool is_random = false;
};

// Valid ids are 1..10; throws std::domain_error otherwise.
ModelDefinition model_registry(int model_id);

inline constexpr int kModelCount = 10;

}  // namespace brw

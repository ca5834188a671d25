#include "ntsense/schema.hpp"

#include "ntsense/errors.hpp"

namespace ntsense {

const FeatureSchema& FeatureSchema::canonical() {
  static const FeatureSchema schema{{
      "raw_material",    // organic feed, kg/hr
      "sulfur",          // kg/hr
      "dew_point",       // air dryness, temperature
      "air_sulfur_oven",  // nm3/hr
      "air_converter",   // nm3/hr
      "air_so3_filter",  // nm3/hr
      "molar",           // mol rate
      "molar_stp",       // molar weight
  }};
  return schema;
}

std::size_t FeatureSchema::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  throw UnknownFeature("unknown feature '" + name + "'");
}

void FeatureSchema::validate() const {
  if (*this != canonical()) {
    throw SchemaMismatch("schema must list the 8 canonical process parameters in order");
  }
}

}  // namespace ntsense

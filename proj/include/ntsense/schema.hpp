#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ntsense {

inline constexpr std::size_t kNumFeatures = 8;

// Ordered list of the process-parameter columns. The canonical instance fixes
// both the CSV column order and the feature indices used by every model.
struct FeatureSchema {
  std::vector<std::string> names;

  static const FeatureSchema& canonical();

  std::size_t size() const { return names.size(); }
  std::size_t index_of(const std::string& name) const;  // throws UnknownFeature
  void validate() const;                                // throws SchemaMismatch

  bool operator==(const FeatureSchema&) const = default;
};

}  // namespace ntsense

#pragma once

#include <filesystem>
#include <string>

#include "ntsense/data.hpp"

namespace ntsense {

// UTF-8, comma-separated, '.' decimal point, first row is the header.
// Required columns: the 8 schema names in order; optional trailing columns
// `nt`, `outlier` (0/1) and `timestamp`, in that relative order.
Dataset parse_csv(const std::filesystem::path& path,
                  const FeatureSchema& schema = FeatureSchema::canonical());

// Writes nt/outlier/timestamp columns only if any record carries them.
// Doubles are printed in shortest round-trip form, so writing is
// deterministic and parse(write(d)) reproduces every value exactly.
void write_csv(const Dataset& data, const std::filesystem::path& path);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

}  // namespace ntsense

#include "ntsense/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "ntsense/errors.hpp"

namespace ntsense {

std::string format_double(double value) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_number(const std::string& token, std::size_t row) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc{} || result.ptr != end) {
    throw MalformedRow(row, "not a number: '" + token + "'");
  }
  if (!std::isfinite(value)) {
    throw MalformedRow(row, "non-finite value: '" + token + "'");
  }
  return value;
}

std::int64_t parse_integer(const std::string& token, std::size_t row) {
  std::int64_t value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc{} || result.ptr != end) {
    throw MalformedRow(row, "not an integer: '" + token + "'");
  }
  return value;
}

}  // namespace

Dataset parse_csv(const std::filesystem::path& path, const FeatureSchema& schema) {
  schema.validate();
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");

  std::string line;
  if (!std::getline(in, line)) throw SchemaMismatch("empty file, header expected");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const std::vector<std::string> header = split_line(line);
  if (header.size() < schema.size()) {
    throw SchemaMismatch("header has " + std::to_string(header.size()) +
                         " columns, expected at least " + std::to_string(schema.size()));
  }
  for (std::size_t j = 0; j < schema.size(); ++j) {
    if (header[j] != schema.names[j]) {
      throw SchemaMismatch("column " + std::to_string(j) + " is '" + header[j] +
                           "', expected '" + schema.names[j] + "'");
    }
  }
  // Optional trailing columns, fixed relative order.
  int nt_col = -1, outlier_col = -1, timestamp_col = -1;
  std::size_t j = schema.size();
  if (j < header.size() && header[j] == "nt") nt_col = static_cast<int>(j++);
  if (j < header.size() && header[j] == "outlier") outlier_col = static_cast<int>(j++);
  if (j < header.size() && header[j] == "timestamp") timestamp_col = static_cast<int>(j++);
  if (j != header.size()) {
    throw SchemaMismatch("unexpected column '" + header[j] + "'");
  }

  Dataset data{schema, {}, false};
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_line(line);
    if (fields.size() != header.size()) {
      throw MalformedRow(row, "expected " + std::to_string(header.size()) +
                                  " fields, got " + std::to_string(fields.size()));
    }
    ProcessRecord record;
    record.features.reserve(schema.size());
    for (std::size_t k = 0; k < schema.size(); ++k) {
      record.features.push_back(parse_number(fields[k], row));
    }
    if (nt_col >= 0) {
      const std::string& token = fields[static_cast<std::size_t>(nt_col)];
      if (!token.empty()) record.nt = parse_number(token, row);
    }
    if (outlier_col >= 0) {
      const std::string& token = fields[static_cast<std::size_t>(outlier_col)];
      if (token == "0") {
        record.outlier = false;
      } else if (token == "1") {
        record.outlier = true;
      } else {
        throw MalformedRow(row, "outlier flag must be 0 or 1, got '" + token + "'");
      }
    }
    if (timestamp_col >= 0) {
      const std::string& token = fields[static_cast<std::size_t>(timestamp_col)];
      if (!token.empty()) record.timestamp = parse_integer(token, row);
    }
    data.records.push_back(std::move(record));
    ++row;
  }
  return data;
}

void write_csv(const Dataset& data, const std::filesystem::path& path) {
  data.schema.validate();
  bool any_nt = false, any_outlier = false, any_timestamp = false;
  for (const ProcessRecord& r : data.records) {
    any_nt |= r.nt.has_value();
    any_outlier |= r.outlier;
    any_timestamp |= r.timestamp.has_value();
  }

  std::ostringstream out;
  for (std::size_t j = 0; j < data.schema.size(); ++j) {
    if (j > 0) out << ',';
    out << data.schema.names[j];
  }
  if (any_nt) out << ",nt";
  if (any_outlier) out << ",outlier";
  if (any_timestamp) out << ",timestamp";
  out << '\n';

  for (const ProcessRecord& r : data.records) {
    for (std::size_t j = 0; j < r.features.size(); ++j) {
      if (j > 0) out << ',';
      out << format_double(r.features[j]);
    }
    if (any_nt) out << ',' << (r.nt ? format_double(*r.nt) : std::string{});
    if (any_outlier) out << ',' << (r.outlier ? '1' : '0');
    if (any_timestamp) {
      out << ',' << (r.timestamp ? std::to_string(*r.timestamp) : std::string{});
    }
    out << '\n';
  }

  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write '" + path.string() + "'");
  file << out.str();
  if (!file) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace ntsense

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ntsense {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File system problems: missing, unreadable or unwritable paths.
struct IoError : Error {
  using Error::Error;
};

struct SchemaMismatch : Error {
  using Error::Error;
};

struct MalformedRow : Error {
  MalformedRow(std::size_t row_index, const std::string& reason)
      : Error("malformed row " + std::to_string(row_index) + ": " + reason),
        row(row_index) {}
  std::size_t row;
};

struct DegenerateColumn : Error {
  explicit DegenerateColumn(const std::string& column_name)
      : Error("column '" + column_name + "' has zero variance"),
        column(column_name) {}
  std::string column;
};

struct EmptySplit : Error {
  using Error::Error;
};

struct InvalidHyperparameters : Error {
  using Error::Error;
};

struct DivergedTraining : Error {
  using Error::Error;
};

struct RankDeficient : Error {
  using Error::Error;
};

struct LengthMismatch : Error {
  using Error::Error;
};

struct EmptyInput : Error {
  using Error::Error;
};

struct EmptyOob : Error {
  explicit EmptyOob(std::size_t tree_index)
      : Error("tree " + std::to_string(tree_index) + " has no out-of-bag records"),
        tree(tree_index) {}
  std::size_t tree;
};

struct UnknownFeature : Error {
  using Error::Error;
};

struct WindowTooLarge : Error {
  using Error::Error;
};

struct InvalidConfig : Error {
  using Error::Error;
};

}  // namespace ntsense

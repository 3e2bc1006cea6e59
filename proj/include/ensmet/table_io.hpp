#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "ensmet/prediction_table.hpp"

namespace ensmet {

// Malformed input files and inconsistent overrides; the CLI maps this to
// exit code 2.
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// CSV format: header `y[,yhat],o1,...,oN`, then one row of comma-separated
// non-negative integer labels per instance. Unless overridden, the class
// count is inferred as 1 + the largest value of the y column; any other
// column exceeding it is a data error.
PredictionTable read_table_csv(std::istream& in, std::optional<int> classes_override);
PredictionTable read_table_file(const std::string& path, std::optional<int> classes_override);

void write_table_csv(std::ostream& out, const PredictionTable& table);
void write_table_file(const std::string& path, const PredictionTable& table);

// FNV-1a 64-bit digest of a byte stream, as fixed-width hex.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace ensmet

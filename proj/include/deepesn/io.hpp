#pragma once

#include "deepesn/matrix.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace deepesn {

/// Shortest round-trip decimal form ("%.17g").
std::string format_exact(double v);
/// Twelve significant digits ("%.12g").
std::string format_12g(double v);

/// Parses a full token as a double; false on any trailing garbage.
bool parse_double(std::string_view token, double& out);

std::vector<std::string_view> split_fields(std::string_view line, char sep = ',');
std::string_view trim(std::string_view s);

/// Row-major CSV, no header, exact round-trip formatting.
void write_matrix_csv(const DenseMatrix& m, const std::filesystem::path& path);

/// Numeric CSV into a matrix, one line per row. Blank lines are skipped. A
/// first line that does not parse as numbers is treated as a header.
DenseMatrix read_matrix_csv(const std::filesystem::path& path);

} // namespace deepesn

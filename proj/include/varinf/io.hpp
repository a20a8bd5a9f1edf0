#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace varinf::io {

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::vector<std::string> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

// Shortest decimal text that round-trips to the same double; "NA" for NaN.
std::string format_double(double value);
// Inverse of format_double; "NA" and "" give NaN. Throws DataError.
double parse_double(std::string_view text);

}  // namespace varinf::io

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace springsim {

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

// Strict parse of a whole field (surrounding blanks allowed).
std::optional<double> parse_double(std::string_view text);

// Writes to `<path>.tmp` and renames over `path`. Throws std::runtime_error.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

std::string_view trim(std::string_view s);

}  // namespace springsim

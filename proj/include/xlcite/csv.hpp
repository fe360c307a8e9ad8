#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace xlcite::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// RFC-4180 style: UTF-8, LF line endings, fields quoted only when they
// contain a comma, quote, CR or LF. Row order is whatever the caller
// built; emission itself is byte deterministic.
void write(const Table& table, std::ostream& out);
void write_file(const Table& table, const std::filesystem::path& path);

// Reads all records, honoring quoted fields (embedded commas, doubled
// quotes, embedded newlines). Does not interpret a header.
std::vector<std::vector<std::string>> read(std::istream& in);

std::string escape_field(std::string_view field);

// snprintf-backed deterministic float rendering.
std::string fmt_general(double v, int significant = 6);
std::string fmt_fixed(double v, int decimals);

}  // namespace xlcite::csv

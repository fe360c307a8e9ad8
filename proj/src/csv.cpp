#include "xlcite/csv.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace xlcite::csv {

std::string escape_field(std::string_view field) {
    const bool needs_quotes =
        field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

namespace {

void write_row(const std::vector<std::string>& row, std::ostream& out) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out.put(',');
        out << escape_field(row[i]);
    }
    out.put('\n');
}

}  // namespace

void write(const Table& table, std::ostream& out) {
    write_row(table.header, out);
    for (const auto& row : table.rows) write_row(row, out);
}

void write_file(const Table& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write(table, out);
}

std::vector<std::vector<std::string>> read(std::istream& in) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool row_has_data = false;
    int c;
    while ((c = in.get()) != EOF) {
        const char ch = static_cast<char>(c);
        if (in_quotes) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(ch);
            }
            continue;
        }
        switch (ch) {
            case '"':
                in_quotes = true;
                row_has_data = true;
                break;
            case ',':
                row.push_back(std::move(field));
                field.clear();
                row_has_data = true;
                break;
            case '\r':
                break;
            case '\n':
                if (row_has_data || !field.empty() || !row.empty()) {
                    row.push_back(std::move(field));
                    field.clear();
                    records.push_back(std::move(row));
                    row.clear();
                    row_has_data = false;
                }
                break;
            default:
                field.push_back(ch);
                row_has_data = true;
                break;
        }
    }
    if (in_quotes) throw std::runtime_error("unterminated quoted CSV field");
    if (row_has_data || !field.empty() || !row.empty()) {
        row.push_back(std::move(field));
        records.push_back(std::move(row));
    }
    return records;
}

std::string fmt_general(double v, int significant) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant, v);
    return buf;
}

std::string fmt_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

}  // namespace xlcite::csv

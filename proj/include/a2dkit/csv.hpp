#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace a2dkit::csv {

/// One parsed data line, with its 1-based line number in the source file.
struct Row {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

/// A comma-separated file with a header line. Fields are unquoted; `#` lines
/// and blank lines are skipped. CR before LF is tolerated on input.
struct Table {
    std::string source;
    std::vector<std::string> header;
    std::vector<Row> rows;
};

std::vector<std::string> split(std::string_view line, char sep = ',');

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

Table parse(std::string_view text, std::string source);
Table read(const std::filesystem::path& path);

/// Throws ParseError unless `table.header` equals `expected` exactly.
void expect_header(const Table& table, const std::vector<std::string>& expected);

/// "file:line: " prefix for diagnostics.
std::string where(const Table& table, const Row& row);

std::string join(const std::vector<std::string>& fields, char sep = ',');

}  // namespace a2dkit::csv

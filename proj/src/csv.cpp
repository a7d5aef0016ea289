#include "a2dkit/csv.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "a2dkit/error.hpp"

namespace a2dkit::csv {

std::vector<std::string> split(std::string_view line, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            break;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out)
        throw IoError("write failed for '" + path.string() + "'");
}

Table parse(std::string_view text, std::string source)
{
    Table table;
    table.source = std::move(source);
    bool have_header = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty() || line.front() == '#')
            continue;
        if (!have_header) {
            table.header = split(line);
            have_header = true;
            continue;
        }
        Row row{line_no, split(line)};
        if (row.fields.size() != table.header.size())
            throw ParseError(table.source + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(table.header.size()) + " fields, found " +
                             std::to_string(row.fields.size()));
        table.rows.push_back(std::move(row));
    }
    if (!have_header)
        throw ParseError(table.source + ": missing header line");
    return table;
}

Table read(const std::filesystem::path& path)
{
    return parse(read_file(path), path.string());
}

void expect_header(const Table& table, const std::vector<std::string>& expected)
{
    if (table.header == expected)
        return;
    std::string msg = table.source + ": header mismatch";
    const std::size_t n = std::min(table.header.size(), expected.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (table.header[i] != expected[i]) {
            msg += " at column " + std::to_string(i + 1) + ": expected '" + expected[i] +
                   "', found '" + table.header[i] + "'";
            throw ParseError(msg);
        }
    }
    msg += ": expected " + std::to_string(expected.size()) + " columns, found " +
           std::to_string(table.header.size());
    throw ParseError(msg);
}

std::string where(const Table& table, const Row& row)
{
    return table.source + ":" + std::to_string(row.line) + ": ";
}

std::string join(const std::vector<std::string>& fields, char sep)
{
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            out += sep;
        out += fields[i];
    }
    return out;
}

}  // namespace a2dkit::csv

#include "solarsite/csv.hpp"

#include <istream>
#include <ostream>

#include "solarsite/error.hpp"
#include "solarsite/format.hpp"

namespace solarsite {

std::vector<std::string> split_fields(std::string_view line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        const auto piece = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.emplace_back(trim(piece));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::ifstream open_input(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open input file '" + path.string() + "'");
    }
    return in;
}

CsvReader::CsvReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

void CsvReader::fail(const std::string& what) const
{
    throw ParseError(source_, row_, what);
}

void CsvReader::expect_header(std::initializer_list<std::string_view> columns)
{
    std::string line;
    if (!std::getline(in_, line)) {
        row_ = 1;
        fail("missing header row");
    }
    row_ = 1;
    // tolerate a UTF-8 byte order mark
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
        line.erase(0, 3);
    }
    const auto fields = split_fields(line);
    std::size_t i = 0;
    bool ok = fields.size() == columns.size();
    for (auto it = columns.begin(); ok && it != columns.end(); ++it, ++i) {
        ok = fields[i] == *it;
    }
    if (!ok) {
        std::string expected;
        for (auto c : columns) {
            expected += expected.empty() ? "" : ",";
            expected += c;
        }
        fail("header does not match expected columns '" + expected + "'");
    }
    columns_ = columns.size();
}

bool CsvReader::next(std::vector<std::string>& fields)
{
    std::string line;
    while (std::getline(in_, line)) {
        ++row_;
        if (trim(line).empty()) {
            continue;
        }
        fields = split_fields(line);
        if (columns_ != 0 && fields.size() != columns_) {
            fail("expected " + std::to_string(columns_) + " columns, found " + std::to_string(fields.size()));
        }
        return true;
    }
    return false;
}

void CsvWriter::header(std::initializer_list<std::string_view> columns)
{
    for (auto c : columns) {
        field(c);
    }
    end_row();
}

CsvWriter& CsvWriter::field(std::string_view text)
{
    if (!first_) {
        out_ << ',';
    }
    out_ << text;
    first_ = false;
    return *this;
}

CsvWriter& CsvWriter::field(double value)
{
    return field(std::string_view(format_number(value)));
}

CsvWriter& CsvWriter::field(long long value)
{
    return field(std::string_view(std::to_string(value)));
}

void CsvWriter::end_row()
{
    out_ << '\n';
    first_ = true;
}

} // namespace solarsite

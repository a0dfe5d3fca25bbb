#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace solarsite {

// Minimal reader for the plain comma-separated tables this project exchanges.
// Fields never contain commas or quotes, so no quoting rules apply.
class CsvReader {
public:
    CsvReader(std::istream& in, std::string source);

    // Reads and checks the header row against the expected column names.
    void expect_header(std::initializer_list<std::string_view> columns);

    // Next non-blank data row, false at end of input.
    bool next(std::vector<std::string>& fields);

    // 1-based line number of the row last returned (header is row 1).
    std::size_t row() const noexcept { return row_; }
    const std::string& source() const noexcept { return source_; }

    [[noreturn]] void fail(const std::string& what) const;

private:
    std::istream& in_;
    std::string source_;
    std::size_t row_ = 0;
    std::size_t columns_ = 0;
};

std::vector<std::string> split_fields(std::string_view line);

std::ifstream open_input(const std::filesystem::path& path);

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(std::initializer_list<std::string_view> columns);

    CsvWriter& field(std::string_view text);
    CsvWriter& field(double value);
    CsvWriter& field(long long value);
    void end_row();

private:
    std::ostream& out_;
    bool first_ = true;
};

} // namespace solarsite

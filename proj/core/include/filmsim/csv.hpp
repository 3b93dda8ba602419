#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace filmsim {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

/// Parses a double formatted by format_double.
double parse_double(std::string_view s);

/// One cell of a CSV row: either numeric (17 significant digits) or text.
struct CsvCell {
    CsvCell(double v) : text(format_double(v)) {}
    CsvCell(std::string_view s) : text(s) {}
    CsvCell(const char* s) : text(s) {}
    std::string text;
};

/// Minimal CSV emitter: '#' comment lines for the configuration echo, one
/// header line, LF endings, UTF-8.  Throws std::runtime_error carrying the
/// path on I/O failure.
class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path);
    ~CsvWriter();

    void comment(std::string_view line);
    void header(std::initializer_list<std::string_view> columns);
    void row(std::initializer_list<CsvCell> cells);
    void close();  ///< flush and verify; called by the destructor

private:
    void check() const;
    std::filesystem::path path_;
    std::ofstream out_;
    bool closed_ = false;
};

/// Reads back the numeric data rows of an emitted file (comments and the
/// header skipped); non-numeric cells parse as NaN.  Used by round-trip
/// checks and downstream tooling.
std::vector<std::vector<double>> read_csv_rows(const std::filesystem::path& path);

}  // namespace filmsim

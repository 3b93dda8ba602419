#include "filmsim/csv.hpp"

#include <charconv>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace filmsim {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{}) return std::numeric_limits<double>::quiet_NaN();
    (void)ptr;
    return v;
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("filmsim: cannot open for writing: " + path.string());
}

CsvWriter::~CsvWriter() {
    try {
        close();
    } catch (...) {
    }
}

void CsvWriter::check() const {
    if (!out_) throw std::runtime_error("filmsim: write failed: " + path_.string());
}

void CsvWriter::comment(std::string_view line) {
    out_ << "# " << line << '\n';
    check();
}

void CsvWriter::header(std::initializer_list<std::string_view> columns) {
    bool first = true;
    for (const auto& c : columns) {
        if (!first) out_ << ',';
        out_ << c;
        first = false;
    }
    out_ << '\n';
    check();
}

void CsvWriter::row(std::initializer_list<CsvCell> cells) {
    bool first = true;
    for (const auto& c : cells) {
        if (!first) out_ << ',';
        out_ << c.text;
        first = false;
    }
    out_ << '\n';
    check();
}

void CsvWriter::close() {
    if (closed_) return;
    out_.flush();
    check();
    out_.close();
    closed_ = true;
}

std::vector<std::vector<double>> read_csv_rows(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("filmsim: cannot open for reading: " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // first non-comment line is the header
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        std::size_t start = 0;
        while (start <= line.size()) {
            const std::size_t comma = line.find(',', start);
            const std::size_t end = comma == std::string::npos ? line.size() : comma;
            row.push_back(parse_double(std::string_view(line).substr(start, end - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace filmsim

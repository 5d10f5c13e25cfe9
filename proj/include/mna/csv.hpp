#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace mna {

// One parsed CSV file. Leading '#' metadata lines are collected separately;
// `line_numbers` maps each data row back to its 1-based line in the file.
struct CsvTable {
    std::string path;
    std::vector<std::string> metadata;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<size_t> line_numbers;

    // Column position by name; throws if the header lacks it.
    size_t col(const std::string& name) const;
    bool has_col(const std::string& name) const;
};

// RFC-4180 reader (quoted fields, embedded commas/newlines, CRLF tolerant).
// The header row is mandatory; '#' lines before it are treated as metadata.
CsvTable read_csv(const std::string& path);

// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double v);

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header,
              const std::vector<std::pair<std::string, std::string>>& metadata = {});

    void row(const std::vector<std::string>& fields);
    void close();

private:
    std::ofstream out_;
    std::string path_;
    size_t n_cols_;
};

// Field-level numeric parsing with file/line context in the error message.
double parse_field_double(const CsvTable& t, size_t row, size_t col);
int64_t parse_field_int(const CsvTable& t, size_t row, size_t col);

}  // namespace mna

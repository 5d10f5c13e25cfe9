#include "mna/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace mna {

size_t CsvTable::col(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
        throw std::runtime_error(path + ": missing required column '" + name + "'");
    return static_cast<size_t>(it - header.begin());
}

bool CsvTable::has_col(const std::string& name) const {
    return std::find(header.begin(), header.end(), name) != header.end();
}

namespace {

// Splits one logical CSV record that is already free of embedded newlines
// except inside quotes, which the caller has stitched together.
std::vector<std::string> split_record(const std::string& line, const std::string& path,
                                      size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') { field += '"'; ++i; }
                else quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            if (!field.empty())
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": quote inside unquoted field");
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    if (quoted)
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": unterminated quote");
    fields.push_back(std::move(field));
    return fields;
}

bool has_open_quote(const std::string& s) {
    bool quoted = false;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') {
            if (quoted && i + 1 < s.size() && s[i + 1] == '"') ++i;
            else quoted = !quoted;
        }
    }
    return quoted;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);

    CsvTable table;
    table.path = path;

    std::string line;
    size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        // A quoted field may contain a newline; keep reading until quotes balance.
        size_t record_start = line_no;
        while (has_open_quote(line)) {
            std::string next;
            if (!std::getline(in, next))
                throw std::runtime_error(path + ":" + std::to_string(record_start) +
                                         ": unterminated quote");
            ++line_no;
            line += '\n';
            line += next;
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!header_seen && !line.empty() && line[0] == '#') {
            table.metadata.push_back(line);
            continue;
        }
        if (line.empty()) continue;
        auto fields = split_record(line, path, record_start);
        if (!header_seen) {
            table.header = std::move(fields);
            header_seen = true;
            continue;
        }
        if (fields.size() != table.header.size())
            throw std::runtime_error(path + ":" + std::to_string(record_start) + ": expected " +
                                     std::to_string(table.header.size()) + " fields, got " +
                                     std::to_string(fields.size()));
        table.rows.push_back(std::move(fields));
        table.line_numbers.push_back(record_start);
    }
    if (!header_seen) throw std::runtime_error(path + ": missing header row");
    return table;
}

std::string format_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

namespace {

std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

}  // namespace

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::pair<std::string, std::string>>& metadata)
    : out_(path, std::ios::binary), path_(path), n_cols_(header.size()) {
    if (!out_) throw std::runtime_error("cannot open file for writing: " + path);
    for (const auto& [k, v] : metadata) out_ << "# " << k << "=" << v << "\n";
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != n_cols_)
        throw std::runtime_error(path_ + ": row has " + std::to_string(fields.size()) +
                                 " fields, expected " + std::to_string(n_cols_));
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << quote_if_needed(fields[i]);
    }
    out_ << '\n';
}

void CsvWriter::close() {
    out_.close();
    if (!out_) throw std::runtime_error("write failed: " + path_);
}

double parse_field_double(const CsvTable& t, size_t row, size_t col) {
    const std::string& s = t.rows[row][col];
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error(t.path + ":" + std::to_string(t.line_numbers[row]) +
                                 ": invalid numeric value '" + s + "' in column '" +
                                 t.header[col] + "'");
    if (!std::isfinite(v))
        throw std::runtime_error(t.path + ":" + std::to_string(t.line_numbers[row]) +
                                 ": non-finite value '" + s + "' in column '" + t.header[col] + "'");
    return v;
}

int64_t parse_field_int(const CsvTable& t, size_t row, size_t col) {
    const std::string& s = t.rows[row][col];
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error(t.path + ":" + std::to_string(t.line_numbers[row]) +
                                 ": invalid integer '" + s + "' in column '" + t.header[col] + "'");
    return v;
}

}  // namespace mna

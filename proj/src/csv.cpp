#include "sqzchain/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include <fmt/format.h>

#include "sqzchain/error.hpp"

namespace sqz {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

double parse_field(const std::string& field, std::size_t row) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = field.data() + field.size();
    if (!field.empty() && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (field.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
        fail(ErrorCode::Data, fmt::format("CSV data row {}: '{}' is not a number", row, field));
    }
    return value;
}

}  // namespace

std::string format_number(double value) {
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

std::string write_csv(const Table& table) {
    std::string out;
    for (const auto& comment : table.comments) {
        out += "# ";
        out += comment;
        out += '\n';
    }
    for (std::size_t i = 0; i < table.headers.size(); ++i) {
        if (i) out += ',';
        out += table.headers[i];
    }
    out += '\n';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() != table.headers.size()) {
            fail(ErrorCode::Internal, fmt::format("CSV row {} has {} cells for {} columns", r, row.size(),
                                                  table.headers.size()));
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            if (const auto* number = std::get_if<double>(&row[i])) {
                out += format_number(*number);
            } else {
                out += std::get<std::string>(row[i]);
            }
        }
        out += '\n';
    }
    return out;
}

int CsvDocument::column(std::string_view name) const {
    for (std::size_t i = 0; i < headers.size(); ++i) {
        if (headers[i] == name) return static_cast<int>(i);
    }
    return -1;
}

CsvDocument read_csv(std::string_view text) {
    CsvDocument doc;
    bool have_header = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        const auto line = trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        auto fields = split_fields(line);
        if (!have_header) {
            doc.headers = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != doc.headers.size()) {
            fail(ErrorCode::Data, fmt::format("CSV line {}: {} fields, header has {}", line_no, fields.size(),
                                              doc.headers.size()));
        }
        doc.rows.push_back(std::move(fields));
    }
    if (!have_header) fail(ErrorCode::Data, "CSV input has no header row");
    return doc;
}

std::vector<SweepObservation> observations_from_csv(std::string_view text) {
    const CsvDocument doc = read_csv(text);
    const int pump = doc.column("pump_w");
    const int minus = doc.column("rp_minus_db");
    const int plus = doc.column("rp_plus_db");
    const int weight = doc.column("weight");
    for (auto [index, name] : {std::pair{pump, "pump_w"}, {minus, "rp_minus_db"}, {plus, "rp_plus_db"}}) {
        if (index < 0) fail(ErrorCode::Data, fmt::format("CSV input lacks a '{}' column", name));
    }
    std::vector<SweepObservation> out;
    out.reserve(doc.rows.size());
    for (std::size_t r = 0; r < doc.rows.size(); ++r) {
        const auto& row = doc.rows[r];
        SweepObservation obs;
        obs.pump_w = parse_field(row[pump], r + 1);
        obs.measured_minus_db = parse_field(row[minus], r + 1);
        obs.measured_plus_db = parse_field(row[plus], r + 1);
        if (weight >= 0) obs.weight = parse_field(row[weight], r + 1);
        out.push_back(obs);
    }
    return out;
}

}  // namespace sqz

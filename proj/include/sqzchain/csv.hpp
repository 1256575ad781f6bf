#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sqzchain/estimation.hpp"

namespace sqz {

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> comments;  // emitted as leading "# " lines
    std::vector<std::string> headers;
    std::vector<std::vector<Cell>> rows;
};

// %.9g, with negative zero printed as 0.
std::string format_number(double value);

// Comma separated, LF endings, no trailing separator. Ragged rows are an Internal error.
std::string write_csv(const Table& table);

struct CsvDocument {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;

    // Index of a header, or -1.
    int column(std::string_view name) const;
};

// Skips blank lines and lines starting with '#'. Throws Data on ragged rows.
CsvDocument read_csv(std::string_view text);

// Reads pump_w, rp_minus_db, rp_plus_db and an optional weight column by
// header name; other columns are ignored.
std::vector<SweepObservation> observations_from_csv(std::string_view text);

}  // namespace sqz

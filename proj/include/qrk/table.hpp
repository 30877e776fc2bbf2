#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qrk {

using Cell = std::variant<double, std::string>;

// Column-named rows; complex quantities are stored as <name>_re, <name>_im.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> meta;

    int column(const std::string& name) const;  // -1 if absent
    double number(std::size_t row, const std::string& name) const;
};

// RFC-4180 style, LF line ends, doubles as %.17g.
std::string to_csv(const Table& t);
// {"meta": {...}, "rows": [{column: value}, ...]}; NaN/Inf become null.
std::string to_json(const Table& t);

Table parse_csv(const std::string& text);
Table parse_json(const std::string& text);

std::string format_double(double v);

}  // namespace qrk

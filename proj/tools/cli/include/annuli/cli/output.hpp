#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace annuli::cli {

/// Empty cells are written as an empty CSV field and as JSON null.
using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// A one-row table whose fields are merged into the top-level JSON object.
    bool scalar = false;

    void add_row(std::vector<Cell> row);
};

/// What a command emits: one or more tables in a fixed order.
///   CSV:  each table as a header plus rows, tables separated by a blank line.
///   JSON: one object; scalar tables contribute their fields, other tables
///         become arrays of row objects (or of plain values for one column).
struct Document {
    std::vector<Table> tables;
};

/// %.12e, with nan/inf spelled the same on every platform.
std::string format_number(double v);

void write_csv(std::ostream& os, const Document& doc);
void write_json(std::ostream& os, const Document& doc);

}  // namespace annuli::cli

#include "annuli/cli/output.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace annuli::cli {

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

struct CsvCell {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return csv_escape(v); }
};

// Rounded to the same 12 significant digits as the CSV output.
nlohmann::ordered_json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return std::strtod(format_number(v).c_str(), nullptr);
}

struct JsonCell {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double v) const { return json_number(v); }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(bool v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
};

}  // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw std::logic_error("row width does not match the columns of table '" + name + "'");
    rows.push_back(std::move(row));
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

void write_csv(std::ostream& os, const Document& doc) {
    bool first = true;
    for (const auto& t : doc.tables) {
        if (!first) os << '\n';
        first = false;
        for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_escape(t.columns[i]);
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << std::visit(CsvCell{}, row[i]);
            os << '\n';
        }
    }
}

void write_json(std::ostream& os, const Document& doc) {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& t : doc.tables) {
        if (t.scalar && t.rows.size() == 1) {
            for (std::size_t i = 0; i < t.columns.size(); ++i)
                out[t.columns[i]] = std::visit(JsonCell{}, t.rows[0][i]);
            continue;
        }
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            if (t.columns.size() == 1) {
                arr.push_back(std::visit(JsonCell{}, row[0]));
                continue;
            }
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < t.columns.size(); ++i)
                obj[t.columns[i]] = std::visit(JsonCell{}, row[i]);
            arr.push_back(std::move(obj));
        }
        out[t.name] = std::move(arr);
    }
    os << out.dump(2) << '\n';
}

}  // namespace annuli::cli

// table.hpp — Column-oriented result tables with CSV and JSON emitters.
// CSV uses "." decimals and 17 significant digits so repeated runs are
// bit-stable; JSON round-trips through the parser.

#pragma once

#include <nlohmann/json.hpp>

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tfd {

struct Table {
    using Cell = std::variant<double, std::string, bool>;

    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row) {
        if (row.size() != columns.size()) {
            throw std::invalid_argument("Table: row width does not match columns");
        }
        rows.push_back(std::move(row));
    }
};

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

inline std::string to_csv(const Table& t) {
    std::ostringstream os;
    for (size_t i = 0; i < t.columns.size(); ++i) {
        if (i) os << ',';
        os << t.columns[i];
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            if (const double* d = std::get_if<double>(&row[i])) {
                os << format_double(*d);
            } else if (const bool* b = std::get_if<bool>(&row[i])) {
                os << (*b ? "true" : "false");
            } else {
                os << std::get<std::string>(row[i]);
            }
        }
        os << '\n';
    }
    return os.str();
}

inline std::string to_json(const Table& t) {
    nlohmann::json j;
    j["table"] = t.name;
    j["columns"] = t.columns;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& cell : row) {
            if (const double* d = std::get_if<double>(&cell)) {
                jr.push_back(*d);
            } else if (const bool* b = std::get_if<bool>(&cell)) {
                jr.push_back(*b);
            } else {
                jr.push_back(std::get<std::string>(cell));
            }
        }
        j["rows"].push_back(std::move(jr));
    }
    return j.dump() + "\n";
}

inline Table table_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    Table t;
    t.name = j.at("table").get<std::string>();
    t.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& jr : j.at("rows")) {
        std::vector<Table::Cell> row;
        for (const auto& cell : jr) {
            if (cell.is_number()) {
                row.push_back(cell.get<double>());
            } else if (cell.is_boolean()) {
                row.push_back(cell.get<bool>());
            } else {
                row.push_back(cell.get<std::string>());
            }
        }
        t.add_row(std::move(row));
    }
    return t;
}

} // namespace tfd

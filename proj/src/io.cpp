#include "optomech/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "json.hpp"

#include "optomech/errors.hpp"

namespace optomech {

namespace {

std::string format_cell(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void check_shape(const Table& t) {
    for (const auto& row : t.rows)
        if (row.size() != t.columns.size())
            throw Error("table row width does not match the column count");
}

}  // namespace

std::string to_csv(const Table& table) {
    check_shape(table);
    std::string out;
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
        if (j) out += ',';
        out += table.columns[j];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ',';
            out += format_cell(row[j]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table) {
    check_shape(table);
    nlohmann::json j;
    j["columns"] = table.columns;
    auto rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        auto jr = nlohmann::json::array();
        for (double v : row) {
            if (std::isfinite(v))
                jr.push_back(v);
            else
                jr.push_back(format_cell(v));
        }
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open output file: " + path);
    f << text;
    if (!f) throw Error("failed writing output file: " + path);
}

}  // namespace optomech

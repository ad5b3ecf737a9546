#pragma once

#include <string>
#include <vector>

namespace optomech {

// Column-named numeric table, the one shape every subcommand emits.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// CSV with %.17g cells, so equal doubles serialize to equal bytes and a
// reader recovers them exactly. Non-finite values print as inf/-inf/nan.
std::string to_csv(const Table& table);

// {"columns": [...], "rows": [[...], ...]}; non-finite values become the
// strings "inf"/"-inf"/"nan" since JSON has no literals for them.
std::string to_json(const Table& table);

// Writes to the path, or to stdout when the path is "-" or empty.
void write_text(const std::string& path, const std::string& text);

}  // namespace optomech

#pragma once

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace degpar::cli {

using Json = nlohmann::ordered_json;

/// %.17g; "nan", "inf", "-inf" for non-finite values.
[[nodiscard]] std::string format_double(double v);

/// Pretty-printed JSON with every float at 17 significant digits.
/// Non-finite floats become null.
void write_json(std::ostream& os, const Json& value);

/// Single-line form of write_json.
[[nodiscard]] std::string compact_json(const Json& value);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

/// `# key=value` lines for the flattened config, then the header row and
/// the rows. Cells are RFC-4180 quoted when needed.
void write_csv(std::ostream& os, const Json& config, const Table& table);

/// {"config": ..., "<key>": [{column: cell, ...}, ...]}
[[nodiscard]] Json table_json(const Json& config, const Table& table, const std::string& key = "rows");

}  // namespace degpar::cli

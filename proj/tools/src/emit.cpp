#include "degpar/cli/emit.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace degpar::cli {

namespace {

void write_value(std::ostream& os, const Json& v, int indent, int depth) {
    const bool pretty = indent >= 0;
    auto newline = [&](int d) {
        if (pretty) os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (v.type()) {
        case Json::value_t::number_float: {
            const double d = v.get<double>();
            os << (std::isfinite(d) ? format_double(d) : "null");
            return;
        }
        case Json::value_t::array: {
            if (v.empty()) {
                os << "[]";
                return;
            }
            os << '[';
            bool first = true;
            for (const auto& item : v) {
                if (!first) os << (item.is_structured() ? "," : ", ");
                first = false;
                // Arrays of scalars stay on one line.
                if (item.is_structured()) newline(depth + 1);
                write_value(os, item, indent, depth + 1);
            }
            if (v.back().is_structured()) newline(depth);
            os << ']';
            return;
        }
        case Json::value_t::object: {
            if (v.empty()) {
                os << "{}";
                return;
            }
            os << '{';
            bool first = true;
            for (const auto& [key, item] : v.items()) {
                if (!first) os << ',';
                first = false;
                newline(depth + 1);
                os << Json(key).dump() << (pretty ? ": " : ":");
                write_value(os, item, indent, depth + 1);
            }
            newline(depth);
            os << '}';
            return;
        }
        default: os << v.dump(); return;
    }
}

std::string csv_cell(const Json& v) {
    std::string text;
    if (v.is_string()) {
        text = v.get<std::string>();
    } else if (v.is_number_float()) {
        text = format_double(v.get<double>());
    } else if (v.is_structured()) {
        text = compact_json(v);
    } else {
        text = v.dump();
    }
    if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

void write_config_lines(std::ostream& os, const Json& config, const std::string& prefix) {
    for (const auto& [key, item] : config.items()) {
        const std::string name = prefix.empty() ? key : prefix + "." + key;
        if (item.is_object()) {
            write_config_lines(os, item, name);
        } else {
            os << "# " << name << '=' << (item.is_string() ? item.get<std::string>() : compact_json(item)) << '\n';
        }
    }
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_json(std::ostream& os, const Json& value) {
    write_value(os, value, 2, 0);
    os << '\n';
}

std::string compact_json(const Json& value) {
    std::ostringstream os;
    write_value(os, value, -1, 0);
    return os.str();
}

void write_csv(std::ostream& os, const Json& config, const Table& table) {
    write_config_lines(os, config, "");
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        os << (i ? "," : "") << table.columns[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
        os << '\n';
    }
}

Json table_json(const Json& config, const Table& table, const std::string& key) {
    Json out = Json::object();
    out["config"] = config;
    Json records = Json::array();
    for (const auto& row : table.rows) {
        Json record = Json::object();
        for (std::size_t i = 0; i < table.columns.size() && i < row.size(); ++i) record[table.columns[i]] = row[i];
        records.push_back(std::move(record));
    }
    out[key] = std::move(records);
    return out;
}

}  // namespace degpar::cli

#include "padic/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace padic {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

void write_json(const nlohmann::json &value, std::string &out) {
    switch (value.type()) {
    case nlohmann::json::value_t::object: {
        out += '{';
        bool first = true;
        for (const auto &[key, item] : value.items()) {
            if (!first) out += ',';
            first = false;
            out += nlohmann::json(key).dump();
            out += ':';
            write_json(item, out);
        }
        out += '}';
        break;
    }
    case nlohmann::json::value_t::array: {
        out += '[';
        bool first = true;
        for (const auto &item : value) {
            if (!first) out += ',';
            first = false;
            write_json(item, out);
        }
        out += ']';
        break;
    }
    case nlohmann::json::value_t::number_float: {
        const double v = value.get<double>();
        // JSON has no literal for non-finite numbers
        if (std::isfinite(v)) {
            out += format_double(v);
        } else {
            out += '"' + format_double(v) + '"';
        }
        break;
    }
    default:
        out += value.dump();
    }
}

std::string csv_field(const std::string &field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

} // namespace

std::string dump_json(const nlohmann::json &value) {
    std::string out;
    write_json(value, out);
    return out;
}

std::string dump_csv(const CsvTable &table) {
    std::ostringstream out;
    auto write_row = [&out](const std::vector<std::string> &row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << ',';
            out << csv_field(row[i]);
        }
        out << '\n';
    };
    write_row(table.header);
    for (const auto &row : table.rows) write_row(row);
    return out.str();
}

nlohmann::json count_json(Count value) {
    if (value <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(value);
    return to_string(value);
}

nlohmann::json to_json(const VerificationRecord &record) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto &[key, v] : record.params) params[key] = v;
    return {{"check", record.check},
            {"params", params},
            {"max_error", record.max_error},
            {"certified_bound", record.certified_bound},
            {"pass", record.pass}};
}

nlohmann::json to_json(const Enclosure &enclosure) {
    return {{"value", enclosure.value}, {"bound", enclosure.bound}};
}

} // namespace padic

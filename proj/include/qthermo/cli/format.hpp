// format.hpp - tables, number formatting and the CSV / JSON writers

#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace qthermo::cli {

inline constexpr const char* kToolName = "qthermo";
inline constexpr const char* kToolVersion = "1.0.0";

/// Shortest decimal string that parses back to the same double.
inline std::string shortest(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

// monostate is a missing value: empty in CSV, null in JSON.
using Cell = std::variant<std::monostate, double, long long, std::string>;

inline std::string to_text(const Cell& c) {
    struct {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(double x) const { return shortest(x); }
        std::string operator()(long long x) const { return std::to_string(x); }
        std::string operator()(const std::string& s) const { return s; }
    } v;
    return std::visit(v, c);
}

inline nlohmann::ordered_json to_json(const Cell& c) {
    struct {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(double x) const {
            if (!std::isfinite(x)) return nullptr;
            return x;
        }
        nlohmann::ordered_json operator()(long long x) const { return x; }
        nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    } v;
    return std::visit(v, c);
}

template <class T>
Cell cell(const std::optional<T>& x) {
    if (!x) return std::monostate{};
    return Cell(*x);
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

using Fields = std::vector<std::pair<std::string, Cell>>;

struct Document {
    std::string command;
    std::uint64_t seed{0};
    std::vector<std::pair<std::string, std::string>> config;  // resolved, in a fixed order
    Fields summary;
    Table table;
};

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

}  // namespace detail

/// Header block as '#' lines, then the table with a header row. LF endings.
inline void write_csv(std::ostream& os, const Document& doc) {
    os << "# tool: " << kToolName << ' ' << kToolVersion << '\n';
    os << "# command: " << doc.command << '\n';
    os << "# seed: " << doc.seed << '\n';
    for (const auto& [k, v] : doc.config) os << "# config." << k << ": " << v << '\n';
    for (const auto& [k, v] : doc.summary) os << "# result." << k << ": " << to_text(v) << '\n';
    for (std::size_t i = 0; i < doc.table.columns.size(); ++i) {
        os << (i ? "," : "") << doc.table.columns[i];
    }
    os << '\n';
    for (const auto& row : doc.table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << detail::csv_field(to_text(row[i]));
        }
        os << '\n';
    }
}

inline void write_json(std::ostream& os, const Document& doc) {
    nlohmann::ordered_json meta;
    meta["tool"] = kToolName;
    meta["version"] = kToolVersion;
    meta["command"] = doc.command;
    meta["seed"] = doc.seed;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    for (const auto& [k, v] : doc.config) config[k] = v;
    meta["config"] = config;
    nlohmann::ordered_json result = nlohmann::ordered_json::object();
    for (const auto& [k, v] : doc.summary) result[k] = to_json(v);
    meta["result"] = result;

    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const auto& row : doc.table.rows) {
        nlohmann::ordered_json rec = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) rec[doc.table.columns[i]] = to_json(row[i]);
        records.push_back(std::move(rec));
    }
    nlohmann::ordered_json out;
    out["meta"] = std::move(meta);
    out["records"] = std::move(records);
    os << out.dump(2) << '\n';
}

}  // namespace qthermo::cli

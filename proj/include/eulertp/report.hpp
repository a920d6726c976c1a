#pragma once

// Tabular reports shared by the command-line tools: CSV with "# key=value"
// metadata lines, or JSON {"metadata": {...}, "rows": [...]}.

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rational.hpp"

namespace eulertp {

inline constexpr const char* tool_version = "0.1.0";

using Cell = std::variant<long, double, std::string, bool>;

struct Column {
    std::string name;
    bool in_csv = true;  // false: JSON only
};

struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;

    void add_metadata(std::string key, std::string value) { metadata.emplace_back(std::move(key), std::move(value)); }
};

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string format_cell(const Cell& c) {
    struct Visitor {
        std::string operator()(long v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(const std::string& v) const { return v; }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
    };
    return std::visit(Visitor{}, c);
}

inline void write_csv(std::ostream& os, const Table& t) {
    for (const auto& [k, v] : t.metadata) os << "# " << k << '=' << v << '\n';
    bool first = true;
    for (const auto& c : t.columns) {
        if (!c.in_csv) continue;
        os << (first ? "" : ",") << c.name;
        first = false;
    }
    os << '\n';
    for (const auto& row : t.rows) {
        first = true;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (!t.columns[i].in_csv) continue;
            os << (first ? "" : ",") << format_cell(row[i]);
            first = false;
        }
        os << '\n';
    }
}

inline nlohmann::ordered_json to_json(const Table& t) {
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.metadata) meta[k] = v;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i)
            std::visit([&](const auto& v) { obj[t.columns[i].name] = v; }, row[i]);
        rows.push_back(std::move(obj));
    }
    nlohmann::ordered_json out;
    out["metadata"] = std::move(meta);
    out["rows"] = std::move(rows);
    return out;
}

inline void write_json(std::ostream& os, const Table& t) { os << to_json(t).dump(2) << '\n'; }

/// One verification row: lhs <= rhs up to the margin tolerance.
struct BoundRow {
    std::vector<std::pair<std::string, long>> parameters;
    std::string lhs_exact;  // "p/q" when the left side is exact, else empty
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool pass = false;
};

inline constexpr double margin_tolerance = 1e-12;

inline BoundRow make_bound_row(std::vector<std::pair<std::string, long>> parameters, double lhs, double rhs,
                               std::string lhs_exact = {}) {
    BoundRow r;
    r.parameters = std::move(parameters);
    r.lhs_exact = std::move(lhs_exact);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.pass = r.margin >= -margin_tolerance;
    return r;
}

struct BoundReport {
    std::vector<BoundRow> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    bool all_pass() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }

    Table to_table() const {
        Table t;
        t.metadata = metadata;
        if (!rows.empty())
            for (const auto& [name, _] : rows.front().parameters) t.columns.push_back({name});
        for (const char* c : {"lhs", "rhs", "margin", "pass"}) t.columns.push_back({c});
        const bool exact = !rows.empty() && !rows.front().lhs_exact.empty();
        if (exact) t.columns.push_back({"lhs_exact", false});
        for (const auto& r : rows) {
            std::vector<Cell> cells;
            for (const auto& [_, v] : r.parameters) cells.emplace_back(v);
            cells.emplace_back(r.lhs);
            cells.emplace_back(r.rhs);
            cells.emplace_back(r.margin);
            cells.emplace_back(r.pass);
            if (exact) cells.emplace_back(r.lhs_exact);
            t.rows.push_back(std::move(cells));
        }
        return t;
    }
};

}  // namespace eulertp

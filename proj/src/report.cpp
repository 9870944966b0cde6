#include "cohq/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace cohq {

using ordered_json = nlohmann::ordered_json;

std::string emit_json(const CheckReport& report) {
    ordered_json j;
    j["schema_version"] = 1;
    j["suite"] = report.suite;
    j["config_hash"] = report.config_hash;

    ordered_json env = ordered_json::object();
    for (const auto& [k, v] : report.environment) env[k] = v;
    j["environment"] = std::move(env);

    ordered_json checks = ordered_json::array();
    for (const auto& c : report.checks) {
        ordered_json rec;
        rec["name"] = c.name;
        rec["measured"] = c.measured;
        if (!c.informational()) rec["tolerance"] = c.tolerance;
        rec["pass"] = c.pass;
        if (!c.note.empty()) rec["note"] = c.note;
        checks.push_back(std::move(rec));
    }
    j["checks"] = std::move(checks);

    if (!report.tables.empty()) {
        ordered_json tables = ordered_json::array();
        for (const auto& t : report.tables) {
            ordered_json tab;
            tab["name"] = t.name;
            tab["columns"] = t.columns;
            tab["rows"] = t.rows;
            tables.push_back(std::move(tab));
        }
        j["tables"] = std::move(tables);
    }

    j["pass"] = report.pass();
    j["timing_ms"] = report.timing_ms;
    return j.dump(2) + "\n";
}

static std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

static std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string emit_csv(const CheckReport& report) {
    std::string out = "suite,check,measured,tolerance,pass,note\n";
    for (const auto& c : report.checks) {
        out += csv_quote(report.suite) + "," + csv_quote(c.name) + "," + fmt(c.measured) + ",";
        out += c.informational() ? std::string("") : fmt(c.tolerance);
        out += std::string(",") + (c.pass ? "true" : "false") + "," + csv_quote(c.note) + "\n";
    }
    for (const auto& t : report.tables) {
        out += "\n# table: " + t.name + "\n";
        for (size_t i = 0; i < t.columns.size(); ++i)
            out += csv_quote(t.columns[i]) + (i + 1 < t.columns.size() ? "," : "\n");
        for (const auto& row : t.rows)
            for (size_t i = 0; i < row.size(); ++i)
                out += fmt(row[i]) + (i + 1 < row.size() ? "," : "\n");
    }
    return out;
}

} // namespace cohq

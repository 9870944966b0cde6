#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace cohq {

/* One verification record.  `tolerance` is NaN for purely informational
 * records (reported values that are not asserted against a bound). */
struct CheckRecord {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    std::string note;

    bool informational() const { return std::isnan(tolerance); }
};

/* Numeric table payload (convergence sequences, sweep results). */
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/* Deterministic result of a verification suite.  Identical inputs produce
 * identical content except for timing_ms. */
struct CheckReport {
    std::string suite;
    std::string config_hash;
    std::vector<std::pair<std::string, std::string>> environment; // insertion-ordered
    std::vector<CheckRecord> checks;
    std::vector<Table> tables;
    double timing_ms = 0.0;

    void env(const std::string& key, const std::string& value) {
        environment.emplace_back(key, value);
    }

    // asserted record: passes when measured <= tolerance
    CheckRecord& add(const std::string& name, double measured, double tolerance,
                     const std::string& note = "") {
        checks.push_back({name, measured, tolerance, measured <= tolerance, note});
        return checks.back();
    }

    // boolean condition record
    CheckRecord& add_flag(const std::string& name, bool ok, const std::string& note = "") {
        checks.push_back({name, ok ? 1.0 : 0.0, 1.0, ok, note});
        return checks.back();
    }

    // informational record: reported, never failed
    CheckRecord& add_info(const std::string& name, double measured, const std::string& note = "") {
        checks.push_back({name, measured, std::nan(""), true, note});
        return checks.back();
    }

    // a suite that was not applicable and was skipped, recorded explicitly
    CheckRecord& add_skip(const std::string& name, const std::string& why) {
        checks.push_back({name, 0.0, std::nan(""), true, "SKIPPED: " + why});
        return checks.back();
    }

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    void merge(const CheckReport& other, const std::string& prefix) {
        for (auto c : other.checks) {
            c.name = prefix + "/" + c.name;
            checks.push_back(std::move(c));
        }
        for (auto t : other.tables) {
            t.name = prefix + "/" + t.name;
            tables.push_back(std::move(t));
        }
    }
};

// JSON per the schema documented in the README; deterministic key order.
std::string emit_json(const CheckReport& report);
// flat CSV of the check records followed by any tables
std::string emit_csv(const CheckReport& report);

} // namespace cohq

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "cohq/config.hpp"
#include "cohq/errors.hpp"
#include "cohq/suites.hpp"

namespace {

int run_command(const std::string& config_path,
                const std::vector<std::pair<std::string, std::string>>& overrides,
                const std::string& suite) {
    using cohq::exit_code;

    const cohq::RunConfig cfg = cohq::build_config(config_path, overrides);

    const auto t0 = std::chrono::steady_clock::now();
    cohq::CheckReport report = cohq::run_suite(cfg, suite);
    const auto t1 = std::chrono::steady_clock::now();
    report.timing_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    const std::string text =
        cfg.format == "csv" ? cohq::emit_csv(report) : cohq::emit_json(report);
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) throw cohq::config_error("cannot write report to '" + cfg.out + "'");
        f << text;
    }

    int checks = 0, failures = 0, skips = 0;
    for (const auto& c : report.checks) {
        ++checks;
        if (!c.pass) ++failures;
        if (c.note.rfind("SKIPPED:", 0) == 0) ++skips;
    }
    std::fprintf(stderr, "suite '%s': %s (%d records, %d failed, %d skipped)\n",
                 report.suite.c_str(), report.pass() ? "PASS" : "FAIL", checks, failures,
                 skips);
    return report.pass() ? exit_code::exit_pass : exit_code::exit_check_failure;
}

} // namespace

int main(int argc, char** argv) {
    using cohq::exit_code;

    CLI::App app{"numerical laboratory for quadratic-constraint models on a truncated "
                 "two-mode Fock space"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "execute a verification suite and emit a report");
    std::string model, r_sq, hbar, cutoff, scheme, margin, suite = "full", out, format,
                config_path;
    auto* o_model = run->add_option("--model", model, "model: A, B, or C");
    auto* o_rsq = run->add_option("--r-sq", r_sq, "squared constraint radius R^2");
    auto* o_hbar = run->add_option("--hbar", hbar, "Planck scale (default 1)");
    auto* o_cutoff = run->add_option("--cutoff", cutoff, "truncation cutoff N");
    auto* o_scheme = run->add_option("--scheme", scheme, "truncation: total or permode");
    auto* o_margin = run->add_option("--margin", margin, "interior margin for algebra checks");
    run->add_option("--suite", suite,
                    "check-algebra | casimir-identity | select-rep | resolve-identity | "
                    "kin-phys-equality | project-hw | classical-maps | "
                    "semiclassical-sweep | full");
    auto* o_out = run->add_option("--out", out, "report path (default: stdout)");
    auto* o_format = run->add_option("--format", format, "json or csv");
    run->add_option("--config", config_path, "flat key=value config file; flags win");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_code::exit_pass : exit_code::exit_config_error;
    }

    std::vector<std::pair<std::string, std::string>> overrides;
    if (o_model->count()) overrides.emplace_back("model", model);
    if (o_rsq->count()) overrides.emplace_back("r_sq", r_sq);
    if (o_hbar->count()) overrides.emplace_back("hbar", hbar);
    if (o_scheme->count()) overrides.emplace_back("scheme", scheme);
    if (o_cutoff->count()) overrides.emplace_back("cutoff", cutoff);
    if (o_margin->count()) overrides.emplace_back("margin", margin);
    if (o_out->count()) overrides.emplace_back("out", out);
    if (o_format->count()) overrides.emplace_back("format", format);

    try {
        return run_command(config_path, overrides, suite);
    } catch (const cohq::no_physical_states& e) {
        std::fprintf(stderr, "no physical states: %s\n", e.what());
        return exit_code::exit_no_physical_states;
    } catch (const cohq::unsupported_model& e) {
        std::fprintf(stderr, "unsupported model: %s\n", e.what());
        return exit_code::exit_unsupported_model;
    } catch (const cohq::truncation_too_small& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_code::exit_config_error;
    } catch (const cohq::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_code::exit_config_error;
    } catch (const cohq::usage_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_code::exit_config_error;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_code::exit_config_error;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code::exit_check_failure;
    }
}

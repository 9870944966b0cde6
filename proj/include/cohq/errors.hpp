#pragma once

#include <stdexcept>
#include <string>

namespace cohq {

/* Error taxonomy shared by the library and the CLI.
 *
 * config_error         - invalid user-facing configuration (bad cutoff, unknown key, ...)
 * usage_error          - API misuse (operator space mismatch, margin below the safe
 *                        minimum for a model, ...)
 * no_physical_states   - the constraint kernel is empty for the requested parameters
 * unsupported_model    - the requested operation is out of numerical scope for the model
 * truncation_too_small - a state cannot be represented at the requested tail accuracy;
 *                        carries the minimal sufficient cutoff
 */

struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct usage_error : std::logic_error {
    explicit usage_error(const std::string& msg) : std::logic_error(msg) {}
};

struct no_physical_states : std::runtime_error {
    explicit no_physical_states(const std::string& msg) : std::runtime_error(msg) {}
};

struct unsupported_model : std::runtime_error {
    explicit unsupported_model(const std::string& msg) : std::runtime_error(msg) {}
};

struct truncation_too_small : std::runtime_error {
    int required_cutoff;
    truncation_too_small(const std::string& msg, int required)
        : std::runtime_error(msg), required_cutoff(required) {}
};

// Process exit codes used by the cohq tool.
enum exit_code : int {
    exit_pass = 0,
    exit_check_failure = 1,
    exit_config_error = 2,
    exit_no_physical_states = 3,
    exit_unsupported_model = 4,
};

} // namespace cohq

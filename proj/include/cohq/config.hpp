#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cohq/coherent.hpp"
#include "cohq/models.hpp"

namespace cohq {

// Single source of truth for a run: flat key=value file, overridden by CLI
// flags, hashed into every report.
struct RunConfig {
    int schema_version = 1;
    Model model = Model::A_OscSum;
    double r_sq = 6.0;
    double hbar = 1.0;
    CutoffScheme scheme = CutoffScheme::TotalQuanta;
    int cutoff = 20;
    int margin = 0;
    QuadratureSpec quad;
    int lambda_nodes = 64;
    unsigned seed = 20240817u;
    int roundtrip_samples = 1000;
    int exclusion_samples = 100000;
    std::map<std::string, double> tol; // named tolerances, all positive
    std::vector<double> sweep_radial;  // theta (A) / xi (B) grid
    std::vector<double> sweep_angle;   // phi grid
    std::vector<double> sweep_r_sq;    // constraint-scale sweep; empty = {r_sq}
    std::string out;                   // empty = stdout
    std::string format = "json";
};

RunConfig default_config(Model model);

// flat key=value lines; '#' starts a comment; keys listed in the README
std::vector<std::pair<std::string, std::string>> read_config_kv(const std::string& path);

// applies one entry; unknown keys and malformed values raise config_error
// naming the offending key
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

// file entries first (if any), then overrides; the model key is resolved first
// so per-model defaults are in place before the remaining entries apply
RunConfig build_config(const std::string& config_path,
                       const std::vector<std::pair<std::string, std::string>>& overrides);

void validate_config(const RunConfig& cfg);

// FNV-1a over the semantic fields (output path/format excluded)
std::string config_hash(const RunConfig& cfg);

ModelSpec to_model_spec(const RunConfig& cfg);

} // namespace cohq

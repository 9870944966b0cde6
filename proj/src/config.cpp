#include "cohq/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cohq {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("config key '" + key + "': '" + v + "' is not a number");
    }
}

long parse_int(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        const long x = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("config key '" + key + "': '" + v + "' is not an integer");
    }
}

std::vector<double> parse_grid(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    return out;
}

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_grid(const std::vector<double>& g) {
    std::string s;
    for (size_t i = 0; i < g.size(); ++i) {
        if (i) s += ",";
        s += fmt(g[i]);
    }
    return s;
}

} // namespace

RunConfig default_config(Model model) {
    RunConfig c;
    c.model = model;
    c.tol["casimir"] = 1e-10;
    c.tol["kin-phys"] = 1e-10;
    c.tol["control-min"] = 1e-3;
    c.tol["project"] = 1e-12;
    c.tol["roundtrip"] = 1e-10;
    c.tol["flow"] = 1e-10;
    switch (model) {
        case Model::A_OscSum:
            c.r_sq = 6.0;
            c.scheme = CutoffScheme::TotalQuanta;
            c.cutoff = 20;
            c.margin = 0;
            c.tol["algebra"] = 1e-12;
            c.tol["resolve"] = 1e-8;
            c.sweep_radial = {M_PI / 8.0, M_PI / 4.0, 3.0 * M_PI / 8.0};
            c.sweep_angle = {0.0, M_PI / 3.0, 2.0 * M_PI / 3.0};
            c.sweep_r_sq = {6.0, 22.0, 102.0};
            break;
        case Model::B_OscDiff:
            c.r_sq = 2.0;
            c.scheme = CutoffScheme::PerMode;
            c.cutoff = 24;
            c.margin = 4;
            c.tol["algebra"] = 1e-11;
            c.tol["resolve"] = 1e-4;
            c.sweep_radial = {0.0, 0.1, 0.2};
            c.sweep_angle = {0.0, M_PI / 2.0};
            c.sweep_r_sq = {2.0};
            break;
        case Model::C_Inverted:
            c.r_sq = 4.0;
            c.scheme = CutoffScheme::PerMode;
            c.cutoff = 12;
            c.margin = 4;
            c.tol["algebra"] = 1e-11;
            c.tol["resolve"] = 1e-4;
            break;
    }
    return c;
}

std::vector<std::pair<std::string, std::string>> read_config_kv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config file '" + path + "' line " + std::to_string(lineno) +
                               ": expected key=value");
        kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return kv;
}

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "schema_version") {
        if (parse_int(key, value) != 1)
            throw config_error("config key 'schema_version': only version 1 is understood");
    } else if (key == "model") {
        cfg.model = model_from_name(value);
    } else if (key == "r_sq") {
        cfg.r_sq = parse_double(key, value);
    } else if (key == "hbar") {
        cfg.hbar = parse_double(key, value);
    } else if (key == "scheme") {
        cfg.scheme = scheme_from_name(value);
    } else if (key == "cutoff") {
        cfg.cutoff = static_cast<int>(parse_int(key, value));
    } else if (key == "margin") {
        cfg.margin = static_cast<int>(parse_int(key, value));
    } else if (key == "quad.radial_nodes") {
        cfg.quad.radial_nodes = static_cast<int>(parse_int(key, value));
    } else if (key == "quad.angular_nodes") {
        cfg.quad.angular_nodes = static_cast<int>(parse_int(key, value));
    } else if (key == "quad.su11_radial_cutoff") {
        cfg.quad.su11_radial_cutoff = parse_double(key, value);
    } else if (key == "lambda_nodes") {
        cfg.lambda_nodes = static_cast<int>(parse_int(key, value));
    } else if (key == "seed") {
        cfg.seed = static_cast<unsigned>(parse_int(key, value));
    } else if (key == "roundtrip_samples") {
        cfg.roundtrip_samples = static_cast<int>(parse_int(key, value));
    } else if (key == "exclusion_samples") {
        cfg.exclusion_samples = static_cast<int>(parse_int(key, value));
    } else if (key.rfind("tol.", 0) == 0) {
        const std::string name = key.substr(4);
        if (name.empty()) throw config_error("config key 'tol.': missing tolerance name");
        cfg.tol[name] = parse_double(key, value);
    } else if (key == "sweep.radial") {
        cfg.sweep_radial = parse_grid(key, value);
    } else if (key == "sweep.angle") {
        cfg.sweep_angle = parse_grid(key, value);
    } else if (key == "sweep.r_sq") {
        cfg.sweep_r_sq = parse_grid(key, value);
    } else if (key == "out") {
        cfg.out = value;
    } else if (key == "format") {
        cfg.format = value;
    } else {
        throw config_error("unknown config key '" + key + "'");
    }
}

void validate_config(const RunConfig& cfg) {
    if (cfg.r_sq <= 0.0) throw config_error("config key 'r_sq': must be positive");
    if (cfg.hbar <= 0.0) throw config_error("config key 'hbar': must be positive");
    if (cfg.cutoff < 1) throw config_error("config key 'cutoff': must be >= 1");
    if (cfg.margin < 0) throw config_error("config key 'margin': must be >= 0");
    if (cfg.quad.radial_nodes < 1 || cfg.quad.angular_nodes < 1)
        throw config_error("config key 'quad.*_nodes': must be >= 1");
    if (cfg.quad.su11_radial_cutoff <= 0.0 || cfg.quad.su11_radial_cutoff >= 1.0)
        throw config_error("config key 'quad.su11_radial_cutoff': must lie in (0, 1)");
    if (cfg.lambda_nodes < 1) throw config_error("config key 'lambda_nodes': must be >= 1");
    if (cfg.roundtrip_samples < 1 || cfg.exclusion_samples < 0)
        throw config_error("config key '*_samples': out of range");
    for (const auto& [name, v] : cfg.tol)
        if (!(v > 0.0))
            throw config_error("config key 'tol." + name + "': tolerance must be positive");
    if (cfg.format != "json" && cfg.format != "csv")
        throw config_error("config key 'format': expected 'json' or 'csv'");
}

RunConfig build_config(const std::string& config_path,
                       const std::vector<std::pair<std::string, std::string>>& overrides) {
    std::vector<std::pair<std::string, std::string>> kv;
    if (!config_path.empty()) kv = read_config_kv(config_path);
    kv.insert(kv.end(), overrides.begin(), overrides.end());

    // the model decides the defaults, so resolve it first (last mention wins)
    Model model = Model::A_OscSum;
    for (const auto& [k, v] : kv)
        if (k == "model") model = model_from_name(v);

    RunConfig cfg = default_config(model);
    for (const auto& [k, v] : kv) apply_config_entry(cfg, k, v);
    validate_config(cfg);
    return cfg;
}

std::string config_hash(const RunConfig& cfg) {
    std::string s;
    s += "schema=1;model=" + std::string(model_name(cfg.model));
    s += ";r_sq=" + fmt(cfg.r_sq) + ";hbar=" + fmt(cfg.hbar);
    s += ";scheme=" + std::string(scheme_name(cfg.scheme));
    s += ";cutoff=" + std::to_string(cfg.cutoff) + ";margin=" + std::to_string(cfg.margin);
    s += ";quad=" + std::to_string(cfg.quad.radial_nodes) + "x" +
         std::to_string(cfg.quad.angular_nodes) + "@" + fmt(cfg.quad.su11_radial_cutoff);
    s += ";lambda_nodes=" + std::to_string(cfg.lambda_nodes);
    s += ";seed=" + std::to_string(cfg.seed);
    s += ";roundtrip=" + std::to_string(cfg.roundtrip_samples);
    s += ";exclusion=" + std::to_string(cfg.exclusion_samples);
    for (const auto& [name, v] : cfg.tol) s += ";tol." + name + "=" + fmt(v);
    s += ";sweep.radial=" + fmt_grid(cfg.sweep_radial);
    s += ";sweep.angle=" + fmt_grid(cfg.sweep_angle);
    s += ";sweep.r_sq=" + fmt_grid(cfg.sweep_r_sq);

    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ModelSpec to_model_spec(const RunConfig& cfg) {
    ModelSpec spec;
    spec.model = cfg.model;
    spec.r_sq = cfg.r_sq;
    spec.hbar = cfg.hbar;
    spec.space = make_space(cfg.scheme, cfg.cutoff);
    return spec;
}

} // namespace cohq

#include "cohq/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cohq/classical.hpp"
#include "cohq/coherent.hpp"
#include "cohq/rigging.hpp"

namespace cohq {

namespace {

double tol_of(const RunConfig& cfg, const std::string& name) {
    const auto it = cfg.tol.find(name);
    if (it == cfg.tol.end())
        throw config_error("missing tolerance 'tol." + name + "' in config");
    return it->second;
}

std::string fmt_short(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

void stamp_env(CheckReport& r, const RunConfig& cfg) {
    r.env("model", model_name(cfg.model));
    r.env("scheme", scheme_name(cfg.scheme));
    r.env("cutoff", std::to_string(cfg.cutoff));
    r.env("r_sq", fmt_short(cfg.r_sq));
    r.env("hbar", fmt_short(cfg.hbar));
}

const CheckRecord* find_record(const CheckReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

CheckReport suite_check_algebra(const RunConfig& cfg) {
    const ModelSpec spec = to_model_spec(cfg);
    const GeneratorTriple gen = build_generators(spec);
    const bool boundary = cfg.margin < min_margin(cfg.model, cfg.scheme);
    return check_algebra(spec, gen, cfg.margin, tol_of(cfg, "algebra"), boundary);
}

CheckReport suite_casimir(const RunConfig& cfg) {
    return casimir_constraint_identity(to_model_spec(cfg), cfg.margin,
                                       tol_of(cfg, "casimir"));
}

CheckReport suite_select_rep(const RunConfig& cfg) {
    const ModelSpec spec = to_model_spec(cfg);
    CheckReport out;
    out.suite = "select-rep";
    stamp_env(out, cfg);

    const RepIndex rep = rep_index_from_R(spec); // may raise no_physical_states
    const char* series = rep.series == RepSeries::SU2 ? "su2"
                         : rep.series == RepSeries::SU11_discrete ? "su11-discrete"
                                                                  : "su11-principal";
    out.env("series", series);
    out.add_info("rep-value", rep.value,
                 "irrep index fixed by the constraint scale (j, k, or lambda)");
    out.add_info("casimir-over-hbar-sq", rep_casimir_value(rep, spec.hbar) /
                                             (spec.hbar * spec.hbar));
    if (rep.alternate)
        out.add_flag("alternate-series-flagged", true,
                     "below the scale threshold a second discrete-series label is "
                     "admissible; flagged, not resolved");

    if (spec.model == Model::C_Inverted) {
        out.add_skip("kernel-spectrum",
                     "continuous constraint spectrum: the truncated operator has no exact "
                     "kernel to inspect");
        return out;
    }

    const std::vector<int> kernel = constraint_kernel_indices(spec);
    const IrrepEmbedding emb = embed_irrep(spec, rep);
    out.add_info("kernel-dim", double(kernel.size()));
    out.add("kernel-dim-matches-ladder", std::abs(double(kernel.size()) - double(emb.len())),
            0.0, "the kernel carries the selected ladder exactly once");

    // near the cutoff the truncated Casimir matrix elements are corrupted, so
    // restrict the comparison to kernel states inside the safe interior
    const int margin = std::max(cfg.margin, min_margin(cfg.model, cfg.scheme));
    const Mat interior = interior_projector(spec.space, margin).m;
    std::vector<int> core;
    for (int a : kernel)
        if (interior(a, a).real() > 0.5) core.push_back(a);
    out.add_info("kernel-dim-interior", double(core.size()));

    const Mat c2 = casimir(build_generators(spec)).m;
    const double expected = rep_casimir_value(rep, spec.hbar);
    double dev = 0.0;
    for (int a : core)
        for (int b : core)
            dev = std::max(dev, std::abs(c2(a, b) - (a == b ? expected : 0.0)));
    out.add("casimir-on-kernel", dev, tol_of(cfg, "casimir"),
            "Casimir on interior kernel states equals the closed-form irrep value");
    return out;
}

CheckReport suite_resolve_identity(const RunConfig& cfg) {
    const ModelSpec spec = to_model_spec(cfg);
    const RepIndex rep = rep_index_from_R(spec);
    const IrrepEmbedding emb = embed_irrep(spec, rep);
    return resolution_of_identity_check(rep, emb.len(), cfg.quad, tol_of(cfg, "resolve"));
}

std::vector<cplx> default_labels(Model model) {
    if (model == Model::A_OscSum) return {cplx(0.0, 0.0), cplx(0.5, 0.0), cplx(1.0, 1.0)};
    return {cplx(0.0, 0.0), std::polar(0.3, M_PI / 4.0), cplx(0.0, 0.45)};
}

CheckReport suite_kin_phys(const RunConfig& cfg) {
    return kin_phys_equality_report(to_model_spec(cfg), default_labels(cfg.model),
                                    tol_of(cfg, "kin-phys"), tol_of(cfg, "control-min"));
}

CheckReport suite_project_hw(const RunConfig& cfg) {
    CheckReport out = project_hw_report(to_model_spec(cfg), 1.0, 1.0, 0,
                                        tol_of(cfg, "project"));
    // independent lambda-quadrature oracle; clamp the space so the dense
    // matrix exponentials stay cheap
    RunConfig small = cfg;
    small.cutoff = std::min(cfg.cutoff, 6);
    out.env("oracle_cutoff", std::to_string(small.cutoff));
    out.merge(projector_consistency_report(to_model_spec(small), cfg.lambda_nodes,
                                           tol_of(cfg, "project")),
              "oracle");
    return out;
}

CheckReport suite_classical_maps(const RunConfig& cfg) {
    return classical_maps_report(to_model_spec(cfg), cfg.roundtrip_samples,
                                 cfg.exclusion_samples, cfg.seed);
}

int sweep_cutoff(const RunConfig& cfg, double r_sq) {
    if (cfg.model == Model::A_OscSum) {
        const int two_j = static_cast<int>(std::lround(r_sq / (2.0 * cfg.hbar) - 1.0));
        return std::max(cfg.cutoff, two_j);
    }
    const double k = 0.5 * (1.0 + r_sq / (2.0 * cfg.hbar));
    const int d = static_cast<int>(std::lround(2.0 * k - 1.0));
    double max_radial = 0.0;
    for (double x : cfg.sweep_radial) max_radial = std::max(max_radial, std::abs(x));
    const int levels = su11_min_cutoff(k, std::tanh(max_radial), 1e-12);
    return std::max(cfg.cutoff, levels + d);
}

CheckReport suite_semiclassical_sweep(const RunConfig& cfg) {
    if (cfg.model == Model::C_Inverted)
        throw unsupported_model(
            "no normalizable coherent family on the truncated space for the inverted mode");

    CheckReport out;
    out.suite = "semiclassical-sweep";
    stamp_env(out, cfg);

    Table tab;
    tab.name = "sweep";
    tab.columns = {"r_sq",        "radial",      "angle",
                   "quantum_z",   "classical_z", "z_deviation",
                   "z_deviation_over_hbar"};

    std::vector<double> rsqs = cfg.sweep_r_sq.empty() ? std::vector<double>{cfg.r_sq}
                                                      : cfg.sweep_r_sq;
    std::vector<double> ratios;
    for (double r2 : rsqs) {
        RunConfig cell_cfg = cfg;
        cell_cfg.r_sq = r2;
        cell_cfg.cutoff = sweep_cutoff(cfg, r2);
        const ModelSpec spec = to_model_spec(cell_cfg);
        const GeneratorTriple gen = build_generators(spec);

        double max_dev = 0.0, max_closed = 0.0, max_scale = 1.0;
        for (double rad : cfg.sweep_radial)
            for (double ang : cfg.sweep_angle) {
                ReducedCoords rc;
                rc.radial = rad;
                rc.angle = ang;
                const CheckReport cell = semiclassical_compare(spec, rc, gen);
                const double qz = find_record(cell, "quantum-z")->measured;
                const double cz = find_record(cell, "classical-z")->measured;
                const double dev = find_record(cell, "z-deviation")->measured;
                const double closed = find_record(cell, "z-deviation-closed-form")->measured;
                tab.rows.push_back({r2, rad, ang, qz, cz, dev, dev / cfg.hbar});
                max_dev = std::max(max_dev, dev);
                max_closed = std::max(max_closed, closed);
                if (cfg.model == Model::B_OscDiff)
                    max_scale = std::max(max_scale, std::cosh(2.0 * rad));
            }

        const std::string tag = "-rsq-" + fmt_short(r2);
        if (cfg.model == Model::A_OscSum)
            out.add("z-bound" + tag, max_dev, 0.5 * cfg.hbar + 1e-12,
                    "third-generator deviation bounded by hbar/2 across the grid");
        out.add("z-closed-form" + tag, max_closed,
                1e-9 * max_scale * std::max(1.0, cfg.hbar),
                "deviation matches its closed form across the grid");
        const double ratio = max_dev / (r2 / 4.0);
        ratios.push_back(ratio);
        out.add_info("deviation-over-scale" + tag, ratio, "shrinks as hbar over R^2");
    }

    if (ratios.size() > 1) {
        bool shrinking = true;
        for (size_t i = 1; i < ratios.size(); ++i)
            if (rsqs[i] > rsqs[i - 1] && ratios[i] > ratios[i - 1] + 1e-12)
                shrinking = false;
        out.add_flag("peaking-sharpens-with-scale", shrinking,
                     "deviation over classical scale decreases along the R^2 sweep");
    }
    out.tables.push_back(std::move(tab));
    return out;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "check-algebra",     "casimir-identity", "select-rep",
        "resolve-identity",  "kin-phys-equality", "project-hw",
        "classical-maps",    "semiclassical-sweep"};
    return names;
}

bool suite_applicable(const RunConfig& cfg, const std::string& suite, std::string* why) {
    if (cfg.model == Model::C_Inverted) {
        static const char* reason =
            "model C selects the principal continuous series: no normalizable ladder, "
            "no averaging projector on the truncated space";
        if (suite == "resolve-identity" || suite == "kin-phys-equality" ||
            suite == "project-hw" || suite == "semiclassical-sweep") {
            if (why) *why = reason;
            return false;
        }
    }
    return true;
}

CheckReport run_suite(const RunConfig& cfg, const std::string& suite) {
    validate_config(cfg);
    CheckReport out;
    if (suite == "check-algebra") out = suite_check_algebra(cfg);
    else if (suite == "casimir-identity") out = suite_casimir(cfg);
    else if (suite == "select-rep") out = suite_select_rep(cfg);
    else if (suite == "resolve-identity") out = suite_resolve_identity(cfg);
    else if (suite == "kin-phys-equality") out = suite_kin_phys(cfg);
    else if (suite == "project-hw") out = suite_project_hw(cfg);
    else if (suite == "classical-maps") out = suite_classical_maps(cfg);
    else if (suite == "semiclassical-sweep") out = suite_semiclassical_sweep(cfg);
    else if (suite == "full") {
        out.suite = "full";
        stamp_env(out, cfg);
        for (const std::string& name : suite_names()) {
            std::string why;
            if (!suite_applicable(cfg, name, &why)) {
                out.add_skip(name, why);
                continue;
            }
            out.merge(run_suite(cfg, name), name);
        }
    } else {
        throw config_error("unknown suite '" + suite + "'");
    }
    out.config_hash = config_hash(cfg);
    return out;
}

} // namespace cohq

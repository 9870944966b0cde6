#include "cohq/models.hpp"

#include <cmath>

namespace cohq {

std::string model_name(Model m) {
    switch (m) {
        case Model::A_OscSum: return "A";
        case Model::B_OscDiff: return "B";
        case Model::C_Inverted: return "C";
    }
    return "?";
}

Model model_from_name(const std::string& name) {
    if (name == "A" || name == "a") return Model::A_OscSum;
    if (name == "B" || name == "b") return Model::B_OscDiff;
    if (name == "C" || name == "c") return Model::C_Inverted;
    throw config_error("unknown model '" + name + "' (expected A, B or C)");
}

void ModelSpec::validate() const {
    if (r_sq <= 0.0) throw config_error("R^2 must be positive");
    if (hbar <= 0.0) throw config_error("hbar must be positive");
    if (!space) throw usage_error("ModelSpec has no Fock space attached");
}

// ----- operator assembly ------------------------------------------------------

namespace {

// add amp * |n1',n2'><n1,n2| when the target state is representable
void hop(Mat& m, const FockSpace& sp, int col, int n1t, int n2t, cplx amp) {
    const int row = sp.index_of(n1t, n2t);
    if (row >= 0) m(row, col) += amp;
}

} // namespace

LinOp build_constraint(const ModelSpec& spec) {
    spec.validate();
    const FockSpace& sp = *spec.space;
    const double hb = spec.hbar;
    const double x = spec.r_sq / (2.0 * hb);
    Mat phi = Mat::Zero(sp.dim(), sp.dim());
    for (int i = 0; i < sp.dim(); ++i) {
        auto [n1, n2] = sp.occupation(i);
        switch (spec.model) {
            case Model::A_OscSum: phi(i, i) = hb * (n1 + n2 + 1 - x); break;
            case Model::B_OscDiff: phi(i, i) = hb * (n1 - n2 - x); break;
            case Model::C_Inverted: {
                phi(i, i) = -spec.r_sq / 2.0;
                const double f = -hb / 2.0;
                hop(phi, sp, i, n1 + 2, n2, f * std::sqrt(double(n1 + 1) * (n1 + 2)));
                hop(phi, sp, i, n1 - 2, n2, f * std::sqrt(double(n1) * (n1 - 1)));
                hop(phi, sp, i, n1, n2 + 2, f * std::sqrt(double(n2 + 1) * (n2 + 2)));
                hop(phi, sp, i, n1, n2 - 2, f * std::sqrt(double(n2) * (n2 - 1)));
                break;
            }
        }
    }
    return {spec.space, std::move(phi)};
}

GeneratorTriple build_generators(const ModelSpec& spec) {
    spec.validate();
    const FockSpace& sp = *spec.space;
    const double hb = spec.hbar;
    const cplx i1(0.0, 1.0);
    Mat X = Mat::Zero(sp.dim(), sp.dim());
    Mat Y = X, Z = X;

    for (int c = 0; c < sp.dim(); ++c) {
        auto [n1, n2] = sp.occupation(c);
        switch (spec.model) {
            case Model::A_OscSum: {
                // X = (hb/2)(a1+ a2 + a2+ a1), Y = (i hb/2)(a2+ a1 - a1+ a2), Z = (hb/2)(N1 - N2)
                const double up = std::sqrt(double(n1 + 1) * n2);   // a1+ a2
                const double dn = std::sqrt(double(n1) * (n2 + 1)); // a2+ a1
                hop(X, sp, c, n1 + 1, n2 - 1, 0.5 * hb * up);
                hop(X, sp, c, n1 - 1, n2 + 1, 0.5 * hb * dn);
                hop(Y, sp, c, n1 - 1, n2 + 1, 0.5 * hb * i1 * dn);
                hop(Y, sp, c, n1 + 1, n2 - 1, -0.5 * hb * i1 * up);
                Z(c, c) = 0.5 * hb * (n1 - n2);
                break;
            }
            case Model::B_OscDiff: {
                // X = (i hb/2)(a1+ a2+ - a1 a2), Y = (hb/2)(a1+ a2+ + a1 a2), Z = (hb/2)(N1+N2+1)
                const double up = std::sqrt(double(n1 + 1) * (n2 + 1)); // a1+ a2+
                const double dn = std::sqrt(double(n1) * n2);           // a1 a2
                hop(X, sp, c, n1 + 1, n2 + 1, 0.5 * hb * i1 * up);
                hop(X, sp, c, n1 - 1, n2 - 1, -0.5 * hb * i1 * dn);
                hop(Y, sp, c, n1 + 1, n2 + 1, 0.5 * hb * up);
                hop(Y, sp, c, n1 - 1, n2 - 1, 0.5 * hb * dn);
                Z(c, c) = 0.5 * hb * (n1 + n2 + 1);
                break;
            }
            case Model::C_Inverted: {
                // X = (hb/4)(a1+^2 - a2+^2 + a1^2 - a2^2), Y = (hb/2)(a1+ a2+ + a1 a2),
                // Z = (i hb/2)(a2+ a1 - a1+ a2)
                hop(X, sp, c, n1 + 2, n2, 0.25 * hb * std::sqrt(double(n1 + 1) * (n1 + 2)));
                hop(X, sp, c, n1 - 2, n2, 0.25 * hb * std::sqrt(double(n1) * (n1 - 1)));
                hop(X, sp, c, n1, n2 + 2, -0.25 * hb * std::sqrt(double(n2 + 1) * (n2 + 2)));
                hop(X, sp, c, n1, n2 - 2, -0.25 * hb * std::sqrt(double(n2) * (n2 - 1)));
                hop(Y, sp, c, n1 + 1, n2 + 1, 0.5 * hb * std::sqrt(double(n1 + 1) * (n2 + 1)));
                hop(Y, sp, c, n1 - 1, n2 - 1, 0.5 * hb * std::sqrt(double(n1) * n2));
                hop(Z, sp, c, n1 - 1, n2 + 1, 0.5 * hb * i1 * std::sqrt(double(n1) * (n2 + 1)));
                hop(Z, sp, c, n1 + 1, n2 - 1, -0.5 * hb * i1 * std::sqrt(double(n1 + 1) * n2));
                break;
            }
        }
    }

    GeneratorTriple gen;
    gen.X = {spec.space, std::move(X)};
    gen.Y = {spec.space, std::move(Y)};
    gen.Z = {spec.space, std::move(Z)};
    gen.signature = spec.model == Model::A_OscSum ? AlgebraSignature::Compact
                                                  : AlgebraSignature::NonCompact;
    return gen;
}

LinOp casimir(const GeneratorTriple& gen) {
    if (gen.signature == AlgebraSignature::Compact) return gen.X * gen.X + gen.Y * gen.Y + gen.Z * gen.Z;
    return gen.Z * gen.Z - gen.X * gen.X - gen.Y * gen.Y;
}

LinOp casimir_from_constraint(const ModelSpec& spec, const LinOp& phi) {
    const LinOp s = phi + cplx(spec.r_sq / 2.0) * identity_op(phi.space);
    const LinOp s2 = cplx(0.25) * (s * s);
    const LinOp h2 = cplx(spec.hbar * spec.hbar / 4.0) * identity_op(phi.space);
    if (spec.model == Model::C_Inverted) return cplx(-1.0) * (s2 + h2);
    return s2 - h2;
}

double rep_casimir_value(const RepIndex& rep, double hbar) {
    const double h2 = hbar * hbar;
    switch (rep.series) {
        case RepSeries::SU2: return h2 * rep.value * (rep.value + 1.0);
        case RepSeries::SU11_discrete: return h2 * rep.value * (rep.value - 1.0);
        case RepSeries::SU11_principal: return -h2 * (rep.value * rep.value + 0.25);
    }
    return 0.0;
}

int min_margin(Model model, CutoffScheme scheme) {
    // the margin at which products of two generators cannot reach the cutoff
    switch (model) {
        case Model::A_OscSum:
            // conserves total quanta: exact globally under TotalQuanta
            return scheme == CutoffScheme::TotalQuanta ? 0 : 2;
        case Model::B_OscDiff: return 2;  // each generator shifts each mode by <= 1
        case Model::C_Inverted: return 4; // each generator shifts a mode by <= 2
    }
    return 4;
}

CheckReport check_algebra(const ModelSpec& spec, const GeneratorTriple& gen, int margin,
                          double tol, bool boundary_expected) {
    spec.validate();
    const int need = min_margin(spec.model, spec.space->scheme());
    if (margin < need && !boundary_expected)
        throw usage_error("margin " + std::to_string(margin) + " is below the safe minimum " +
                          std::to_string(need) + " for model " + model_name(spec.model) +
                          " under scheme " + scheme_name(spec.space->scheme()));

    const cplx ih(0.0, spec.hbar);
    const double s1 = gen.signature == AlgebraSignature::Compact ? 1.0 : -1.0;
    const LinOp pi = interior_projector(spec.space, margin);

    const Mat d_xy = (commutator(gen.X, gen.Y) - (s1 * ih) * gen.Z).m * pi.m;
    const Mat d_yz = (commutator(gen.Y, gen.Z) - ih * gen.X).m * pi.m;
    const Mat d_zx = (commutator(gen.Z, gen.X) - ih * gen.Y).m * pi.m;

    CheckReport rep;
    rep.suite = "check-algebra";
    rep.env("model", model_name(spec.model));
    rep.env("scheme", scheme_name(spec.space->scheme()));
    rep.env("cutoff", std::to_string(spec.space->cutoff()));
    rep.env("dim", std::to_string(spec.space->dim()));
    rep.env("margin", std::to_string(margin));

    const char* note = boundary_expected ? "boundary-expected deviations at cutoff rows" : "";
    if (boundary_expected) {
        rep.add_info("commutator-xy", max_abs(d_xy), note);
        rep.add_info("commutator-yz", max_abs(d_yz), note);
        rep.add_info("commutator-zx", max_abs(d_zx), note);
    } else {
        rep.add("commutator-xy", max_abs(d_xy), tol);
        rep.add("commutator-yz", max_abs(d_yz), tol);
        rep.add("commutator-zx", max_abs(d_zx), tol);
    }
    return rep;
}

CheckReport casimir_constraint_identity(const ModelSpec& spec, int margin, double tol) {
    spec.validate();
    const GeneratorTriple gen = build_generators(spec);
    const LinOp phi = build_constraint(spec);
    const LinOp pi = interior_projector(spec.space, margin);
    const Mat delta = (casimir(gen) - casimir_from_constraint(spec, phi)).m * pi.m;

    CheckReport rep;
    rep.suite = "casimir-identity";
    rep.env("model", model_name(spec.model));
    rep.env("scheme", scheme_name(spec.space->scheme()));
    rep.env("cutoff", std::to_string(spec.space->cutoff()));
    rep.env("margin", std::to_string(margin));
    rep.env("r_sq", std::to_string(spec.r_sq));
    rep.add("casimir-vs-constraint", max_abs(delta), tol);
    return rep;
}

RepIndex rep_index_from_R(const ModelSpec& spec) {
    spec.validate();
    const double x = spec.r_sq / (2.0 * spec.hbar);
    switch (spec.model) {
        case Model::A_OscSum: {
            const double two_j = x - 1.0;
            const double rounded = std::round(two_j);
            if (rounded < -0.5 || std::abs(two_j - rounded) > 1e-9 * std::max(1.0, std::abs(two_j)))
                throw no_physical_states(
                    "the constraint kernel is empty: R^2/(2 hbar) = " + std::to_string(x) +
                    " must be a positive integer so that j = (R^2/(2 hbar) - 1)/2 is a "
                    "non-negative half-integer");
            return {RepSeries::SU2, rounded / 2.0, false};
        }
        case Model::B_OscDiff:
            // R^2 < 2 hbar admits a second discrete-series label; flagged, not resolved
            return {RepSeries::SU11_discrete, (1.0 + x) / 2.0, spec.r_sq < 2.0 * spec.hbar};
        case Model::C_Inverted: return {RepSeries::SU11_principal, spec.r_sq / (4.0 * spec.hbar), false};
    }
    throw usage_error("unreachable model");
}

std::vector<int> constraint_kernel_indices(const ModelSpec& spec) {
    if (spec.model == Model::C_Inverted)
        throw unsupported_model(
            "model C has continuous constraint spectrum; no discrete kernel to enumerate");
    const LinOp phi = build_constraint(spec);
    const double scale = std::max(1.0, max_abs(phi));
    std::vector<int> kernel;
    for (int i = 0; i < spec.space->dim(); ++i)
        if (std::abs(phi.m(i, i)) <= 1e-9 * scale) kernel.push_back(i);
    return kernel;
}

} // namespace cohq

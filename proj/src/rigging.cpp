#include "cohq/rigging.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace cohq {

namespace {

bool is_diagonal(const Mat& m) {
    for (int c = 0; c < m.cols(); ++c)
        for (int r = 0; r < m.rows(); ++r)
            if (r != c && m(r, c) != cplx(0.0)) return false;
    return true;
}

std::string idx2(int i, int j) { return std::to_string(i) + "-" + std::to_string(j); }

} // namespace

PhysicalProjector group_average_projector(const ModelSpec& spec) {
    spec.validate();
    if (spec.model == Model::C_Inverted)
        throw unsupported_model(
            "the inverted-mode constraint has continuous spectrum; its group average has no "
            "matrix realization on the truncated space");

    const LinOp phi = build_constraint(spec);
    PhysicalProjector p;
    p.space = spec.space;
    p.m = Mat::Zero(phi.m.rows(), phi.m.cols());

    if (is_diagonal(phi.m)) {
        for (int i : constraint_kernel_indices(spec)) {
            p.m(i, i) = 1.0;
            ++p.kernel_dim;
        }
        return p;
    }

    // generic self-adjoint fallback: spectral projector onto the null space
    if (max_abs(Mat(phi.m - phi.m.adjoint())) > 1e-12 * std::max(1.0, max_abs(phi.m)))
        throw usage_error("constraint operator is not self-adjoint on this space");
    Eigen::SelfAdjointEigenSolver<Mat> es(phi.m);
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        if (std::abs(es.eigenvalues()(i)) <= 1e-9 * scale) {
            const Vec v = es.eigenvectors().col(i);
            p.m.noalias() += v * v.adjoint();
            ++p.kernel_dim;
        }
    }
    return p;
}

Mat lambda_average_projector(const ModelSpec& spec, int nodes) {
    spec.validate();
    if (spec.model == Model::C_Inverted)
        throw unsupported_model(
            "the inverted-mode constraint generates a non-periodic flow; a uniform "
            "one-period average does not exist");
    if (nodes < 1) throw usage_error("lambda average needs at least one node");

    const LinOp phi = build_constraint(spec);
    const Mat gen = phi.m / spec.hbar;
    Mat q = Mat::Zero(gen.rows(), gen.cols());
    for (int l = 0; l < nodes; ++l) {
        const double lambda = 2.0 * M_PI * l / nodes;
        q += Mat(cplx(0.0, -lambda) * gen).exp();
    }
    return q / double(nodes);
}

cplx physical_inner(const PhysicalProjector& p, const Ket& a, const Ket& b) {
    require_same_space(p.space, a.space, "physical inner product");
    require_same_space(p.space, b.space, "physical inner product");
    return a.v.dot(p.m * b.v);
}

namespace {

Ket project(const PhysicalProjector& p, const Ket& psi) {
    require_same_space(p.space, psi.space, "physical projection");
    Ket out = psi;
    out.v = p.m * psi.v;
    if (out.v.squaredNorm() < 1e-100)
        throw usage_error("state has zero physical norm; no physical expectation exists");
    return out;
}

} // namespace

cplx physical_expectation(const PhysicalProjector& p, const LinOp& a, const Ket& psi) {
    return expectation(a, project(p, psi));
}

double physical_fluctuation(const PhysicalProjector& p, const LinOp& a, const Ket& psi) {
    return variance(a, project(p, psi));
}

Ket average_hw_state(const ModelSpec& spec, cplx z1, cplx z2, int nodes, double tail_eps) {
    spec.validate();
    if (spec.model == Model::C_Inverted)
        throw unsupported_model("no periodic gauge orbit to average over for the inverted mode");

    const double x = spec.r_sq / (2.0 * spec.hbar);
    const int k = nodes > 0 ? nodes
                            : spec.space->cutoff() + static_cast<int>(std::ceil(x)) + 3;
    Ket out = zero_ket(spec.space);
    for (int l = 0; l < k; ++l) {
        const double lam = 2.0 * M_PI * l / k;
        const cplx rot = std::polar(1.0, -lam);
        cplx phase;
        cplx w1, w2;
        if (spec.model == Model::A_OscSum) {
            phase = std::polar(1.0, lam * (x - 1.0));
            w1 = z1 * rot;
            w2 = z2 * rot;
        } else {
            phase = std::polar(1.0, lam * x);
            w1 = z1 * rot;
            w2 = z2 * std::conj(rot);
        }
        out.v += (phase / double(k)) * hw_state(spec.space, w1, w2, tail_eps).v;
    }
    return out;
}

CheckReport kin_phys_equality_report(const ModelSpec& spec, const std::vector<cplx>& labels,
                                     double tol, double control_min) {
    spec.validate();
    CheckReport out;
    out.suite = "kin-phys-equality";
    out.env("model", model_name(spec.model));
    out.env("scheme", scheme_name(spec.space->scheme()));
    out.env("cutoff", std::to_string(spec.space->cutoff()));
    out.env("r_sq", std::to_string(spec.r_sq));
    out.env("labels", std::to_string(labels.size()));

    const IrrepEmbedding emb = embed_irrep(spec);
    const PhysicalProjector p = group_average_projector(spec);
    const GeneratorTriple gen = build_generators(spec);

    // the averaging projector must act as the identity on the selected ladder
    double fix_dev = 0.0;
    for (int i = 0; i < emb.len(); ++i) {
        Vec e = Vec::Zero(spec.space->dim());
        e(emb.fock_index[i]) = 1.0;
        fix_dev = std::max(fix_dev, (p.m * e - e).cwiseAbs().maxCoeff());
    }
    out.add("projector-fixes-ladder", fix_dev, 1e-12);

    std::vector<Ket> states;
    for (cplx z : labels)
        states.push_back(emb.rep.series == RepSeries::SU2 ? su2_state(emb, z)
                                                          : su11_state(emb, z));

    for (size_t i = 0; i < states.size(); ++i)
        for (size_t j = i; j < states.size(); ++j) {
            const cplx kin = inner(states[i], states[j]);
            const cplx phys = physical_inner(p, states[i], states[j]);
            out.add("inner-" + idx2(int(i), int(j)), std::abs(kin - phys), tol);
        }

    const LinOp* gens[3] = {&gen.X, &gen.Y, &gen.Z};
    const char* gname[3] = {"x", "y", "z"};
    for (size_t i = 0; i < states.size(); ++i)
        for (int g = 0; g < 3; ++g) {
            const cplx kin = expectation(*gens[g], states[i]);
            const cplx phys = physical_expectation(p, *gens[g], states[i]);
            out.add(std::string("expect-") + gname[g] + "-" + std::to_string(i),
                    std::abs(kin - phys), tol);
            const double vkin = variance(*gens[g], states[i]);
            const double vphys = physical_fluctuation(p, *gens[g], states[i]);
            out.add(std::string("fluct-") + gname[g] + "-" + std::to_string(i),
                    std::abs(vkin - vphys), tol);
        }

    // a generic product state must NOT show this agreement: its physical norm
    // drops by the weight carried outside the constraint surface
    const Ket hw = hw_state(spec.space, 1.0, 1.0, 1e-6);
    const double gap = std::abs(inner(hw, hw) - physical_inner(p, hw, hw));
    out.add_info("product-control-gap", gap,
                 "kinematical minus physical norm of an unaveraged product state");
    out.add_flag("product-control-separated", gap > control_min,
                 "gap must exceed " + std::to_string(control_min));
    return out;
}

CheckReport projector_consistency_report(const ModelSpec& spec, int nodes, double tol) {
    spec.validate();
    CheckReport out;
    out.suite = "project-consistency";
    out.env("model", model_name(spec.model));
    out.env("scheme", scheme_name(spec.space->scheme()));
    out.env("cutoff", std::to_string(spec.space->cutoff()));
    out.env("r_sq", std::to_string(spec.r_sq));
    out.env("nodes", std::to_string(nodes));

    const PhysicalProjector p = group_average_projector(spec);
    out.env("kernel_dim", std::to_string(p.kernel_dim));
    const Mat q = lambda_average_projector(spec, nodes);

    out.add("group-vs-quadrature", max_abs(Mat(p.m - q)), tol);
    out.add("idempotent", max_abs(Mat(p.m * p.m - p.m)), tol);
    out.add("self-adjoint", max_abs(Mat(p.m - p.m.adjoint())), tol);

    const GeneratorTriple gen = build_generators(spec);
    out.add("commutes-x", max_abs(Mat(p.m * gen.X.m - gen.X.m * p.m)), tol);
    out.add("commutes-y", max_abs(Mat(p.m * gen.Y.m - gen.Y.m * p.m)), tol);
    out.add("commutes-z", max_abs(Mat(p.m * gen.Z.m - gen.Z.m * p.m)), tol);
    return out;
}

CheckReport project_hw_report(const ModelSpec& spec, cplx z1, cplx z2, int nodes, double tol) {
    spec.validate();
    CheckReport out;
    out.suite = "project-hw";
    out.env("model", model_name(spec.model));
    out.env("scheme", scheme_name(spec.space->scheme()));
    out.env("cutoff", std::to_string(spec.space->cutoff()));
    out.env("r_sq", std::to_string(spec.r_sq));

    const PhysicalProjector p = group_average_projector(spec);
    const Ket hw = hw_state(spec.space, z1, z2);
    const Ket avg = average_hw_state(spec, z1, z2, nodes);

    out.add("orbit-average-matches-projection", (avg.v - p.m * hw.v).cwiseAbs().maxCoeff(),
            tol);
    out.add_info("physical-norm-sq", std::real(physical_inner(p, hw, hw)),
                 "squared physical norm of the product state");

    const GeneratorTriple gen = build_generators(spec);
    out.add_info("expect-z-kinematical", std::real(expectation(gen.Z, hw)),
                 "third generator in the raw product state");
    if (p.kernel_dim > 0)
        out.add_info("expect-z-physical", std::real(physical_expectation(p, gen.Z, hw)),
                     "third generator after averaging; ladder-weighted, not equal to the "
                     "kinematical value in general");
    return out;
}

CheckReport overlap_double_quadrature_check(const RepIndex& rep, int ladder_len,
                                            const QuadratureSpec& quad, cplx za, cplx zb,
                                            double tol) {
    CheckReport out;
    out.suite = "overlap-double-quadrature";
    out.env("series", rep.series == RepSeries::SU2 ? "su2" : "su11");
    out.env("value", std::to_string(rep.value));
    out.env("ladder_len", std::to_string(ladder_len));
    out.env("radial_nodes", std::to_string(quad.radial_nodes));

    Vec ca, cb;
    if (rep.series == RepSeries::SU2) {
        ca = su2_amplitudes(rep.value, za);
        cb = su2_amplitudes(rep.value, zb);
        if (ca.size() != ladder_len) throw usage_error("SU2 ladder length must be 2j+1");
    } else if (rep.series == RepSeries::SU11_discrete) {
        ca = su11_amplitudes(rep.value, za, ladder_len);
        cb = su11_amplitudes(rep.value, zb, ladder_len);
    } else {
        throw unsupported_model("no coherent overlap quadrature for the principal series");
    }

    const Mat m = resolution_matrix(rep, ladder_len, quad);
    const cplx rhs = ca.adjoint() * cb;
    const cplx single = ca.adjoint() * (m * cb);
    const cplx twice = ca.adjoint() * (m * (m * cb));
    out.add_info("single-insertion", std::abs(single - rhs),
                 "one quadrature insertion against the plain overlap");
    out.add("double-insertion", std::abs(twice - rhs), tol);
    return out;
}

} // namespace cohq

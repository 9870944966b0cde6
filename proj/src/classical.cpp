#include "cohq/classical.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "cohq/coherent.hpp"

namespace cohq {

namespace {

constexpr double two_pi = 2.0 * M_PI;

double wrap_2pi(double a) {
    double r = std::fmod(a, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

double angle_dist(double a, double b) {
    const double d = wrap_2pi(a - b);
    return std::min(d, two_pi - d);
}

// deterministic uniform numbers independent of the standard library's
// distribution implementation
class Sampler {
  public:
    explicit Sampler(unsigned seed) : gen_(seed) {}
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * ((gen_() >> 11) * 0x1.0p-53);
    }

  private:
    std::mt19937_64 gen_;
};

void require_branch(int branch) {
    if (branch < 1 || branch > 3)
        throw usage_error("model C needs an explicit case branch 1, 2, or 3");
}

std::string fmt_cplx(cplx z) {
    return std::to_string(z.real()) + (z.imag() < 0 ? "-" : "+") +
           std::to_string(std::abs(z.imag())) + "i";
}

} // namespace

PhasePoint surface_point(const ModelSpec& spec, const SurfaceChart& chart) {
    spec.validate();
    const double r = std::sqrt(spec.r_sq);
    switch (spec.model) {
        case Model::A_OscSum: {
            const double c = std::cos(chart.radial), s = std::sin(chart.radial);
            return {r * c * std::cos(chart.a1), r * c * std::sin(chart.a1),
                    r * s * std::cos(chart.a2), r * s * std::sin(chart.a2)};
        }
        case Model::B_OscDiff: {
            const double c = std::cosh(chart.radial), s = std::sinh(chart.radial);
            return {r * c * std::cos(chart.a1), r * c * std::sin(chart.a1),
                    r * s * std::cos(chart.a2), r * s * std::sin(chart.a2)};
        }
        case Model::C_Inverted: {
            require_branch(chart.branch);
            const double xi = chart.radial;
            if (chart.branch == 1) {
                const double c = std::cosh(xi), s = std::sinh(xi);
                return {r * c * std::sinh(chart.a1), r * c * std::cosh(chart.a1),
                        r * s * std::cosh(chart.a2), r * s * std::sinh(chart.a2)};
            }
            if (chart.branch == 2) {
                const double c = std::cosh(xi), s = std::sinh(xi);
                return {r * s * std::cosh(chart.a1), r * s * std::sinh(chart.a1),
                        r * c * std::sinh(chart.a2), r * c * std::cosh(chart.a2)};
            }
            if (xi == 0.0)
                throw std::domain_error(
                    "case-3 chart degenerates at xi = 0: the second mode collapses to the "
                    "origin and leaves the branch");
            const double sech = 1.0 / std::cosh(xi), th = std::tanh(xi);
            return {r * sech * std::sinh(chart.a1), r * sech * std::cosh(chart.a1),
                    r * th * std::sinh(chart.a2), r * th * std::cosh(chart.a2)};
        }
    }
    throw usage_error("unreachable model");
}

double constraint_residual(const ModelSpec& spec, const PhasePoint& pt) {
    const double s1 = pt.q1 * pt.q1 + pt.p1 * pt.p1;
    const double s2 = pt.q2 * pt.q2 + pt.p2 * pt.p2;
    switch (spec.model) {
        case Model::A_OscSum: return 0.5 * (s1 + s2 - spec.r_sq);
        case Model::B_OscDiff: return 0.5 * (s1 - s2 - spec.r_sq);
        case Model::C_Inverted:
            return 0.5 * (-pt.q1 * pt.q1 + pt.p1 * pt.p1 - pt.q2 * pt.q2 + pt.p2 * pt.p2 -
                          spec.r_sq);
    }
    throw usage_error("unreachable model");
}

std::array<double, 3> classical_observables(const ModelSpec& spec, const PhasePoint& pt) {
    switch (spec.model) {
        case Model::A_OscSum:
            return {0.5 * (pt.q1 * pt.q2 + pt.p1 * pt.p2),
                    0.5 * (pt.q1 * pt.p2 - pt.q2 * pt.p1),
                    0.25 * (pt.q1 * pt.q1 + pt.p1 * pt.p1 - pt.q2 * pt.q2 - pt.p2 * pt.p2)};
        case Model::B_OscDiff:
            return {0.5 * (pt.q1 * pt.p2 + pt.q2 * pt.p1),
                    0.5 * (pt.q1 * pt.q2 - pt.p1 * pt.p2),
                    0.25 * (pt.q1 * pt.q1 + pt.p1 * pt.p1 + pt.q2 * pt.q2 + pt.p2 * pt.p2)};
        case Model::C_Inverted:
            return {0.25 * (pt.q1 * pt.q1 - pt.p1 * pt.p1 - pt.q2 * pt.q2 + pt.p2 * pt.p2),
                    0.5 * (pt.q1 * pt.q2 - pt.p1 * pt.p2),
                    0.5 * (pt.q1 * pt.p2 - pt.q2 * pt.p1)};
    }
    throw usage_error("unreachable model");
}

double classical_casimir(const ModelSpec& spec, const PhasePoint& pt) {
    const auto [x, y, z] = classical_observables(spec, pt);
    if (spec.model == Model::A_OscSum) return x * x + y * y + z * z;
    return z * z - x * x - y * y;
}

PhasePoint gauge_flow(const ModelSpec& spec, const PhasePoint& pt, double lambda) {
    if (spec.model == Model::C_Inverted) {
        const double c = std::cosh(lambda), s = std::sinh(lambda);
        return {pt.q1 * c + pt.p1 * s, pt.p1 * c + pt.q1 * s, pt.q2 * c + pt.p2 * s,
                pt.p2 * c + pt.q2 * s};
    }
    const double c = std::cos(lambda), s = std::sin(lambda);
    PhasePoint out;
    out.q1 = pt.q1 * c + pt.p1 * s;
    out.p1 = pt.p1 * c - pt.q1 * s;
    if (spec.model == Model::A_OscSum) {
        out.q2 = pt.q2 * c + pt.p2 * s;
        out.p2 = pt.p2 * c - pt.q2 * s;
    } else {
        out.q2 = pt.q2 * c - pt.p2 * s;
        out.p2 = pt.p2 * c + pt.q2 * s;
    }
    return out;
}

SurfaceChart gauge_fixed_chart(const ModelSpec& spec, const ReducedCoords& rc) {
    switch (spec.model) {
        case Model::A_OscSum: return {0, rc.radial, rc.angle, -rc.angle};
        case Model::B_OscDiff: return {0, rc.radial, rc.angle, rc.angle};
        case Model::C_Inverted: return {rc.branch, rc.radial, rc.angle, -rc.angle};
    }
    throw usage_error("unreachable model");
}

cplx reduced_to_coset(const ModelSpec& spec, const ReducedCoords& rc) {
    switch (spec.model) {
        case Model::A_OscSum:
            return -std::tan(rc.radial) * std::polar(1.0, rc.angle);
        case Model::B_OscDiff:
            return std::tanh(rc.radial) * std::polar(1.0, rc.angle);
        case Model::C_Inverted: {
            require_branch(rc.branch);
            const double xi = rc.radial, eta = rc.angle;
            double mu, g;
            if (rc.branch == 3) {
                mu = std::abs(eta);
                g = 2.0 * std::atan(std::sinh(xi)) + (eta >= 0.0 ? 0.5 : -0.5) * M_PI;
            } else {
                double sg = std::sinh(2.0 * eta);
                double cg = std::sinh(2.0 * xi) * std::cosh(2.0 * eta);
                if (rc.branch == 2) {
                    sg = -sg;
                    cg = -cg;
                }
                const double h = std::hypot(sg, cg);
                mu = 0.5 * std::asinh(h);
                g = h == 0.0 ? 0.0 : std::atan2(sg, cg);
            }
            return std::tanh(mu) * std::polar(1.0, g);
        }
    }
    throw usage_error("unreachable model");
}

ReducedCoords coset_to_reduced(const ModelSpec& spec, cplx label, int branch) {
    const double r = std::abs(label);
    if (!std::isfinite(r))
        throw std::domain_error("the label chart does not cover the infinite point");

    ReducedCoords rc;
    switch (spec.model) {
        case Model::A_OscSum:
            rc.radial = std::atan(r);
            rc.angle = r == 0.0 ? 0.0 : wrap_2pi(std::arg(-label));
            return rc;
        case Model::B_OscDiff:
            if (r >= 1.0)
                throw std::domain_error("non-compact labels live inside the unit disk");
            rc.radial = std::atanh(r);
            rc.angle = r == 0.0 ? 0.0 : wrap_2pi(std::arg(label));
            return rc;
        case Model::C_Inverted: {
            require_branch(branch);
            rc.branch = branch;
            if (r >= 1.0)
                throw std::domain_error("non-compact labels live inside the unit disk");
            const double mu = std::atanh(r);
            const double g = std::arg(label);
            if (branch == 3) {
                // half-chart preimage with eta >= 0; the full chart covers the disk twice
                rc.angle = mu;
                if (mu == 0.0) return rc;
                double beta = std::remainder(g - 0.5 * M_PI, two_pi);
                if (std::abs(std::abs(beta) - M_PI) < 1e-12)
                    throw std::domain_error("label angle sits on the case-3 chart seam");
                rc.radial = std::asinh(std::tan(0.5 * beta));
                return rc;
            }
            double sg = std::sinh(2.0 * mu) * std::sin(g);
            double cg = std::sinh(2.0 * mu) * std::cos(g);
            if (branch == 2) {
                sg = -sg;
                cg = -cg;
            }
            rc.angle = 0.5 * std::asinh(sg);
            rc.radial = 0.5 * std::asinh(cg / std::cosh(2.0 * rc.angle));
            return rc;
        }
    }
    throw usage_error("unreachable model");
}

CheckReport semiclassical_compare(const ModelSpec& spec, const ReducedCoords& rc,
                                  const GeneratorTriple& gen) {
    spec.validate();
    if (spec.model == Model::C_Inverted)
        throw unsupported_model(
            "no normalizable coherent family to compare for the inverted mode");

    CheckReport out;
    out.suite = "semiclassical";
    out.env("model", model_name(spec.model));
    out.env("scheme", scheme_name(spec.space->scheme()));
    out.env("cutoff", std::to_string(spec.space->cutoff()));
    out.env("r_sq", std::to_string(spec.r_sq));
    out.env("hbar", std::to_string(spec.hbar));
    out.env("radial", std::to_string(rc.radial));
    out.env("angle", std::to_string(rc.angle));

    const cplx zeta = reduced_to_coset(spec, rc);
    out.env("zeta", fmt_cplx(zeta));

    const IrrepEmbedding emb = embed_irrep(spec);
    const Ket psi = spec.model == Model::A_OscSum ? su2_state(emb, zeta)
                                                  : su11_state(emb, zeta);
    const double qx = std::real(expectation(gen.X, psi));
    const double qy = std::real(expectation(gen.Y, psi));
    const double qz = std::real(expectation(gen.Z, psi));

    const PhasePoint pt = surface_point(spec, gauge_fixed_chart(spec, rc));
    const auto [cx, cy, cz] = classical_observables(spec, pt);

    // single global orientation between the label chart and the surface chart,
    // fixed once per model at a reference point and held
    const double sigma = spec.model == Model::A_OscSum ? -1.0 : 1.0;

    out.add_info("quantum-x", sigma * qx, "");
    out.add_info("quantum-y", sigma * qy, "");
    out.add_info("quantum-z", sigma * qz, "");
    out.add_info("classical-x", cx, "");
    out.add_info("classical-y", cy, "");
    out.add_info("classical-z", cz, "");

    const double dev_z = std::abs(sigma * qz - cz);
    if (spec.model == Model::A_OscSum) {
        out.add("z-deviation", dev_z, 0.5 * spec.hbar + 1e-12);
        out.add("z-deviation-closed-form",
                std::abs(dev_z - 0.5 * spec.hbar * std::abs(std::cos(2.0 * rc.radial))),
                1e-10 * std::max(1.0, spec.hbar));
    } else {
        const double ch = std::cosh(2.0 * rc.radial);
        out.add("z-deviation-closed-form", std::abs(dev_z - 0.5 * spec.hbar * ch),
                1e-9 * std::max(1.0, ch) * std::max(1.0, spec.hbar));
    }
    out.add_info("z-deviation", dev_z, "");
    out.add_info("z-deviation-over-scale", dev_z / (spec.r_sq / 4.0),
                 "shrinks as hbar over R^2");
    out.add_info("x-deviation", std::abs(sigma * qx - cx),
                 "label-angle vs surface-angle phase conventions differ; reported only");
    out.add_info("y-deviation", std::abs(sigma * qy - cy),
                 "label-angle vs surface-angle phase conventions differ; reported only");
    return out;
}

namespace {

SurfaceChart random_chart(const ModelSpec& spec, int branch, Sampler& s) {
    SurfaceChart c;
    c.branch = branch;
    switch (spec.model) {
        case Model::A_OscSum:
            c.radial = s.uniform(0.0, 0.5 * M_PI);
            c.a1 = s.uniform(0.0, two_pi);
            c.a2 = s.uniform(0.0, two_pi);
            return c;
        case Model::B_OscDiff:
            c.radial = s.uniform(0.0, 1.5);
            c.a1 = s.uniform(0.0, two_pi);
            c.a2 = s.uniform(0.0, two_pi);
            return c;
        case Model::C_Inverted:
            c.radial = branch == 3 ? (s.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0) *
                                         s.uniform(0.05, 1.5)
                                   : s.uniform(-1.5, 1.5);
            c.a1 = s.uniform(-1.5, 1.5);
            c.a2 = s.uniform(-1.5, 1.5);
            return c;
    }
    throw usage_error("unreachable model");
}

ReducedCoords random_reduced(const ModelSpec& spec, int branch, Sampler& s) {
    ReducedCoords rc;
    rc.branch = branch;
    switch (spec.model) {
        case Model::A_OscSum:
            rc.radial = s.uniform(0.0, 1.55); // stays clear of the chart's far pole
            rc.angle = s.uniform(0.0, two_pi);
            return rc;
        case Model::B_OscDiff:
            rc.radial = s.uniform(0.0, 1.5);
            rc.angle = s.uniform(0.0, two_pi);
            return rc;
        case Model::C_Inverted:
            if (branch == 3) {
                rc.radial = (s.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * s.uniform(0.02, 1.5);
                rc.angle = s.uniform(0.02, 1.5); // half-chart: eta > 0
            } else {
                rc.radial = s.uniform(-1.5, 1.5);
                rc.angle = s.uniform(-1.5, 1.5);
            }
            return rc;
    }
    throw usage_error("unreachable model");
}

double max_coord_diff(const PhasePoint& a, const PhasePoint& b) {
    return std::max(std::max(std::abs(a.q1 - b.q1), std::abs(a.p1 - b.p1)),
                    std::max(std::abs(a.q2 - b.q2), std::abs(a.p2 - b.p2)));
}

} // namespace

CheckReport classical_maps_report(const ModelSpec& spec, int roundtrip_samples,
                                  int exclusion_samples, unsigned seed) {
    spec.validate();
    CheckReport out;
    out.suite = "classical-maps";
    out.env("model", model_name(spec.model));
    out.env("r_sq", std::to_string(spec.r_sq));
    out.env("seed", std::to_string(seed));
    Sampler s(seed);

    const std::vector<int> branches =
        spec.model == Model::C_Inverted ? std::vector<int>{1, 2, 3} : std::vector<int>{0};

    const double cas_sign = spec.model == Model::C_Inverted ? -1.0 : 1.0;
    const double cas_scale = (spec.r_sq / 4.0) * (spec.r_sq / 4.0);

    for (int br : branches) {
        const std::string tag = br == 0 ? "" : "-branch-" + std::to_string(br);

        double worst_res = 0.0, worst_cas = 0.0;
        for (int i = 0; i < 200; ++i) {
            const PhasePoint pt = surface_point(spec, random_chart(spec, br, s));
            worst_res = std::max(worst_res, std::abs(constraint_residual(spec, pt)));
            worst_cas = std::max(worst_cas,
                                 std::abs(classical_casimir(spec, pt) / cas_scale - cas_sign));
        }
        out.add("surface-residual" + tag, worst_res, 1e-12 * spec.r_sq);
        out.add("casimir-constant" + tag, worst_cas, 1e-10);

        double worst_group = 0.0, worst_inv = 0.0, worst_gen = 0.0;
        for (int i = 0; i < 100; ++i) {
            const PhasePoint pt = surface_point(spec, random_chart(spec, br, s));
            const double a = s.uniform(-1.0, 1.0), b = s.uniform(-1.0, 1.0);
            worst_group = std::max(
                worst_group, max_coord_diff(gauge_flow(spec, gauge_flow(spec, pt, a), b),
                                            gauge_flow(spec, pt, a + b)));
            const PhasePoint moved = gauge_flow(spec, pt, a);
            const auto o1 = classical_observables(spec, pt);
            const auto o2 = classical_observables(spec, moved);
            for (int c = 0; c < 3; ++c)
                worst_inv = std::max(worst_inv, std::abs(o1[c] - o2[c]));
            worst_gen = std::max(worst_gen, std::abs(constraint_residual(spec, moved) -
                                                     constraint_residual(spec, pt)));
        }
        out.add("flow-group-law" + tag, worst_group, 1e-12 * std::max(1.0, spec.r_sq));
        out.add("flow-invariance" + tag, worst_inv, 1e-10 * std::max(1.0, spec.r_sq));
        out.add("flow-preserves-constraint" + tag, worst_gen,
                1e-10 * std::max(1.0, spec.r_sq));

        double worst_rt = 0.0;
        for (int i = 0; i < roundtrip_samples; ++i) {
            const ReducedCoords rc = random_reduced(spec, br, s);
            const cplx z = reduced_to_coset(spec, rc);
            const ReducedCoords back = coset_to_reduced(spec, z, br);
            double d = std::abs(rc.radial - back.radial);
            if (spec.model == Model::C_Inverted)
                d = std::max(d, std::abs(rc.angle - back.angle));
            else
                d = std::max(d, angle_dist(rc.angle, back.angle));
            worst_rt = std::max(worst_rt, d);
        }
        out.add("chart-roundtrip" + tag, worst_rt, 1e-10);
    }

    if (spec.model == Model::C_Inverted && exclusion_samples > 0) {
        // sample the surface globally through the (mu, gamma1, gamma2) chart and
        // look for the sign combination ruled out by positivity of R^2
        const double r = std::sqrt(spec.r_sq);
        int hits = 0;
        double worst_res = 0.0;
        for (int i = 0; i < exclusion_samples; ++i) {
            const double mu = s.uniform(0.0, 2.0);
            const double g1 = s.uniform(0.0, two_pi), g2 = s.uniform(0.0, two_pi);
            PhasePoint pt;
            pt.p1 = r * std::cosh(mu) * std::cos(g1);
            pt.p2 = r * std::cosh(mu) * std::sin(g1);
            pt.q1 = r * std::sinh(mu) * std::sin(g2);
            pt.q2 = r * std::sinh(mu) * std::cos(g2);
            worst_res = std::max(worst_res, std::abs(constraint_residual(spec, pt)));
            const double a1 = pt.p1 * pt.p1 - pt.q1 * pt.q1;
            const double a2 = pt.q2 * pt.q2 - pt.p2 * pt.p2;
            if (a1 < 0.0 && a2 > 0.0) ++hits;
        }
        out.env("exclusion_samples", std::to_string(exclusion_samples));
        out.add("excluded-sign-hits", double(hits), 0.0);
        out.add("global-chart-residual", worst_res, 1e-12 * spec.r_sq);
    }
    return out;
}

} // namespace cohq

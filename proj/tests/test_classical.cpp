#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "cohq/classical.hpp"

using namespace cohq;

namespace {

ModelSpec spec_of(Model m, double r_sq, CutoffScheme scheme = CutoffScheme::TotalQuanta,
                  int cutoff = 6) {
    return {m, r_sq, 1.0, make_space(scheme, cutoff)};
}

double coord_diff(const PhasePoint& a, const PhasePoint& b) {
    return std::max(std::max(std::abs(a.q1 - b.q1), std::abs(a.p1 - b.p1)),
                    std::max(std::abs(a.q2 - b.q2), std::abs(a.p2 - b.p2)));
}

} // namespace

TEST_CASE("surface charts hit published reference points and stay on shell") {
    auto sa = spec_of(Model::A_OscSum, 4.0); // R = 2
    PhasePoint a0 = surface_point(sa, {0, 0.0, 0.0, 0.0});
    CHECK(coord_diff(a0, {2.0, 0.0, 0.0, 0.0}) < 1e-15);
    CHECK(std::abs(constraint_residual(sa, a0)) < 1e-15);

    auto sc = spec_of(Model::C_Inverted, 4.0);
    PhasePoint c0 = surface_point(sc, {1, 0.0, 0.0, 0.0});
    CHECK(coord_diff(c0, {0.0, 2.0, 0.0, 0.0}) < 1e-15);
    CHECK(std::abs(constraint_residual(sc, c0)) < 1e-15);

    // every branch parameterizes the zero set
    for (int br : {1, 2, 3}) {
        PhasePoint pt = surface_point(sc, {br, 0.7, -0.4, 0.9});
        CHECK(std::abs(constraint_residual(sc, pt)) < 1e-13);
    }
    auto sb = spec_of(Model::B_OscDiff, 3.0);
    CHECK(std::abs(constraint_residual(sb, surface_point(sb, {0, 0.8, 1.0, 2.0}))) < 1e-13);

    // off-shell points report their deficit
    CHECK(constraint_residual(sa, {4.0, 0.0, 0.0, 0.0}) == doctest::Approx(6.0));

    CHECK_THROWS_AS(surface_point(sc, {3, 0.0, 0.1, 0.2}), std::domain_error);
    CHECK_THROWS_AS(surface_point(sc, {0, 0.5, 0.1, 0.2}), usage_error);
    CHECK_THROWS_AS(surface_point(sc, {4, 0.5, 0.1, 0.2}), usage_error);
}

TEST_CASE("observable triples and Casimir branch constants") {
    auto sa = spec_of(Model::A_OscSum, 4.0);
    auto ja = classical_observables(sa, {2.0, 0.0, 0.0, 0.0});
    CHECK(ja[0] == doctest::Approx(0.0));
    CHECK(ja[1] == doctest::Approx(0.0));
    CHECK(ja[2] == doctest::Approx(1.0)); // (q1^2+p1^2)/4

    // Casimir takes the value +-(R^2/4)^2 across the whole surface
    const double want = 1.0; // (4/4)^2
    for (double th : {0.2, 0.9, 1.4})
        CHECK(classical_casimir(sa, surface_point(sa, {0, th, 0.5, 2.5})) ==
              doctest::Approx(want).epsilon(1e-12));

    auto sb = spec_of(Model::B_OscDiff, 4.0);
    for (double xi : {0.0, 0.6, 1.3})
        CHECK(classical_casimir(sb, surface_point(sb, {0, xi, 1.1, 0.3})) ==
              doctest::Approx(want).epsilon(1e-12));

    auto sc = spec_of(Model::C_Inverted, 4.0);
    for (int br : {1, 2, 3})
        CHECK(classical_casimir(sc, surface_point(sc, {br, 0.8, -0.3, 0.6})) ==
              doctest::Approx(-want).epsilon(1e-12));
}

TEST_CASE("gauge flows: closed orbits, group law, invariance") {
    auto sa = spec_of(Model::A_OscSum, 6.0);
    PhasePoint pa = surface_point(sa, {0, 0.7, 1.1, 2.0});
    CHECK(coord_diff(gauge_flow(sa, pa, 2.0 * M_PI), pa) < 1e-13);
    PhasePoint quarter = gauge_flow(sa, {2.0, 0.0, 0.0, 0.0}, 0.5 * M_PI);
    CHECK(coord_diff(quarter, {0.0, -2.0, 0.0, 0.0}) < 1e-15);

    auto sb = spec_of(Model::B_OscDiff, 2.0);
    PhasePoint pb = surface_point(sb, {0, 0.5, 0.4, 1.7});
    auto ob = classical_observables(sb, pb);
    auto ob2 = classical_observables(sb, gauge_flow(sb, pb, 0.83));
    for (int c = 0; c < 3; ++c) CHECK(ob[c] == doctest::Approx(ob2[c]).epsilon(1e-12));

    auto sc = spec_of(Model::C_Inverted, 4.0);
    PhasePoint pc = surface_point(sc, {2, 0.6, -0.2, 0.5});
    CHECK(std::abs(constraint_residual(sc, gauge_flow(sc, pc, 1.3))) < 1e-12);
    CHECK(coord_diff(gauge_flow(sc, gauge_flow(sc, pc, 0.7), -0.7), pc) < 1e-13);
    // boost orbit of the reference point stays at p1^2 - q1^2 = R^2
    PhasePoint moved = gauge_flow(sc, {0.0, 2.0, 0.0, 0.0}, 0.9);
    CHECK(moved.p1 * moved.p1 - moved.q1 * moved.q1 == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("compact model label chart") {
    auto s = spec_of(Model::A_OscSum, 6.0);
    CHECK(std::abs(reduced_to_coset(s, {0, 0.0, 0.0})) == 0.0);
    CHECK(std::abs(reduced_to_coset(s, {0, M_PI / 4.0, 0.0}) - cplx(-1.0, 0.0)) < 1e-15);

    ReducedCoords rc{0, 0.6, 2.1};
    ReducedCoords back = coset_to_reduced(s, reduced_to_coset(s, rc));
    CHECK(back.radial == doctest::Approx(0.6).epsilon(1e-13));
    CHECK(back.angle == doctest::Approx(2.1).epsilon(1e-13));

    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(coset_to_reduced(s, cplx(inf, 0.0)), std::domain_error);
}

TEST_CASE("non-compact pair model label chart") {
    auto s = spec_of(Model::B_OscDiff, 2.0);
    cplx z = reduced_to_coset(s, {0, 0.5, 0.7});
    CHECK(std::abs(z) == doctest::Approx(std::tanh(0.5)).epsilon(1e-14));
    CHECK(std::arg(z) == doctest::Approx(0.7).epsilon(1e-13));

    ReducedCoords back = coset_to_reduced(s, z);
    CHECK(back.radial == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(back.angle == doctest::Approx(0.7).epsilon(1e-13));

    CHECK_THROWS_AS(coset_to_reduced(s, cplx(1.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(coset_to_reduced(s, cplx(0.8, 0.8)), std::domain_error);
}

TEST_CASE("inverted model label chart, branch by branch") {
    auto s = spec_of(Model::C_Inverted, 4.0);

    SUBCASE("case-1 closed form matches the direct surface computation") {
        const double xi = 0.4, eta = 0.25, r = 2.0;
        // gauge-fixed slice point, mapped through the global surface chart
        PhasePoint pt = surface_point(s, gauge_fixed_chart(s, {1, xi, eta}));
        const double mu = std::asinh(std::hypot(pt.q1, pt.q2) / r);
        const double gsum = std::atan2(pt.p2, pt.p1) + std::atan2(pt.q1, pt.q2);
        const cplx direct = std::tanh(mu) * std::polar(1.0, gsum);
        CHECK(std::abs(reduced_to_coset(s, {1, xi, eta}) - direct) < 1e-14);
    }
    SUBCASE("case-2 label is the negated case-1 label") {
        CHECK(std::abs(reduced_to_coset(s, {2, 0.4, 0.25}) +
                       reduced_to_coset(s, {1, 0.4, 0.25})) < 1e-14);
    }
    SUBCASE("case-1 and case-2 roundtrips are exact") {
        for (int br : {1, 2}) {
            ReducedCoords rc{br, 0.3, 0.2};
            ReducedCoords back = coset_to_reduced(s, reduced_to_coset(s, rc), br);
            CHECK(std::abs(back.radial - 0.3) < 1e-12);
            CHECK(std::abs(back.angle - 0.2) < 1e-12);

            ReducedCoords neg{br, -0.9, -0.55};
            ReducedCoords nb = coset_to_reduced(s, reduced_to_coset(s, neg), br);
            CHECK(std::abs(nb.radial + 0.9) < 1e-12);
            CHECK(std::abs(nb.angle + 0.55) < 1e-12);
        }
    }
    SUBCASE("case-3 closed form: |label| from eta, phase from the radial gudermannian") {
        const double xi = 0.5, eta = 0.3;
        const cplx z = reduced_to_coset(s, {3, xi, eta});
        CHECK(std::abs(z) == doctest::Approx(std::tanh(0.3)).epsilon(1e-14));
        const double want = 2.0 * std::atan(std::sinh(xi)) + 0.5 * M_PI;
        CHECK(std::arg(z) == doctest::Approx(want).epsilon(1e-13));
    }
    SUBCASE("case-3 roundtrip on the eta > 0 half-chart") {
        ReducedCoords rc{3, -0.8, 0.45};
        ReducedCoords back = coset_to_reduced(s, reduced_to_coset(s, rc), 3);
        CHECK(std::abs(back.radial + 0.8) < 1e-12);
        CHECK(std::abs(back.angle - 0.45) < 1e-12);
    }
    SUBCASE("case-3 chart covers the label disk twice") {
        // an eta < 0 point maps to a label whose canonical (eta >= 0) preimage
        // differs, yet both preimages map forward to the same label
        ReducedCoords rc{3, 0.5, -0.3};
        const cplx z = reduced_to_coset(s, rc);
        ReducedCoords back = coset_to_reduced(s, z, 3);
        CHECK(back.angle == doctest::Approx(0.3).epsilon(1e-12)); // |eta|
        CHECK(back.radial != doctest::Approx(0.5).epsilon(1e-6));
        CHECK(std::abs(reduced_to_coset(s, back) - z) < 1e-12);
    }
    SUBCASE("case-3 guards") {
        CHECK_THROWS_AS(coset_to_reduced(s, cplx(0.0, -0.4), 3), std::domain_error);
        ReducedCoords origin = coset_to_reduced(s, cplx(0.0, 0.0), 3);
        CHECK(origin.radial == 0.0);
        CHECK(origin.angle == 0.0);
        CHECK_THROWS_AS(coset_to_reduced(s, cplx(0.3, 0.0), 0), usage_error);
        CHECK_THROWS_AS(coset_to_reduced(s, cplx(2.0, 0.0), 1), std::domain_error);
    }
}

TEST_CASE("semiclassical comparison holds the third-component bound") {
    auto sa = spec_of(Model::A_OscSum, 6.0, CutoffScheme::TotalQuanta, 20);
    auto ra = semiclassical_compare(sa, {0, M_PI / 8.0, 0.3}, build_generators(sa));
    CHECK(ra.pass());
    bool saw_bound = false;
    for (const auto& c : ra.checks)
        if (c.name == "z-deviation" && !c.informational()) {
            saw_bound = true;
            CHECK(c.measured == doctest::Approx(0.5 * std::abs(std::cos(M_PI / 4.0)))
                                    .epsilon(1e-9));
        }
    CHECK(saw_bound);

    auto sb = spec_of(Model::B_OscDiff, 2.0, CutoffScheme::PerMode, 24);
    auto rb = semiclassical_compare(sb, {0, 0.4, 0.2}, build_generators(sb));
    CHECK(rb.pass());

    auto sc = spec_of(Model::C_Inverted, 4.0, CutoffScheme::PerMode, 12);
    CHECK_THROWS_AS(semiclassical_compare(sc, {1, 0.3, 0.2}, build_generators(sc)),
                    unsupported_model);
}

TEST_CASE("map verification reports pass for all models") {
    auto ra = classical_maps_report(spec_of(Model::A_OscSum, 6.0), 400, 0, 20240817u);
    CHECK(ra.pass());
    auto rb = classical_maps_report(spec_of(Model::B_OscDiff, 2.0), 400, 0, 20240817u);
    CHECK(rb.pass());

    auto rc = classical_maps_report(spec_of(Model::C_Inverted, 4.0), 400, 20000, 20240817u);
    CHECK(rc.pass());
    bool saw_exclusion = false;
    for (const auto& c : rc.checks)
        if (c.name == "excluded-sign-hits") {
            saw_exclusion = true;
            CHECK(c.measured == 0.0);
        }
    CHECK(saw_exclusion);

    // determinism: the same seed reproduces every measured number
    auto rc2 = classical_maps_report(spec_of(Model::C_Inverted, 4.0), 400, 20000, 20240817u);
    REQUIRE(rc2.checks.size() == rc.checks.size());
    for (size_t i = 0; i < rc.checks.size(); ++i)
        CHECK(rc.checks[i].measured == rc2.checks[i].measured);
}

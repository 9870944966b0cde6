#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cohq/models.hpp"

using namespace cohq;

namespace {

ModelSpec spec_of(Model m, double r_sq, CutoffScheme scheme, int cutoff, double hbar = 1.0) {
    return {m, r_sq, hbar, make_space(scheme, cutoff)};
}

} // namespace

TEST_CASE("constraint operators are the advertised quadratics") {
    SUBCASE("A is diagonal: hbar(n1+n2+1) - R^2/2") {
        auto s = spec_of(Model::A_OscSum, 6.0, CutoffScheme::TotalQuanta, 5);
        auto phi = build_constraint(s);
        for (int i = 0; i < s.space->dim(); ++i) {
            auto [n1, n2] = s.space->occupation(i);
            CHECK(phi.m(i, i).real() == doctest::Approx(n1 + n2 - 2.0).epsilon(1e-15));
        }
        CHECK((phi.m - Mat(phi.m.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("B is diagonal: hbar(n1-n2) - R^2/2") {
        auto s = spec_of(Model::B_OscDiff, 2.0, CutoffScheme::PerMode, 4);
        auto phi = build_constraint(s);
        for (int i = 0; i < s.space->dim(); ++i) {
            auto [n1, n2] = s.space->occupation(i);
            CHECK(phi.m(i, i).real() == doctest::Approx(n1 - n2 - 1.0).epsilon(1e-15));
        }
    }
    SUBCASE("C couples shells two apart and is self-adjoint") {
        auto s = spec_of(Model::C_Inverted, 4.0, CutoffScheme::PerMode, 4);
        auto phi = build_constraint(s);
        CHECK(max_abs(phi - adjoint(phi)) == 0.0);
        const int i00 = s.space->index_of(0, 0), i20 = s.space->index_of(2, 0);
        CHECK(phi.m(i00, i00).real() == doctest::Approx(-2.0)); // -(R^2/2)
        CHECK(phi.m(i20, i00).real() == doctest::Approx(-std::sqrt(2.0) / 2.0));
    }
}

TEST_CASE("generator triples close with the right signature") {
    struct Row {
        Model model;
        CutoffScheme scheme;
        double r_sq;
        AlgebraSignature sig;
    };
    const Row rows[] = {
        {Model::A_OscSum, CutoffScheme::TotalQuanta, 6.0, AlgebraSignature::Compact},
        {Model::B_OscDiff, CutoffScheme::PerMode, 2.0, AlgebraSignature::NonCompact},
        {Model::C_Inverted, CutoffScheme::PerMode, 4.0, AlgebraSignature::NonCompact},
    };
    for (const auto& row : rows) {
        CAPTURE(model_name(row.model));
        auto s = spec_of(row.model, row.r_sq, row.scheme, 8);
        auto gen = build_generators(s);
        CHECK(gen.signature == row.sig);
        CHECK(max_abs(gen.X - adjoint(gen.X)) < 1e-14);
        CHECK(max_abs(gen.Y - adjoint(gen.Y)) < 1e-14);
        CHECK(max_abs(gen.Z - adjoint(gen.Z)) < 1e-14);

        // structure constants on the interior, by hand
        const int margin = min_margin(row.model, row.scheme);
        auto p = interior_projector(s.space, margin);
        const cplx ih(0.0, s.hbar);
        const cplx sxy = row.sig == AlgebraSignature::Compact ? ih : -ih;
        CHECK(max_abs(p * (commutator(gen.X, gen.Y) - sxy * gen.Z) * p) < 1e-12);
        CHECK(max_abs(p * (commutator(gen.Y, gen.Z) - ih * gen.X) * p) < 1e-12);
        CHECK(max_abs(p * (commutator(gen.Z, gen.X) - ih * gen.Y) * p) < 1e-12);

        auto report = check_algebra(s, gen, margin, 1e-12);
        CHECK(report.pass());
        CHECK(report.checks.size() == 3);
    }
}

TEST_CASE("margin discipline") {
    CHECK(min_margin(Model::A_OscSum, CutoffScheme::TotalQuanta) == 0);
    CHECK(min_margin(Model::A_OscSum, CutoffScheme::PerMode) == 2);
    CHECK(min_margin(Model::B_OscDiff, CutoffScheme::PerMode) == 2);
    CHECK(min_margin(Model::B_OscDiff, CutoffScheme::TotalQuanta) == 2);
    CHECK(min_margin(Model::C_Inverted, CutoffScheme::PerMode) == 4);

    auto s = spec_of(Model::B_OscDiff, 2.0, CutoffScheme::PerMode, 6);
    auto gen = build_generators(s);
    CHECK_THROWS_AS(check_algebra(s, gen, 0, 1e-12), usage_error);

    // boundary_expected turns the same call into informational records
    auto rep = check_algebra(s, gen, 0, 1e-12, true);
    CHECK(rep.pass());
    bool some_informational = false;
    for (const auto& c : rep.checks) some_informational |= c.informational();
    CHECK(some_informational);
}

TEST_CASE("Casimir equals its closed form in the constraint") {
    for (auto [model, scheme, r_sq] :
         {std::tuple{Model::A_OscSum, CutoffScheme::TotalQuanta, 6.0},
          std::tuple{Model::B_OscDiff, CutoffScheme::PerMode, 2.0},
          std::tuple{Model::C_Inverted, CutoffScheme::PerMode, 4.0}}) {
        CAPTURE(model_name(model));
        auto s = spec_of(model, r_sq, scheme, 9);
        auto rep = casimir_constraint_identity(s, min_margin(model, scheme), 1e-11);
        CHECK(rep.pass());
    }
}

TEST_CASE("vacuum Casimir of the pair model is -hbar^2/4") {
    // frozen by hand: Kz|00> = (hbar/2)|00>, Kx|00> and Ky|00> reach |11> with
    // weight hbar/2, so C2 = hbar^2/4 - hbar^2/4 - hbar^2/4
    for (double hbar : {1.0, 0.5}) {
        auto s = spec_of(Model::B_OscDiff, 2.0, CutoffScheme::PerMode, 4, hbar);
        auto c2 = casimir(build_generators(s));
        const int i00 = s.space->index_of(0, 0);
        CHECK(c2.m(i00, i00).real() ==
              doctest::Approx(-hbar * hbar / 4.0).epsilon(1e-14));
    }
}

TEST_CASE("constraint selects the representation index") {
    SUBCASE("A: j = (R^2/2hbar - 1)/2, integer-spaced or nothing") {
        auto r6 = rep_index_from_R(spec_of(Model::A_OscSum, 6.0, CutoffScheme::TotalQuanta, 6));
        CHECK(r6.series == RepSeries::SU2);
        CHECK(r6.value == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(!r6.alternate);

        auto r4 = rep_index_from_R(spec_of(Model::A_OscSum, 4.0, CutoffScheme::TotalQuanta, 6));
        CHECK(r4.value == doctest::Approx(0.5).epsilon(1e-12)); // half-integer j is fine

        auto r2 = rep_index_from_R(spec_of(Model::A_OscSum, 2.0, CutoffScheme::TotalQuanta, 6));
        CHECK(r2.value == doctest::Approx(0.0).epsilon(1e-12));

        CHECK_THROWS_AS(
            rep_index_from_R(spec_of(Model::A_OscSum, 5.0, CutoffScheme::TotalQuanta, 6)),
            no_physical_states);
        CHECK_THROWS_AS(
            rep_index_from_R(spec_of(Model::A_OscSum, 1.0, CutoffScheme::TotalQuanta, 6)),
            no_physical_states);
        // inside the detection tolerance
        auto near = rep_index_from_R(
            spec_of(Model::A_OscSum, 6.0 + 1e-12, CutoffScheme::TotalQuanta, 6));
        CHECK(near.value == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("B: k = (1 + R^2/2hbar)/2, alternate label below R^2 = 2 hbar") {
        auto r2 = rep_index_from_R(spec_of(Model::B_OscDiff, 2.0, CutoffScheme::PerMode, 6));
        CHECK(r2.series == RepSeries::SU11_discrete);
        CHECK(r2.value == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(!r2.alternate);

        auto r1 = rep_index_from_R(spec_of(Model::B_OscDiff, 1.0, CutoffScheme::PerMode, 6));
        CHECK(r1.value == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(r1.alternate);
    }
    SUBCASE("C: principal series lambda = R^2/4hbar") {
        auto r4 = rep_index_from_R(spec_of(Model::C_Inverted, 4.0, CutoffScheme::PerMode, 6));
        CHECK(r4.series == RepSeries::SU11_principal);
        CHECK(r4.value == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("representation Casimir values") {
    CHECK(rep_casimir_value({RepSeries::SU2, 1.0, false}, 1.0) == doctest::Approx(2.0));
    CHECK(rep_casimir_value({RepSeries::SU2, 0.5, false}, 2.0) == doctest::Approx(3.0));
    CHECK(rep_casimir_value({RepSeries::SU11_discrete, 1.0, false}, 1.0) == doctest::Approx(0.0));
    CHECK(rep_casimir_value({RepSeries::SU11_discrete, 1.5, false}, 1.0) ==
          doctest::Approx(0.75));
    CHECK(rep_casimir_value({RepSeries::SU11_principal, 1.0, false}, 1.0) ==
          doctest::Approx(-1.25));
}

TEST_CASE("constraint kernel enumeration") {
    auto sa = spec_of(Model::A_OscSum, 6.0, CutoffScheme::TotalQuanta, 10);
    auto ka = constraint_kernel_indices(sa);
    REQUIRE(ka.size() == 3); // the n1+n2 = 2 shell
    for (int idx : ka) {
        auto [n1, n2] = sa.space->occupation(idx);
        CHECK(n1 + n2 == 2);
    }

    auto sb = spec_of(Model::B_OscDiff, 2.0, CutoffScheme::PerMode, 4);
    auto kb = constraint_kernel_indices(sb);
    REQUIRE(kb.size() == 4); // (1,0), (2,1), (3,2), (4,3)
    for (int idx : kb) {
        auto [n1, n2] = sb.space->occupation(idx);
        CHECK(n1 - n2 == 1);
    }

    // empty kernel when the eigenvalue is missed
    auto sa5 = spec_of(Model::A_OscSum, 5.0, CutoffScheme::TotalQuanta, 10);
    CHECK(constraint_kernel_indices(sa5).empty());

    auto sc = spec_of(Model::C_Inverted, 4.0, CutoffScheme::PerMode, 4);
    CHECK_THROWS_AS(constraint_kernel_indices(sc), unsupported_model);
}

TEST_CASE("model names and validation") {
    CHECK(model_name(Model::A_OscSum) == "A");
    CHECK(model_from_name("B") == Model::B_OscDiff);
    CHECK_THROWS_AS(model_from_name("D"), config_error);

    ModelSpec bad{Model::A_OscSum, -1.0, 1.0, make_space(CutoffScheme::TotalQuanta, 3)};
    CHECK_THROWS_AS(bad.validate(), config_error);
    ModelSpec nohbar{Model::A_OscSum, 6.0, 0.0, make_space(CutoffScheme::TotalQuanta, 3)};
    CHECK_THROWS_AS(nohbar.validate(), config_error);
    ModelSpec nospace{Model::A_OscSum, 6.0, 1.0, nullptr};
    CHECK_THROWS_AS(nospace.validate(), usage_error);
}

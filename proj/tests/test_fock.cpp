#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cohq/fock.hpp"

using namespace cohq;

TEST_CASE("basis enumeration is shell-ordered and scheme-correct") {
    auto total1 = make_space(CutoffScheme::TotalQuanta, 1);
    REQUIRE(total1->dim() == 3);
    CHECK(total1->occupation(0) == std::pair{0, 0});
    CHECK(total1->occupation(1) == std::pair{0, 1});
    CHECK(total1->occupation(2) == std::pair{1, 0});

    auto per1 = make_space(CutoffScheme::PerMode, 1);
    REQUIRE(per1->dim() == 4);
    CHECK(per1->occupation(0) == std::pair{0, 0});
    CHECK(per1->occupation(1) == std::pair{0, 1});
    CHECK(per1->occupation(2) == std::pair{1, 0});
    CHECK(per1->occupation(3) == std::pair{1, 1});

    auto total6 = make_space(CutoffScheme::TotalQuanta, 6);
    CHECK(total6->dim() == 7 * 8 / 2);
    auto per6 = make_space(CutoffScheme::PerMode, 6);
    CHECK(per6->dim() == 49);

    // index_of inverts the enumeration and flags absentees
    for (int i = 0; i < total6->dim(); ++i) {
        auto [n1, n2] = total6->occupation(i);
        CHECK(total6->index_of(n1, n2) == i);
    }
    CHECK(total6->index_of(4, 3) == -1);
    CHECK(!total6->contains(7, 0));
    CHECK(per6->contains(6, 6));
    CHECK(!per6->contains(7, 0));
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(make_space(CutoffScheme::TotalQuanta, 0), config_error);
    CHECK_THROWS_AS(make_space(CutoffScheme::TotalQuanta, -3), config_error);
    // (N+1)(N+2)/2 and (N+1)^2 against the 8192 ceiling
    CHECK_NOTHROW(make_space(CutoffScheme::TotalQuanta, 126));
    CHECK_THROWS_AS(make_space(CutoffScheme::TotalQuanta, 127), config_error);
    CHECK_NOTHROW(make_space(CutoffScheme::PerMode, 89));
    CHECK_THROWS_AS(make_space(CutoffScheme::PerMode, 90), config_error);

    CHECK(scheme_from_name("total") == CutoffScheme::TotalQuanta);
    CHECK(scheme_from_name("permode") == CutoffScheme::PerMode);
    CHECK_THROWS_AS(scheme_from_name("diagonal"), config_error);
}

TEST_CASE("ladder operators carry the exact matrix elements") {
    auto sp = make_space(CutoffScheme::TotalQuanta, 4);
    auto a1 = annihilation(sp, 1), a2 = annihilation(sp, 2);
    auto c1 = creation(sp, 1);

    const int i00 = sp->index_of(0, 0), i10 = sp->index_of(1, 0), i20 = sp->index_of(2, 0);
    const int i01 = sp->index_of(0, 1);
    CHECK(a1.m(i00, i10) == cplx(1.0));
    CHECK(a1.m(i10, i20) == cplx(std::sqrt(2.0)));
    CHECK(a2.m(i00, i01) == cplx(1.0));
    CHECK(c1.m(i10, i00) == cplx(1.0));
    CHECK(max_abs(adjoint(a1) - c1) == 0.0);
    CHECK_THROWS_AS(annihilation(sp, 3), usage_error);

    auto n1 = number_op(sp, 1);
    for (int i = 0; i < sp->dim(); ++i)
        CHECK(n1.m(i, i).real() == double(sp->occupation(i).first));
    CHECK(max_abs(n1 - adjoint(c1 * a1) * identity_op(sp)) < 1e-14);
}

TEST_CASE("canonical commutator holds on the interior only") {
    auto sp = make_space(CutoffScheme::TotalQuanta, 5);
    auto a1 = annihilation(sp, 1);
    auto ccr = commutator(a1, adjoint(a1)) - identity_op(sp);
    CHECK(max_abs(ccr) > 0.5); // boundary corruption is real
    auto p = interior_projector(sp, 1);
    CHECK(max_abs(p * ccr * p) < 1e-14);
}

TEST_CASE("interior projector margins") {
    auto sp = make_space(CutoffScheme::TotalQuanta, 5);
    CHECK(max_abs(interior_projector(sp, 0) - identity_op(sp)) == 0.0);
    auto pn = interior_projector(sp, 5); // only the vacuum survives
    CHECK(pn.m.diagonal().real().sum() == 1.0);
    CHECK(pn.m(sp->index_of(0, 0), sp->index_of(0, 0)) == cplx(1.0));
    CHECK_THROWS_AS(interior_projector(sp, 6), config_error);
    CHECK_THROWS_AS(interior_projector(sp, -1), config_error);

    auto pm = interior_projector(make_space(CutoffScheme::PerMode, 3), 2);
    CHECK(pm.m.diagonal().real().sum() == 4.0); // n1,n2 <= 1
}

TEST_CASE("space mismatch is rejected, inner product is conjugate-linear first") {
    auto sa = make_space(CutoffScheme::TotalQuanta, 3);
    auto sb = make_space(CutoffScheme::TotalQuanta, 4);
    CHECK_THROWS_AS(annihilation(sa, 1) + annihilation(sb, 1), usage_error);
    CHECK_THROWS_AS(apply(identity_op(sa), zero_ket(sb)), usage_error);

    auto psi = basis_ket(sa, 1, 0);
    auto phi = basis_ket(sa, 1, 0);
    const cplx i(0.0, 1.0);
    CHECK(inner(i * psi, phi) == cplx(0.0, -1.0));
    CHECK(inner(psi, i * phi) == cplx(0.0, 1.0));
    CHECK_THROWS_AS(basis_ket(sa, 9, 0), usage_error);
}

TEST_CASE("descriptor reproduces the identical space") {
    auto sp = make_space(CutoffScheme::PerMode, 7);
    auto d = describe(sp);
    CHECK(d.scheme == "permode");
    CHECK(d.cutoff == 7);
    CHECK(d.dim == 64);
    auto sp2 = make_space(d);
    REQUIRE(sp2->dim() == sp->dim());
    for (int i = 0; i < sp->dim(); ++i)
        CHECK(sp2->occupation(i) == sp->occupation(i));
    SpaceDescriptor bad = d;
    bad.dim = 63;
    CHECK_THROWS_AS(make_space(bad), config_error);
}

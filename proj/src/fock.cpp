#include "cohq/fock.hpp"

#include <algorithm>
#include <cmath>

namespace cohq {

std::string scheme_name(CutoffScheme s) {
    return s == CutoffScheme::TotalQuanta ? "total" : "permode";
}

CutoffScheme scheme_from_name(const std::string& name) {
    if (name == "total") return CutoffScheme::TotalQuanta;
    if (name == "permode") return CutoffScheme::PerMode;
    throw config_error("unknown cutoff scheme '" + name + "' (expected 'total' or 'permode')");
}

FockSpace::FockSpace(CutoffScheme scheme, int cutoff) : m_scheme(scheme), m_cutoff(cutoff) {
    if (cutoff < 1) throw config_error("cutoff must be >= 1");
    const long n = cutoff;
    const long dim = scheme == CutoffScheme::TotalQuanta ? (n + 1) * (n + 2) / 2 : (n + 1) * (n + 1);
    if (dim > 8192)
        throw config_error("truncated dimension " + std::to_string(dim) +
                           " exceeds the supported desk-scale limit (8192)");

    // enumerate shells of fixed total quanta, then ascending n1 within a shell
    const int max_total = scheme == CutoffScheme::TotalQuanta ? cutoff : 2 * cutoff;
    for (int s = 0; s <= max_total; ++s) {
        const int lo = scheme == CutoffScheme::TotalQuanta ? 0 : std::max(0, s - cutoff);
        const int hi = std::min(cutoff, s);
        for (int n1 = lo; n1 <= hi; ++n1) m_basis.emplace_back(n1, s - n1);
    }

    m_lookup.assign(static_cast<size_t>((cutoff + 1)) * (cutoff + 1), -1);
    for (size_t i = 0; i < m_basis.size(); ++i) {
        const auto [n1, n2] = m_basis[i];
        m_lookup[static_cast<size_t>(n1) * (cutoff + 1) + n2] = static_cast<int>(i);
    }
}

int FockSpace::index_of(int n1, int n2) const {
    if (n1 < 0 || n2 < 0 || n1 > m_cutoff || n2 > m_cutoff) return -1;
    return m_lookup[static_cast<size_t>(n1) * (m_cutoff + 1) + n2];
}

SpacePtr make_space(CutoffScheme scheme, int cutoff) {
    return std::make_shared<const FockSpace>(scheme, cutoff);
}

// ---- constructors ----------------------------------------------------------

LinOp zero_op(const SpacePtr& space) { return {space, Mat::Zero(space->dim(), space->dim())}; }

LinOp identity_op(const SpacePtr& space) {
    return {space, Mat::Identity(space->dim(), space->dim())};
}

static void require_mode(int mode) {
    if (mode != 1 && mode != 2) throw usage_error("mode must be 1 or 2");
}

LinOp annihilation(const SpacePtr& space, int mode) {
    require_mode(mode);
    Mat a = Mat::Zero(space->dim(), space->dim());
    for (int col = 0; col < space->dim(); ++col) {
        auto [n1, n2] = space->occupation(col);
        const int n = mode == 1 ? n1 : n2;
        if (n == 0) continue;
        // lowering never leaves a downward-closed basis
        const int row = mode == 1 ? space->index_of(n1 - 1, n2) : space->index_of(n1, n2 - 1);
        a(row, col) = std::sqrt(static_cast<double>(n));
    }
    return {space, std::move(a)};
}

LinOp creation(const SpacePtr& space, int mode) {
    require_mode(mode);
    Mat c = Mat::Zero(space->dim(), space->dim());
    for (int col = 0; col < space->dim(); ++col) {
        auto [n1, n2] = space->occupation(col);
        const int row = mode == 1 ? space->index_of(n1 + 1, n2) : space->index_of(n1, n2 + 1);
        if (row < 0) continue; // raising across the cutoff is dropped
        const int n = mode == 1 ? n1 : n2;
        c(row, col) = std::sqrt(static_cast<double>(n + 1));
    }
    return {space, std::move(c)};
}

LinOp number_op(const SpacePtr& space, int mode) {
    require_mode(mode);
    Mat d = Mat::Zero(space->dim(), space->dim());
    for (int i = 0; i < space->dim(); ++i) {
        auto [n1, n2] = space->occupation(i);
        d(i, i) = static_cast<double>(mode == 1 ? n1 : n2);
    }
    return {space, std::move(d)};
}

LinOp interior_projector(const SpacePtr& space, int margin) {
    const int n = space->cutoff();
    if (margin < 0 || margin > n)
        throw config_error("interior margin must lie in [0, cutoff]; got " +
                           std::to_string(margin) + " with cutoff " + std::to_string(n));
    Mat p = Mat::Zero(space->dim(), space->dim());
    for (int i = 0; i < space->dim(); ++i) {
        auto [n1, n2] = space->occupation(i);
        const bool keep = space->scheme() == CutoffScheme::TotalQuanta
                              ? n1 + n2 <= n - margin
                              : n1 <= n - margin && n2 <= n - margin;
        if (keep) p(i, i) = 1.0;
    }
    return {space, std::move(p)};
}

Ket zero_ket(const SpacePtr& space) { return {space, Vec::Zero(space->dim())}; }

Ket basis_ket(const SpacePtr& space, int n1, int n2) {
    const int i = space->index_of(n1, n2);
    if (i < 0)
        throw usage_error("basis state |" + std::to_string(n1) + "," + std::to_string(n2) +
                          "> lies outside the truncation");
    Vec v = Vec::Zero(space->dim());
    v(i) = 1.0;
    return {space, std::move(v)};
}

// ---- algebra ----------------------------------------------------------------

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what) {
    if (a == b) return;
    if (a && b && a->scheme() == b->scheme() && a->cutoff() == b->cutoff()) return;
    throw usage_error(std::string(what) + ": operands live on different spaces");
}

LinOp operator+(const LinOp& a, const LinOp& b) {
    require_same_space(a.space, b.space, "op+op");
    return {a.space, a.m + b.m};
}

LinOp operator-(const LinOp& a, const LinOp& b) {
    require_same_space(a.space, b.space, "op-op");
    return {a.space, a.m - b.m};
}

LinOp operator*(const LinOp& a, const LinOp& b) {
    require_same_space(a.space, b.space, "op*op");
    return {a.space, a.m * b.m};
}

LinOp operator*(cplx s, const LinOp& a) { return {a.space, s * a.m}; }

LinOp adjoint(const LinOp& a) { return {a.space, a.m.adjoint()}; }

LinOp commutator(const LinOp& a, const LinOp& b) {
    require_same_space(a.space, b.space, "commutator");
    return {a.space, a.m * b.m - b.m * a.m};
}

Ket apply(const LinOp& a, const Ket& psi) {
    require_same_space(a.space, psi.space, "apply");
    return {psi.space, a.m * psi.v};
}

cplx inner(const Ket& a, const Ket& b) {
    require_same_space(a.space, b.space, "inner");
    return a.v.dot(b.v);
}

Ket operator+(const Ket& a, const Ket& b) {
    require_same_space(a.space, b.space, "ket+ket");
    return {a.space, a.v + b.v};
}

Ket operator-(const Ket& a, const Ket& b) {
    require_same_space(a.space, b.space, "ket-ket");
    return {a.space, a.v - b.v};
}

Ket operator*(cplx s, const Ket& a) { return {a.space, s * a.v}; }

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const LinOp& a) { return max_abs(a.m); }

// ---- serialization -----------------------------------------------------------

SpaceDescriptor describe(const SpacePtr& space) {
    return {scheme_name(space->scheme()), space->cutoff(), space->dim()};
}

SpacePtr make_space(const SpaceDescriptor& d) {
    auto s = make_space(scheme_from_name(d.scheme), d.cutoff);
    if (d.dim != 0 && d.dim != s->dim())
        throw config_error("space descriptor dim " + std::to_string(d.dim) +
                           " does not match the enumerated dimension " + std::to_string(s->dim()));
    return s;
}

} // namespace cohq

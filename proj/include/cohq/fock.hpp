#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cohq/errors.hpp"

namespace cohq {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/* Truncation schemes for the two-mode Fock space.
 *   TotalQuanta(N): keep |n1,n2> with n1+n2 <= N,  dim = (N+1)(N+2)/2
 *   PerMode(N):     keep |n1,n2> with n1,n2 <= N,  dim = (N+1)^2
 */
enum class CutoffScheme { TotalQuanta, PerMode };

std::string scheme_name(CutoffScheme s);
CutoffScheme scheme_from_name(const std::string& name);

/* Two-mode truncated Fock space with a deterministic basis order:
 * states sorted lexicographically in (n1+n2, n1).  Immutable; shared
 * between the operators and vectors living on it. */
class FockSpace {
  public:
    FockSpace(CutoffScheme scheme, int cutoff);

    CutoffScheme scheme() const { return m_scheme; }
    int cutoff() const { return m_cutoff; }
    int dim() const { return static_cast<int>(m_basis.size()); }

    const std::vector<std::pair<int, int>>& basis() const { return m_basis; }
    std::pair<int, int> occupation(int index) const { return m_basis.at(index); }

    // index of |n1,n2>, or -1 when the state lies outside the truncation
    int index_of(int n1, int n2) const;
    bool contains(int n1, int n2) const { return index_of(n1, n2) >= 0; }

  private:
    CutoffScheme m_scheme;
    int m_cutoff;
    std::vector<std::pair<int, int>> m_basis;
    std::vector<int> m_lookup; // (N+1)^2 table, -1 for absent states
};

using SpacePtr = std::shared_ptr<const FockSpace>;

SpacePtr make_space(CutoffScheme scheme, int cutoff);

/* Dense operator on a FockSpace.  All algebra checks space compatibility;
 * mixing operators from different spaces is a usage error. */
struct LinOp {
    SpacePtr space;
    Mat m;

    LinOp() = default;
    LinOp(SpacePtr s, Mat mat) : space(std::move(s)), m(std::move(mat)) {}
};

/* State vector on a FockSpace. */
struct Ket {
    SpacePtr space;
    Vec v;

    Ket() = default;
    Ket(SpacePtr s, Vec vec) : space(std::move(s)), v(std::move(vec)) {}
    double norm() const { return v.norm(); }
};

// ---- constructors ---------------------------------------------------------

LinOp zero_op(const SpacePtr& space);
LinOp identity_op(const SpacePtr& space);
// annihilation/creation for mode 1 or 2; transitions leaving the basis are dropped
LinOp annihilation(const SpacePtr& space, int mode);
LinOp creation(const SpacePtr& space, int mode);
// diagonal number operator; exactly diagonal even at the cutoff
LinOp number_op(const SpacePtr& space, int mode);
// diagonal 0/1 projector onto states at least `margin` quanta below the cutoff
// (per mode for PerMode, in total for TotalQuanta); margin in [0, N]
LinOp interior_projector(const SpacePtr& space, int margin);

Ket zero_ket(const SpacePtr& space);
Ket basis_ket(const SpacePtr& space, int n1, int n2);

// ---- algebra ---------------------------------------------------------------

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what);

LinOp operator+(const LinOp& a, const LinOp& b);
LinOp operator-(const LinOp& a, const LinOp& b);
LinOp operator*(const LinOp& a, const LinOp& b);
LinOp operator*(cplx s, const LinOp& a);
LinOp adjoint(const LinOp& a);
LinOp commutator(const LinOp& a, const LinOp& b);

Ket apply(const LinOp& a, const Ket& psi);
// conjugate-linear in the first argument
cplx inner(const Ket& a, const Ket& b);

Ket operator+(const Ket& a, const Ket& b);
Ket operator-(const Ket& a, const Ket& b);
Ket operator*(cplx s, const Ket& a);

// largest |entry|; the deviation measure used by the operator identity checks
double max_abs(const Mat& m);
double max_abs(const LinOp& a);

// ---- serialization ---------------------------------------------------------

/* Compact descriptor embedded in reports; make_space(descriptor) reproduces
 * the identical basis enumeration. */
struct SpaceDescriptor {
    std::string scheme;
    int cutoff = 0;
    int dim = 0;
};

SpaceDescriptor describe(const SpacePtr& space);
SpacePtr make_space(const SpaceDescriptor& d);

} // namespace cohq

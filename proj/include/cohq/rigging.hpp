#pragma once

#include <vector>

#include "cohq/coherent.hpp"
#include "cohq/models.hpp"
#include "cohq/report.hpp"

namespace cohq {

// Orthogonal projector onto the kernel of the constraint, obtained by averaging
// the gauge flow over the group. Kernel may be empty (m = 0).
struct PhysicalProjector {
    SpacePtr space;
    Mat m;
    int kernel_dim = 0;
};

PhysicalProjector group_average_projector(const ModelSpec& spec);

// Independent construction of the same projector: uniform quadrature of
// exp(-i lambda phi / hbar) over one period, exact once the node count exceeds
// the spectral radius of phi/hbar.
Mat lambda_average_projector(const ModelSpec& spec, int nodes);

cplx physical_inner(const PhysicalProjector& p, const Ket& a, const Ket& b);
cplx physical_expectation(const PhysicalProjector& p, const LinOp& a, const Ket& psi);
double physical_fluctuation(const PhysicalProjector& p, const LinOp& a, const Ket& psi);

// Group average of a two-mode product coherent state: equal-weight sum over the
// gauge orbit with the constraint-induced phase. nodes = 0 picks a count large
// enough to make the discrete average exact on the truncated space.
Ket average_hw_state(const ModelSpec& spec, cplx z1, cplx z2, int nodes = 0,
                     double tail_eps = 1e-12);

// Physical vs kinematical agreement on coherent states of the selected ladder:
// pairwise inner products, generator expectations, and fluctuations, plus a
// product-state control that must stay separated.
CheckReport kin_phys_equality_report(const ModelSpec& spec, const std::vector<cplx>& labels,
                                     double tol, double control_min);

// Cross-check of the two projector constructions plus idempotency,
// self-adjointness, and commutation with the gauge-invariant generators.
CheckReport projector_consistency_report(const ModelSpec& spec, int nodes, double tol);

// Group-averaged product state against a direct projector application, with the
// orbit-average phase structure made explicit.
CheckReport project_hw_report(const ModelSpec& spec, cplx z1, cplx z2, int nodes, double tol);

// Overlap with the resolution-of-identity quadrature inserted twice: the
// double insertion must reproduce the plain coherent overlap.
CheckReport overlap_double_quadrature_check(const RepIndex& rep, int ladder_len,
                                            const QuadratureSpec& quad, cplx za, cplx zb,
                                            double tol);

} // namespace cohq

#pragma once

#include <vector>

#include "cohq/models.hpp"

namespace cohq {

/* Embedding of the constraint-selected irrep ladder into the Fock basis:
 * irrep basis vector i maps to the Fock basis state fock_index[i] with unit
 * weight.
 *   SU2 (j):           |j,m>  -> |n1 = j+m, n2 = j-m>,  m = -j..j ascending
 *   SU11 discrete (k): |k,n>  -> |n1 = n+2k-1, n2 = n>, n = 0..len-1
 */
struct IrrepEmbedding {
    RepIndex rep;
    SpacePtr space;
    std::vector<int> fock_index;

    int len() const { return static_cast<int>(fock_index.size()); }
};

/* Builds the embedding for the irrep selected by spec (via rep_index_from_R).
 * Model C (principal series) has no Fock ladder and is rejected. */
IrrepEmbedding embed_irrep(const ModelSpec& spec);
IrrepEmbedding embed_irrep(const ModelSpec& spec, const RepIndex& rep);

// Ket on the embedding's Fock space from irrep-ladder amplitudes
Ket embed(const IrrepEmbedding& emb, const Vec& amplitudes);

/* Normalized coherent-state amplitudes on the irrep ladder.
 *   SU2:  c_m = sqrt(C(2j, j+m)) zeta^{j+m} / (1+|zeta|^2)^j
 *   SU11: c_n = (1-|zeta|^2)^k sqrt(Gamma(n+2k)/(Gamma(n+1) Gamma(2k))) zeta^n
 * Binomial/Gamma ratios are evaluated in log space. */
Vec su2_amplitudes(double j, cplx zeta);
Vec su11_amplitudes(double k, cplx zeta, int count); // requires |zeta| < 1

/* Smallest ladder length minus one (max n) whose neglected tail has squared
 * norm <= tail_eps, from a geometric bound on the negative-binomial series. */
int su11_min_cutoff(double k, double abs_zeta, double tail_eps);

// squared-norm tail of a two-mode product coherent state outside the truncation
double hw_tail(const SpacePtr& space, cplx z1, cplx z2);
// smallest cutoff with hw_tail <= tail_eps under the given scheme
int hw_min_cutoff(CutoffScheme scheme, cplx z1, cplx z2, double tail_eps);

/* Fock-space coherent states.  su11_state and hw_state raise
 * truncation_too_small when the neglected tail exceeds tail_eps. */
Ket su2_state(const IrrepEmbedding& emb, cplx zeta);
Ket su11_state(const IrrepEmbedding& emb, cplx zeta, double tail_eps = 1e-12);
Ket hw_state(const SpacePtr& space, cplx z1, cplx z2, double tail_eps = 1e-12);

// <psi|A psi> / <psi|psi>
cplx expectation(const LinOp& a, const Ket& psi);
// Re(<A^2> - <A>^2); real and nonnegative up to roundoff for self-adjoint A
double variance(const LinOp& a, const Ket& psi);

/* Deterministic tensor-product quadrature: Gauss-Legendre in the radial
 * chart variable u = |zeta|^2/(1+|zeta|^2) (SU2) or u = |zeta|^2 (SU11),
 * uniform in the phase. */
struct QuadratureSpec {
    int radial_nodes = 64;
    int angular_nodes = 64;
    double su11_radial_cutoff = 0.999999; // |zeta| <= cutoff for the disk integral
};

// Gauss-Legendre nodes/weights on [a, b] (Golub-Welsch)
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

/* Quadrature of the rank-one coherent projector against the invariant
 * measure, in irrep-ladder coordinates:
 *   SU2:  (2j+1)/pi  int d2z |z,j><z,j| / (1+|z|^2)^2   over C
 *   SU11: (2k-1)/pi  int d2z |z,k><z,k| / (1-|z|^2)^2   over |z| < cutoff
 */
Mat resolution_matrix(const RepIndex& rep, int ladder_len, const QuadratureSpec& quad);

/* Verifies the quadrature reproduces the identity on the irrep ladder,
 * including a refinement sequence (node doubling for SU2, cutoff tightening
 * for SU11) and, for SU11, the analytic bound on the neglected boundary
 * annulus.  SU11 requires k > 1/2; k <= 1/2 is rejected. */
CheckReport resolution_of_identity_check(const RepIndex& rep, int ladder_len,
                                         const QuadratureSpec& quad, double tol);

} // namespace cohq

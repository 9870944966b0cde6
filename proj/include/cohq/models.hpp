#pragma once

#include <string>
#include <vector>

#include "cohq/fock.hpp"
#include "cohq/report.hpp"

namespace cohq {

/* The three quadratic-constraint models on the two-mode Fock space.
 *
 *   A_OscSum  : phi = hbar (N1 + N2 + 1 - R^2/2hbar)   -> su(2) generators
 *   B_OscDiff : phi = hbar (N1 - N2 - R^2/2hbar)       -> su(1,1) generators
 *   C_Inverted: phi = -(hbar/2)(a1+^2 + a2+^2 + a1^2 + a2^2 + R^2/hbar)
 *                                                      -> su(1,1) generators
 */
enum class Model { A_OscSum, B_OscDiff, C_Inverted };

std::string model_name(Model m);          // "A", "B", "C"
Model model_from_name(const std::string&);

struct ModelSpec {
    Model model = Model::A_OscSum;
    double r_sq = 6.0;  // squared constraint radius, > 0
    double hbar = 1.0;  // > 0
    SpacePtr space;

    void validate() const;
};

enum class RepSeries { SU2, SU11_discrete, SU11_principal };

/* Index of the unitary irreducible representation selected by the constraint:
 * j (SU2), k (SU11 discrete series) or lambda (SU11 principal series).
 * `alternate` marks model B with R^2 < 2 hbar, where a second admissible
 * discrete-series label exists; it is flagged but not resolved. */
struct RepIndex {
    RepSeries series = RepSeries::SU2;
    double value = 0.0;
    bool alternate = false;
};

enum class AlgebraSignature { Compact, NonCompact };

/* Generators (X, Y, Z) closing on:
 *   Compact:     [X,Y] =  i hbar Z,  [Y,Z] = i hbar X,  [Z,X] = i hbar Y
 *   NonCompact:  [X,Y] = -i hbar Z,  [Y,Z] = i hbar X,  [Z,X] = i hbar Y
 */
struct GeneratorTriple {
    LinOp X, Y, Z;
    AlgebraSignature signature = AlgebraSignature::Compact;
};

// self-adjoint constraint operator on spec.space
LinOp build_constraint(const ModelSpec& spec);

// ladder-polynomial generators on spec.space
GeneratorTriple build_generators(const ModelSpec& spec);

// X^2+Y^2+Z^2 (compact) or Z^2-X^2-Y^2 (non-compact)
LinOp casimir(const GeneratorTriple& gen);

// the closed-form Casimir as a function of the constraint:
//   A, B:  (1/4)(phi + R^2/2)^2 - hbar^2/4
//   C:   -( (1/4)(phi + R^2/2)^2 + hbar^2/4 )
LinOp casimir_from_constraint(const ModelSpec& spec, const LinOp& phi);

// scalar Casimir value of the selected irrep:
//   SU2: hbar^2 j(j+1);  SU11 discrete: hbar^2 k(k-1);  principal: -hbar^2(lambda^2 + 1/4)
double rep_casimir_value(const RepIndex& rep, double hbar);

/* Smallest interior margin at which the generator products are exact
 * (no transition reaches across the cutoff). */
int min_margin(Model model, CutoffScheme scheme);

/* Verifies the three structure-constant identities restricted to interior
 * vectors.  margin below min_margin is a usage error unless
 * boundary_expected is set, in which case deviations are reported as
 * informational records instead of failed checks. */
CheckReport check_algebra(const ModelSpec& spec, const GeneratorTriple& gen, int margin,
                          double tol, bool boundary_expected = false);

/* Verifies casimir(gen) == casimir_from_constraint(spec) on interior vectors. */
CheckReport casimir_constraint_identity(const ModelSpec& spec, int margin, double tol);

/* Representation index selected by the constraint; model A raises
 * no_physical_states when R^2/(2 hbar) is not a positive integer
 * (tolerance 1e-9, relative). */
RepIndex rep_index_from_R(const ModelSpec& spec);

/* Basis indices spanning the kernel of the (diagonal) constraint for models
 * A and B, using |diag| <= 1e-9 max(1, max|diag|).  Model C has no discrete
 * kernel and is rejected. */
std::vector<int> constraint_kernel_indices(const ModelSpec& spec);

} // namespace cohq

#pragma once

#include <array>

#include "cohq/models.hpp"
#include "cohq/report.hpp"

namespace cohq {

struct PhasePoint {
    double q1 = 0.0, p1 = 0.0, q2 = 0.0, p2 = 0.0;
};

// Full constraint-surface chart (three parameters). Meaning per model:
//   A: radial = theta,  a1 = phi1, a2 = phi2      (trig chart)
//   B: radial = xi,     a1 = phi1, a2 = phi2      (cosh/sinh radial profile)
//   C: radial = xi,     a1 = eta1, a2 = eta2      (branch 1, 2, or 3)
struct SurfaceChart {
    int branch = 0; // model C only
    double radial = 0.0;
    double a1 = 0.0;
    double a2 = 0.0;
};

// Gauge-invariant chart of the reduced phase space:
//   A: (theta, phi_minus)   B: (xi, phi_plus)   C: (branch, xi, eta)
struct ReducedCoords {
    int branch = 0; // model C only
    double radial = 0.0;
    double angle = 0.0;
};

PhasePoint surface_point(const ModelSpec& spec, const SurfaceChart& chart);

// classical constraint function evaluated off or on the surface
double constraint_residual(const ModelSpec& spec, const PhasePoint& pt);

// classical (X, Y, Z) observable triple for the model's invariance algebra
std::array<double, 3> classical_observables(const ModelSpec& spec, const PhasePoint& pt);

// X^2+Y^2+Z^2 for the compact model, Z^2-X^2-Y^2 for the non-compact ones
double classical_casimir(const ModelSpec& spec, const PhasePoint& pt);

// closed-form Hamiltonian flow of the constraint: paired rotations (A),
// counter-rotations (B), or hyperbolic boosts (C)
PhasePoint gauge_flow(const ModelSpec& spec, const PhasePoint& pt, double lambda);

// the surface chart obtained from reduced coordinates by the standard gauge
// fixing: phi_plus = 0 (A), phi_minus = 0 (B), eta_plus = 0 (C)
SurfaceChart gauge_fixed_chart(const ModelSpec& spec, const ReducedCoords& rc);

// reduced phase space <-> coherent-label disk/sphere chart
cplx reduced_to_coset(const ModelSpec& spec, const ReducedCoords& rc);
ReducedCoords coset_to_reduced(const ModelSpec& spec, cplx label, int branch = 0);

// coherent state at the mapped label vs classical observables at the
// gauge-fixed surface point; asserts the third-component bound and closed-form
// deviation, reports the chart-phase-sensitive components
CheckReport semiclassical_compare(const ModelSpec& spec, const ReducedCoords& rc,
                                  const GeneratorTriple& gen);

// chart/flow/map verification for one model: constraint residuals, flow group
// law, observable invariance, Casimir branch constants, chart<->label
// roundtrips, and (model C) the excluded sign combination
CheckReport classical_maps_report(const ModelSpec& spec, int roundtrip_samples,
                                  int exclusion_samples, unsigned seed);

} // namespace cohq

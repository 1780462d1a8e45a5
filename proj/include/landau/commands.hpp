#pragma once

#include <string>

#include "landau/config.hpp"
#include "landau/quantum_grid.hpp"
#include "landau/report.hpp"

namespace landau {

/// Trajectory equivalence, energy drift, and step-halving convergence at
/// the configured step; writes trajectory and residual CSVs.
Report run_classical_suite(const RunConfig& cfg);

/// Symplectic-form and Kamiltonian residuals at seeded random states.
Report run_canonicity_suite(const RunConfig& cfg);

/// Generating function, orthonormality, eigen-equation, and quadrature
/// sanity checks.
Report run_hermite_suite(const RunConfig& cfg);

/// Rotation closed form against the series oracle over |omega t| <= 4 pi.
Report run_rotation_suite(const RunConfig& cfg);

/// Coefficient tables for one source state over cfg.thetas; writes one
/// JSON table per angle plus the closed-form audit summary.
Report run_coefficients_suite(const RunConfig& cfg, int n, int m);

/// Full entanglement sweep at acceptance scale: totals <= max_total over
/// cfg.thetas with unitarity, leakage, identity, composition and audit.
Report run_entangle_sweep(const RunConfig& cfg, int max_total);

/// Dual-path propagation of one superposition; writes residual, norm and
/// energy time series plus the final density.
Report run_propagate_suite(const RunConfig& cfg, const FockSuperposition& state,
                           double t_end);

/// Stationarity of mapped eigenstate energies; measured values tabulated
/// against the closed-form prediction with the discrepancy reported.
Report run_spectrum_suite(const RunConfig& cfg, int max_total);

/// Unitary-map norm preservation and the dual-path consistency residual
/// with grid refinement: the heavy quantum verification block.
Report run_quantum_suite(const RunConfig& cfg);

/// Everything at desk scale plus the errata table; writes the aggregate
/// report and a human-readable summary.
Report run_report(const RunConfig& cfg);

/// "n1,n2,re[,im];..." with a shared longitudinal wavenumber; throws
/// ConfigError on malformed input.
FockSuperposition parse_state_spec(const std::string& spec, double k);

}  // namespace landau

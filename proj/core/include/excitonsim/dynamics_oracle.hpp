// Time-domain integration of the truncated exciton equations of motion
//
// Independent route to the steady state: the rotating-frame amplitudes X_k and
// Y_pq are propagated from rest until their time derivative vanishes. Two-exciton
// amplitudes are kept per unordered pair p < q, each with its own energy and
// couplings to X_p and X_q; the assembled T matrix of cavity_response is never used.

#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "excitonsim/cavity_response.hpp"
#include "excitonsim/exciton_model.hpp"

namespace excitonsim {

struct RotatingFrameState {
    Eigen::VectorXcd x; // one-exciton amplitudes X_k
    Eigen::MatrixXcd y; // two-exciton amplitudes Y_pq, symmetric, zero diagonal

    static RotatingFrameState zeros(std::size_t n);
};

struct OracleOptions {
    // Adds the source -(g_p X_q + g_q X_p) to dY_pq/dt. It rotates at
    // omega_p - omega_c in this frame and is second order in the probe, so the
    // stationary linear solve leaves it out.
    bool include_probe_bilinear{false};
    double probe_amplitude{1.0};
    double rtol{1e-8};
    double atol{1e-12};
};

struct IntegrationResult {
    RotatingFrameState state;
    double residual{0.0}; // max-norm of the derivative at the final state
    double time{0.0};
    std::size_t steps{0};
    std::size_t rejected{0};
};

// Right-hand side at time t (t only matters for the probe-bilinear source).
RotatingFrameState derivative(const RotatingFrameState& state, const ExcitonBasis& basis,
                              const CavityDrive& drive, double omega_p,
                              const Dephasing& dephasing, const OracleOptions& options = {},
                              double t = 0.0);

// Adaptive Dormand-Prince 5(4) from the zero state until the derivative max-norm
// drops below tol. Throws ConvergenceError, carrying the residual, when t_max
// is reached first.
IntegrationResult integrate_to_steady(const ExcitonBasis& basis, const CavityDrive& drive,
                                      double omega_p, const Dephasing& dephasing, double tol,
                                      double t_max, const OracleOptions& options = {});

// Largest real part among the eigenvalues of the linear generator (X, Y) -> d/dt (X, Y).
double spectral_abscissa(const ExcitonBasis& basis, const CavityDrive& drive, double omega_p,
                         const Dephasing& dephasing);

// max |E_p (g_p X_q + g_q X_p)| / (gamma2 max |Y_pq|): size of the dropped
// probe-bilinear source relative to the two-exciton damping term.
double probe_bilinear_ratio(const RotatingFrameState& state, const ExcitonBasis& basis,
                            const Dephasing& dephasing, double probe_amplitude = 1.0);

} // namespace excitonsim

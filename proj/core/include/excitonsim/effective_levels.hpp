// Four-level effective Hamiltonian of the cavity-dressed band edge
//
// Levels, in the rotating frame of the cavity: |k1>, |k1 k2>, |k2>, |k2 k3>.
// Energies are measured from |k1>.

#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace excitonsim {

struct EffectiveParams {
    double omega12_minus_c{0.0}; // omega_12 - omega_c
    double delta2{0.0};          // omega_2 - omega_1
    double delta23{0.0};         // omega_23 - omega_12
    double omega1{0.0};
    double omega2{0.0};
    double omega3{0.0};
};

// Omega_1 and Omega_3 expressed as fixed fractions of the swept Omega_2.
struct CouplingRatios {
    double omega1_per_omega2{1.0 / 3.0};
    double omega3_per_omega2{1.0 / 9.0};
};

struct EigenTracks {
    std::vector<double> omega2;
    std::vector<std::array<double, 4>> values; // ascending per point
};

Eigen::Matrix4d build_heff(const EffectiveParams& params);

std::array<double, 4> heff_eigenvalues(const EffectiveParams& params);

// Eigenvalues across a sweep of Omega_2, with Omega_1 and Omega_3 following the ratios.
EigenTracks eigen_tracks(const EffectiveParams& base, const CouplingRatios& ratios,
                         std::span<const double> omega2_grid);

// Band-edge four-level case: resonant cavity, degenerate levels, Omega_1 = Omega_2/3 = 3 Omega_3.
EffectiveParams four_level_resonant_template();
CouplingRatios four_level_resonant_ratios();

// Small-aggregate case: Delta_2 = 0.5, Omega_1 = Omega_2/3, Omega_3 = 0 (three coupled levels).
EffectiveParams three_level_detuned_template();
CouplingRatios three_level_detuned_ratios();

} // namespace excitonsim

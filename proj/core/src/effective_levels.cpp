// Four-level effective Hamiltonian of the cavity-dressed band edge

#include "excitonsim/effective_levels.hpp"

#include <algorithm>

#include "excitonsim/errors.hpp"

namespace excitonsim {

Eigen::Matrix4d build_heff(const EffectiveParams& p) {
    Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
    h(1, 1) = p.omega12_minus_c;
    h(2, 2) = p.delta2;
    h(3, 3) = p.omega12_minus_c + p.delta23;
    h(0, 1) = h(1, 0) = p.omega1;
    h(1, 2) = h(2, 1) = p.omega2;
    h(2, 3) = h(3, 2) = p.omega3;
    return h;
}

std::array<double, 4> heff_eigenvalues(const EffectiveParams& params) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(build_heff(params),
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("heff_eigenvalues: eigensolver did not converge");
    }
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) {
        out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

EigenTracks eigen_tracks(const EffectiveParams& base, const CouplingRatios& ratios,
                         std::span<const double> omega2_grid) {
    if (omega2_grid.empty()) {
        throw InputError("eigen_tracks: Omega_2 grid is empty");
    }
    EigenTracks tracks;
    tracks.omega2.assign(omega2_grid.begin(), omega2_grid.end());
    tracks.values.reserve(omega2_grid.size());
    for (const double omega2 : omega2_grid) {
        EffectiveParams p = base;
        p.omega2 = omega2;
        p.omega1 = ratios.omega1_per_omega2 * omega2;
        p.omega3 = ratios.omega3_per_omega2 * omega2;
        tracks.values.push_back(heff_eigenvalues(p));
    }
    return tracks;
}

EffectiveParams four_level_resonant_template() { return EffectiveParams{}; }

CouplingRatios four_level_resonant_ratios() { return {1.0 / 3.0, 1.0 / 9.0}; }

EffectiveParams three_level_detuned_template() {
    EffectiveParams p;
    p.delta2 = 0.5;
    return p;
}

CouplingRatios three_level_detuned_ratios() { return {1.0 / 3.0, 0.0}; }

} // namespace excitonsim

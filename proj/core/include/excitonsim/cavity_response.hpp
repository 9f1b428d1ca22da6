// Steady-state probe susceptibility of an aggregate in a driven cavity
//
// The one-exciton coherences X solve (O + 2 A_c^2 T) X = mu, where O holds the
// one-photon detunings and T the two-photon couplings through the two-exciton
// band. The probe susceptibility is chi = sum_k mu_k X_k / i (unit probe field).

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "excitonsim/exciton_model.hpp"

namespace excitonsim {

struct CavityDrive {
    double omega_c{0.0};    // cavity frequency, meV
    double a_c{0.0};        // mean cavity amplitude |<a>|
    double omega_rabi{0.0}; // vacuum Rabi frequency, meV

    void validate() const;
};

struct Dephasing {
    double gamma{26.0};  // one-exciton coherence decay
    double gamma2{26.0}; // two-exciton coherence decay

    void validate() const;
};

struct ProbeGrid {
    std::vector<double> omega_p; // meV, strictly increasing, uniform

    static ProbeGrid uniform(double lo, double hi, std::size_t points);

    std::size_t size() const noexcept { return omega_p.size(); }
    double spacing() const;
    void validate() const;
};

struct PointFailure {
    std::size_t index{0};
    double omega_p{0.0};
    std::string message;
};

struct SpectrumMetadata {
    std::uint64_t seed{0};
    std::size_t realizations{1};
    std::map<std::string, std::string> parameters;
};

struct SpectrumResult {
    std::vector<double> omega_p;
    std::vector<std::complex<double>> chi;
    std::vector<double> absorption;      // Im chi, pointwise
    std::vector<double> absorption_stderr; // ensemble standard error of Im chi; empty for single runs
    std::vector<PointFailure> failures;  // failed points carry NaN chi
    SpectrumMetadata metadata;
};

struct SteadyState {
    Eigen::VectorXcd x;
    std::complex<double> chi;
};

// O_nn = i (omega_p - omega_k[n]) - gamma.
Eigen::VectorXcd build_one_photon(const ExcitonBasis& basis, double omega_p, double gamma);

// Two-photon matrix T. For the bosonic model,
//   T_nn = sum_{j != n} D_nj^2 / (i Delta_nj - gamma2),
//   T_mn = D_nm D_mn / (i Delta_nm - gamma2),
// with D_nm = omega_rabi * mu_two(n, m) / mu_eg and
// Delta_nm = omega_p + omega_c - omega_n - omega_m - 2 u_nm.
// For the hard-core dimer the single state |e1 e2> gives
//   T_mn = D_m D_n / (i Delta_2 - gamma2), D_n = omega_rabi * mu_n / mu_eg.
Eigen::MatrixXcd build_two_photon(const ExcitonBasis& basis, const CavityDrive& drive,
                                  double omega_p, double gamma2);

// M = diag(O) + 2 a_c^2 T. Depends on the drive amplitude only through a_c^2.
Eigen::MatrixXcd build_system_matrix(const ExcitonBasis& basis, const CavityDrive& drive,
                                     double omega_p, const Dephasing& dephasing);

// Reusable solver: caches the drive-dependent couplings so that a sweep only
// rebuilds the frequency-dependent denominators.
class SteadyStateSolver {
public:
    // Reciprocal condition estimates below this are reported as singular.
    static constexpr double kMinRcond = 1e-12;

    SteadyStateSolver(const ExcitonBasis& basis, const CavityDrive& drive,
                      const Dephasing& dephasing);

    Eigen::MatrixXcd two_photon(double omega_p) const;
    Eigen::MatrixXcd system_matrix(double omega_p) const;
    SteadyState solve(double omega_p) const;

    const ExcitonBasis& basis() const noexcept { return basis_; }

private:
    ExcitonBasis basis_;
    CavityDrive drive_;
    Dephasing dephasing_;
    Eigen::MatrixXd pair_energy_;  // omega_n + omega_m + 2 u_nm, or the dimer two-exciton energy
    Eigen::MatrixXd off_diag_num_; // numerators of T_mn
    Eigen::MatrixXd diag_num_;     // D_nj^2 terms summed into T_nn
};

SteadyState solve_steady_state(const ExcitonBasis& basis, const CavityDrive& drive,
                               double omega_p, const Dephasing& dephasing);

// Per-point solve over the grid. Points that fail are recorded in `failures`
// with NaN chi; more than 1% failures raise NumericError. workers = 0 picks
// the hardware concurrency. Output is independent of the worker count.
SpectrumResult sweep_spectrum(const ExcitonBasis& basis, const CavityDrive& drive,
                              const ProbeGrid& grid, const Dephasing& dephasing,
                              std::size_t workers = 1);

// Cavity-free susceptibility sum_k mu_k^2 (-Delta_k + i gamma) / (Delta_k^2 + gamma^2).
std::complex<double> lorentzian_chi(const ExcitonBasis& basis, double omega_p, double gamma);

// Boundary values of |Im chi| must be below this fraction of the peak.
inline constexpr double kSumRuleEdgeFraction = 1e-4;

// Relative deviation of the trapezoid integral of Im chi from N pi mu_eg^2.
// Throws InputError ("grid too narrow") when the edges carry too much weight.
double check_sum_rule(const SpectrumResult& result, std::size_t n_sites, double mu_eg = 1.0);

} // namespace excitonsim

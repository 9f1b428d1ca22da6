// Closed-form dimer susceptibility and resonant absorption minimum
//
// A dimer of polar chromophores in the cavity behaves as a cascaded three-level
// system g -> psi_+ -> e1e2. The cavity dresses the upper transition and opens a
// transparency window for the probe at the one- and two-photon resonances.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace excitonsim {

struct DimerParams {
    double eps1{2250.0};
    double eps2{2250.0};
    double j12{-68.2};
    double u12{-198.0};
    double gamma1{26.0};  // one-exciton coherence decay
    double gamma12{26.0}; // two-exciton coherence decay
    double d12{0.0};      // cavity coupling of psi_+ -> e1e2, meV
    double a_c{0.0};
    double mu1{1.0};      // probe dipole of psi_+
    double mu_eg{1.0};

    void validate() const;
};

struct CauchyWidths {
    double gamma_p{0.0}; // one-exciton shift width, meV
    double gamma_c{0.0}; // two-exciton shift width, meV
};

struct DimerEigens {
    double omega_plus{0.0};  // in-phase state psi_+ = sqrt(a)|e1g2> + sqrt(1-a)|g1e2>
    double omega_minus{0.0};
    double a{0.5};
    double mu_plus{0.0};
    double mu_minus{0.0};
    double omega_two{0.0};   // eps1 + eps2 - |u12|
};

struct MonteCarloEstimate {
    double mean{0.0};
    double std_error{0.0};
};

DimerEigens dimer_eigens(const DimerParams& params);

// chi = i mu1^2 (G12 - i S) / ((i dp - G1)(i S - G12) + 2 D12^2 A_c^2), S = dp + dc.
std::complex<double> chi_dimer(double delta_p, double delta_c, const DimerParams& params);

// Im chi at dp = dc = 0: mu1^2 G12 / (G1 G12 + 2 D12^2 A_c^2).
double a_min_homogeneous(const DimerParams& params);

// Resonant absorption averaged over independent Cauchy one- and two-exciton shifts.
double a_min_cauchy(const DimerParams& params, const CauchyWidths& widths);

// Half width at half maximum of a Gaussian with standard deviation sigma.
double hwhm_from_sigma(double sigma);

// Ensemble mean of the resonant absorption over Gaussian site shifts (d1, d2).
// Probe and cavity stay at the resonances of the disorder-free dimer; each
// realization is re-diagonalized and d12, mu1 scale with its mu_+.
// Realization r uses the keyed stream (seed, r), so the estimate is reproducible.
MonteCarloEstimate a_min_gaussian_mc(const DimerParams& params, double sigma,
                                     std::size_t n_real, std::uint64_t seed);

} // namespace excitonsim

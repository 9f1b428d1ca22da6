// Closed-form dimer susceptibility and resonant absorption minimum

#include "excitonsim/dimer_eit.hpp"

#include <algorithm>
#include <cmath>

#include "excitonsim/disorder_ensemble.hpp"
#include "excitonsim/errors.hpp"

namespace excitonsim {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

} // namespace

void DimerParams::validate() const {
    if (!(gamma1 > 0.0) || !(gamma12 > 0.0)) {
        throw InputError("DimerParams: gamma1 and gamma12 must be > 0");
    }
    if (mu_eg == 0.0) {
        throw InputError("DimerParams: mu_eg must be nonzero");
    }
}

DimerEigens dimer_eigens(const DimerParams& p) {
    const double mean = 0.5 * (p.eps1 + p.eps2);
    const double half_gap = 0.5 * (p.eps1 - p.eps2);
    const double r = std::hypot(half_gap, p.j12);

    DimerEigens out;
    if (r == 0.0) {
        // Degenerate and uncoupled: take the site basis.
        out.a = 1.0;
        out.omega_plus = out.omega_minus = mean;
    } else if (p.j12 <= 0.0) {
        // In-phase combination is the lower state (J-type).
        out.a = 0.5 * (1.0 - half_gap / r);
        out.omega_plus = mean - r;
        out.omega_minus = mean + r;
    } else {
        out.a = 0.5 * (1.0 + half_gap / r);
        out.omega_plus = mean + r;
        out.omega_minus = mean - r;
    }
    out.a = std::clamp(out.a, 0.0, 1.0);
    const double sa = std::sqrt(out.a);
    const double sb = std::sqrt(1.0 - out.a);
    out.mu_plus = p.mu_eg * (sa + sb);
    out.mu_minus = p.mu_eg * (sa - sb);
    out.omega_two = p.eps1 + p.eps2 - std::abs(p.u12);
    return out;
}

std::complex<double> chi_dimer(double delta_p, double delta_c, const DimerParams& p) {
    const double s = delta_p + delta_c;
    const cd numerator = cd(p.gamma12, -s);
    const cd denominator = cd(-p.gamma1, delta_p) * cd(-p.gamma12, s) +
                           2.0 * p.d12 * p.d12 * p.a_c * p.a_c;
    if (denominator == cd(0.0, 0.0)) {
        throw NumericError("chi_dimer: vanishing denominator");
    }
    return kI * (p.mu1 * p.mu1) * numerator / denominator;
}

double a_min_homogeneous(const DimerParams& p) {
    const double dressing = 2.0 * p.d12 * p.d12 * p.a_c * p.a_c;
    return p.mu1 * p.mu1 * p.gamma12 / (p.gamma1 * p.gamma12 + dressing);
}

double a_min_cauchy(const DimerParams& p, const CauchyWidths& w) {
    if (w.gamma_p < 0.0 || w.gamma_c < 0.0) {
        throw InputError("a_min_cauchy: widths must be >= 0");
    }
    const double two_photon = p.gamma12 + w.gamma_p + w.gamma_c;
    const double dressing = 2.0 * p.d12 * p.d12 * p.a_c * p.a_c;
    return p.mu1 * p.mu1 * two_photon / ((p.gamma1 + w.gamma_p) * two_photon + dressing);
}

double hwhm_from_sigma(double sigma) { return sigma * std::sqrt(2.0 * std::log(2.0)); }

MonteCarloEstimate a_min_gaussian_mc(const DimerParams& p, double sigma, std::size_t n_real,
                                     std::uint64_t seed) {
    p.validate();
    if (n_real < 2) {
        throw InputError("a_min_gaussian_mc: n_real must be >= 2");
    }
    const DimerEigens ref = dimer_eigens(p);
    const double omega_p = ref.omega_plus;
    const double omega_c = ref.omega_two - ref.omega_plus;
    const DisorderModel model{sigma, n_real, seed};

    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t r = 0; r < n_real; ++r) {
        const SiteShifts shifts = sample_realization(model, 2, r);
        DimerParams q = p;
        q.eps1 += shifts.d(0);
        q.eps2 += shifts.d(1);
        const DimerEigens e = dimer_eigens(q);
        const double ratio = e.mu_plus / ref.mu_plus;
        q.d12 = p.d12 * ratio;
        q.mu1 = p.mu1 * ratio;
        const double delta_p = omega_p - e.omega_plus;
        const double delta_c = omega_c - (e.omega_two - e.omega_plus);
        const double value = chi_dimer(delta_p, delta_c, q).imag();

        const double delta = value - mean;
        mean += delta / static_cast<double>(r + 1);
        m2 += delta * (value - mean);
    }
    const double n = static_cast<double>(n_real);
    return {mean, std::sqrt(m2 / (n - 1.0) / n)};
}

} // namespace excitonsim

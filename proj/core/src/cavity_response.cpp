// Steady-state probe susceptibility of an aggregate in a driven cavity

#include "excitonsim/cavity_response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "excitonsim/errors.hpp"
#include "excitonsim/parallel.hpp"

namespace excitonsim {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

} // namespace

void CavityDrive::validate() const {
    if (!std::isfinite(omega_c) || !std::isfinite(a_c) || !std::isfinite(omega_rabi)) {
        throw InputError("CavityDrive: fields must be finite");
    }
    if (a_c < 0.0) {
        throw InputError("CavityDrive: a_c must be >= 0");
    }
    if (omega_rabi < 0.0) {
        throw InputError("CavityDrive: omega_rabi must be >= 0");
    }
}

void Dephasing::validate() const {
    if (!(gamma > 0.0) || !(gamma2 > 0.0) || !std::isfinite(gamma) || !std::isfinite(gamma2)) {
        throw InputError("Dephasing: gamma and gamma2 must be finite and > 0");
    }
}

ProbeGrid ProbeGrid::uniform(double lo, double hi, std::size_t points) {
    if (points < 2) {
        throw InputError("ProbeGrid: at least 2 points required");
    }
    if (!(hi > lo)) {
        throw InputError("ProbeGrid: upper bound must exceed lower bound");
    }
    ProbeGrid grid;
    grid.omega_p.resize(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        grid.omega_p[i] = lo + step * static_cast<double>(i);
    }
    grid.omega_p.back() = hi;
    return grid;
}

double ProbeGrid::spacing() const {
    if (omega_p.size() < 2) {
        throw InputError("ProbeGrid: at least 2 points required");
    }
    return (omega_p.back() - omega_p.front()) / static_cast<double>(omega_p.size() - 1);
}

void ProbeGrid::validate() const {
    if (omega_p.size() < 2) {
        throw InputError("ProbeGrid: at least 2 points required");
    }
    const double h = spacing();
    for (std::size_t i = 1; i < omega_p.size(); ++i) {
        const double step = omega_p[i] - omega_p[i - 1];
        if (!std::isfinite(omega_p[i]) || !(step > 0.0)) {
            throw InputError("ProbeGrid: points must be finite and strictly increasing");
        }
        if (std::abs(step - h) > 1e-6 * h) {
            throw InputError("ProbeGrid: spacing must be uniform");
        }
    }
}

Eigen::VectorXcd build_one_photon(const ExcitonBasis& basis, double omega_p, double gamma) {
    const Eigen::Index n = basis.omega_k.size();
    Eigen::VectorXcd o(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        o(k) = cd(-gamma, omega_p - basis.omega_k(k));
    }
    return o;
}

SteadyStateSolver::SteadyStateSolver(const ExcitonBasis& basis, const CavityDrive& drive,
                                     const Dephasing& dephasing)
    : basis_(basis), drive_(drive), dephasing_(dephasing) {
    const Eigen::Index n = basis_.omega_k.size();
    if (basis_.c.rows() != n || basis_.mu_k.size() != n || basis_.mu_two.rows() != n ||
        basis_.u_kp.rows() != n) {
        throw InputError("SteadyStateSolver: inconsistent basis dimensions");
    }
    const double scale = drive_.omega_rabi / basis_.mu_eg;

    pair_energy_.resize(n, n);
    off_diag_num_.resize(n, n);
    diag_num_.resize(n, n);
    if (basis_.two_exciton == TwoExcitonModel::hard_core_dimer) {
        const double e2 = basis_.dimer_two_exciton_energy();
        const Eigen::VectorXd d = scale * basis_.mu_k;
        pair_energy_.setConstant(e2);
        off_diag_num_ = d * d.transpose();
        diag_num_.setZero(); // the diagonal of d d^T already carries D_n^2
    } else {
        const Eigen::MatrixXd d = scale * basis_.mu_two; // D(n, m) = D_{n, nm}
        for (Eigen::Index a = 0; a < n; ++a) {
            for (Eigen::Index b = 0; b < n; ++b) {
                pair_energy_(a, b) = basis_.omega_k(a) + basis_.omega_k(b) + 2.0 * basis_.u_kp(a, b);
            }
        }
        off_diag_num_ = d.cwiseProduct(d.transpose());
        off_diag_num_.diagonal().setZero();
        diag_num_ = d.cwiseAbs2();
        diag_num_.diagonal().setZero(); // j != n
    }
}

Eigen::MatrixXcd SteadyStateSolver::two_photon(double omega_p) const {
    const Eigen::Index n = basis_.omega_k.size();
    Eigen::MatrixXcd t(n, n);
    Eigen::VectorXcd diag = Eigen::VectorXcd::Zero(n);
    const double sum_freq = omega_p + drive_.omega_c;
    const double gamma2 = dephasing_.gamma2;
    for (Eigen::Index col = 0; col < n; ++col) {
        for (Eigen::Index row = 0; row < n; ++row) {
            const double detuning = sum_freq - pair_energy_(row, col);
            const double norm = 1.0 / (detuning * detuning + gamma2 * gamma2);
            const cd inv_den(-gamma2 * norm, -detuning * norm); // 1 / (i detuning - gamma2)
            t(row, col) = off_diag_num_(row, col) * inv_den;
            diag(row) += diag_num_(row, col) * inv_den;
        }
    }
    t.diagonal() += diag;
    return t;
}

Eigen::MatrixXcd SteadyStateSolver::system_matrix(double omega_p) const {
    const Eigen::Index n = basis_.omega_k.size();
    const double coupling = 2.0 * drive_.a_c * drive_.a_c;
    Eigen::MatrixXcd m = coupling != 0.0 ? Eigen::MatrixXcd(coupling * two_photon(omega_p))
                                         : Eigen::MatrixXcd::Zero(n, n);
    m.diagonal() += build_one_photon(basis_, omega_p, dephasing_.gamma);
    return m;
}

SteadyState SteadyStateSolver::solve(double omega_p) const {
    const Eigen::MatrixXcd m = system_matrix(omega_p);
    const Eigen::VectorXcd rhs = basis_.mu_k.cast<cd>();

    SteadyState out;
    if (drive_.a_c == 0.0) {
        out.x = rhs.cwiseQuotient(m.diagonal());
    } else {
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
        const double rcond = lu.rcond();
        if (!(rcond >= kMinRcond)) {
            std::ostringstream msg;
            msg << "steady-state system is singular or ill-conditioned (rcond " << rcond
                << ") at omega_p = " << omega_p << " meV";
            throw NumericError(msg.str(), omega_p);
        }
        out.x = lu.solve(rhs);
    }
    if (!out.x.allFinite()) {
        std::ostringstream msg;
        msg << "steady-state solve produced non-finite values at omega_p = " << omega_p << " meV";
        throw NumericError(msg.str(), omega_p);
    }
    out.chi = basis_.mu_k.cast<cd>().dot(out.x) / kI;
    return out;
}

Eigen::MatrixXcd build_two_photon(const ExcitonBasis& basis, const CavityDrive& drive,
                                  double omega_p, double gamma2) {
    return SteadyStateSolver(basis, drive, Dephasing{1.0, gamma2}).two_photon(omega_p);
}

Eigen::MatrixXcd build_system_matrix(const ExcitonBasis& basis, const CavityDrive& drive,
                                     double omega_p, const Dephasing& dephasing) {
    return SteadyStateSolver(basis, drive, dephasing).system_matrix(omega_p);
}

SteadyState solve_steady_state(const ExcitonBasis& basis, const CavityDrive& drive,
                               double omega_p, const Dephasing& dephasing) {
    drive.validate();
    dephasing.validate();
    return SteadyStateSolver(basis, drive, dephasing).solve(omega_p);
}

SpectrumResult sweep_spectrum(const ExcitonBasis& basis, const CavityDrive& drive,
                              const ProbeGrid& grid, const Dephasing& dephasing,
                              std::size_t workers) {
    grid.validate();
    drive.validate();
    dephasing.validate();
    const SteadyStateSolver solver(basis, drive, dephasing);

    const std::size_t points = grid.size();
    SpectrumResult result;
    result.omega_p = grid.omega_p;
    result.chi.assign(points, cd(std::numeric_limits<double>::quiet_NaN(),
                                 std::numeric_limits<double>::quiet_NaN()));
    std::vector<std::string> errors(points);

    parallel_for(points, workers, [&](std::size_t i) {
        try {
            result.chi[i] = solver.solve(grid.omega_p[i]).chi;
        } catch (const NumericError& e) {
            errors[i] = e.what();
        }
    });

    for (std::size_t i = 0; i < points; ++i) {
        if (!errors[i].empty()) {
            result.failures.push_back({i, grid.omega_p[i], std::move(errors[i])});
        }
    }
    if (result.failures.size() * 100 > points) {
        std::ostringstream msg;
        msg << "sweep_spectrum: " << result.failures.size() << " of " << points
            << " grid points failed; first: " << result.failures.front().message;
        throw NumericError(msg.str(), result.failures.front().omega_p);
    }

    result.absorption.resize(points);
    std::transform(result.chi.begin(), result.chi.end(), result.absorption.begin(),
                   [](const cd& z) { return z.imag(); });
    return result;
}

std::complex<double> lorentzian_chi(const ExcitonBasis& basis, double omega_p, double gamma) {
    cd acc{0.0, 0.0};
    for (Eigen::Index k = 0; k < basis.omega_k.size(); ++k) {
        const double delta = omega_p - basis.omega_k(k);
        const double weight = basis.mu_k(k) * basis.mu_k(k) / (delta * delta + gamma * gamma);
        acc += weight * cd(-delta, gamma);
    }
    return acc;
}

double check_sum_rule(const SpectrumResult& result, std::size_t n_sites, double mu_eg) {
    ProbeGrid grid{result.omega_p};
    grid.validate();
    if (result.absorption.size() != grid.size()) {
        throw InputError("check_sum_rule: absorption length does not match the grid");
    }
    if (!result.failures.empty() ||
        std::any_of(result.absorption.begin(), result.absorption.end(),
                    [](double v) { return !std::isfinite(v); })) {
        throw InputError("check_sum_rule: spectrum has gaps");
    }
    const auto& a = result.absorption;
    const double peak = *std::max_element(a.begin(), a.end());
    const double edge = std::max(std::abs(a.front()), std::abs(a.back()));
    if (!(peak > 0.0) || edge >= kSumRuleEdgeFraction * peak) {
        std::ostringstream msg;
        msg << "check_sum_rule: grid too narrow (edge |Im chi| = " << edge << ", peak = " << peak
            << ")";
        throw InputError(msg.str());
    }

    const double h = grid.spacing();
    double integral = 0.5 * (a.front() + a.back());
    for (std::size_t i = 1; i + 1 < a.size(); ++i) {
        integral += a[i];
    }
    integral *= h;
    const double expected = static_cast<double>(n_sites) * std::numbers::pi * mu_eg * mu_eg;
    return std::abs(integral - expected) / expected;
}

} // namespace excitonsim

// Frenkel-exciton Hamiltonian of a 1D aggregate and its eigenbasis

#include "excitonsim/exciton_model.hpp"

#include <cmath>
#include <string>

#include "excitonsim/errors.hpp"

namespace excitonsim {

namespace {

constexpr double kZeroColumnSum = 1e-10;

void require_square(const Eigen::MatrixXd& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw InputError(std::string(what) + ": expected a non-empty square matrix");
    }
}

} // namespace

void AggregateSpec::validate() const {
    if (n_sites < 2) {
        throw InputError("AggregateSpec: n_sites must be >= 2");
    }
    if (!(gamma > 0.0)) {
        throw InputError("AggregateSpec: gamma must be > 0");
    }
    if (!std::isfinite(omega_e) || !std::isfinite(j_nn) || !std::isfinite(u_nn) ||
        !std::isfinite(mu_eg)) {
        throw InputError("AggregateSpec: energies and mu_eg must be finite");
    }
    if (mu_eg == 0.0) {
        throw InputError("AggregateSpec: mu_eg must be nonzero");
    }
    if (two_exciton == TwoExcitonModel::hard_core_dimer && n_sites != 2) {
        throw InputError("AggregateSpec: hard_core_dimer requires n_sites == 2");
    }
}

double ExcitonBasis::dimer_two_exciton_energy() const {
    if (site_energies.size() != 2) {
        throw InputError("dimer_two_exciton_energy: basis is not a dimer");
    }
    return site_energies(0) + site_energies(1) - std::abs(u_site(0, 1));
}

Eigen::MatrixXd site_coupling_matrix(std::size_t n_sites, double nearest_neighbor,
                                     CouplingRange range) {
    const auto n = static_cast<Eigen::Index>(n_sites);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const auto r = static_cast<double>(j - i);
            double value = 0.0;
            if (range == CouplingRange::full_dipole) {
                value = nearest_neighbor / (r * r * r);
            } else if (j - i == 1) {
                value = nearest_neighbor;
            }
            m(i, j) = value;
            m(j, i) = value;
        }
    }
    return m;
}

Eigen::MatrixXd build_site_hamiltonian(const AggregateSpec& spec, const SiteShifts& shifts) {
    spec.validate();
    if (static_cast<std::size_t>(shifts.d.size()) != spec.n_sites) {
        throw InputError("build_site_hamiltonian: shifts length " +
                         std::to_string(shifts.d.size()) + " != n_sites " +
                         std::to_string(spec.n_sites));
    }
    Eigen::MatrixXd h = site_coupling_matrix(spec.n_sites, spec.j_nn, spec.coupling_range);
    h.diagonal() = Eigen::VectorXd::Constant(shifts.d.size(), spec.omega_e) + shifts.d;
    return h;
}

Eigenpairs diagonalize(const Eigen::MatrixXd& h) {
    require_square(h, "diagonalize");
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw InputError("diagonalize: matrix is not symmetric");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) {
        throw NumericError("diagonalize: symmetric eigensolver did not converge");
    }

    Eigenpairs out{solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) {
        auto column = out.vectors.col(k);
        const double sum = column.sum();
        bool flip = false;
        if (std::abs(sum) > kZeroColumnSum) {
            flip = sum < 0.0;
        } else {
            for (Eigen::Index i = 0; i < column.size(); ++i) {
                if (std::abs(column(i)) > kZeroColumnSum) {
                    flip = column(i) < 0.0;
                    break;
                }
            }
        }
        if (flip) {
            column = -column;
        }
    }
    return out;
}

Eigen::VectorXd transition_dipoles(const Eigen::MatrixXd& c, double mu_eg) {
    require_square(c, "transition_dipoles");
    return mu_eg * c.colwise().sum().transpose();
}

Eigen::MatrixXd one_to_two_dipoles(const Eigen::MatrixXd& c, double mu_eg) {
    const Eigen::VectorXd mu = transition_dipoles(c, mu_eg);
    const Eigen::Index n = mu.size();
    // Row k holds mu_k(q) for every q; the diagonal picks up a second mu_k(k).
    Eigen::MatrixXd out = mu.transpose().replicate(n, 1);
    out.diagonal() += mu;
    return out;
}

Eigen::MatrixXd one_to_two_dipoles_double_sum(const Eigen::MatrixXd& c, double mu_eg) {
    require_square(c, "one_to_two_dipoles_double_sum");
    const Eigen::Index n = c.rows();
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index q = 0; q < n; ++q) {
            double acc = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                for (Eigen::Index j = 0; j < n; ++j) {
                    acc += c(i, k) * c(j, k) * c(i, q) + c(i, k) * c(i, k) * c(j, q);
                }
            }
            out(k, q) = mu_eg * acc;
        }
    }
    return out;
}

Eigen::MatrixXd scattering_potential(const Eigen::MatrixXd& c, const Eigen::MatrixXd& u_site) {
    require_square(c, "scattering_potential");
    if (u_site.rows() != c.rows() || u_site.cols() != c.cols()) {
        throw InputError("scattering_potential: U matrix shape does not match c");
    }
    const Eigen::MatrixXd weights = c.cwiseAbs2();
    Eigen::MatrixXd u_kp = weights.transpose() * u_site * weights;
    // Symmetrize exactly; the product is symmetric only up to rounding.
    u_kp = 0.5 * (u_kp + u_kp.transpose()).eval();
    return u_kp;
}

Eigen::MatrixXd scattering_potential(const Eigen::MatrixXd& c, const AggregateSpec& spec) {
    return scattering_potential(
        c, site_coupling_matrix(static_cast<std::size_t>(c.rows()), spec.u_nn, spec.coupling_range));
}

ExcitonBasis build_basis(const Eigen::MatrixXd& h, const Eigen::MatrixXd& u_site, double mu_eg,
                         TwoExcitonModel two_exciton) {
    require_square(h, "build_basis");
    if (u_site.rows() != h.rows() || u_site.cols() != h.cols()) {
        throw InputError("build_basis: U matrix shape does not match the Hamiltonian");
    }
    if (two_exciton == TwoExcitonModel::hard_core_dimer && h.rows() != 2) {
        throw InputError("build_basis: hard_core_dimer requires a 2x2 Hamiltonian");
    }
    Eigenpairs eig = diagonalize(h);

    ExcitonBasis basis;
    basis.omega_k = std::move(eig.values);
    basis.c = std::move(eig.vectors);
    basis.mu_k = transition_dipoles(basis.c, mu_eg);
    basis.mu_two = one_to_two_dipoles(basis.c, mu_eg);
    basis.u_kp = scattering_potential(basis.c, u_site);
    basis.site_energies = h.diagonal();
    basis.u_site = u_site;
    basis.mu_eg = mu_eg;
    basis.two_exciton = two_exciton;
    return basis;
}

ExcitonBasis build_basis(const AggregateSpec& spec, const SiteShifts& shifts) {
    const Eigen::MatrixXd h = build_site_hamiltonian(spec, shifts);
    return build_basis(h, site_coupling_matrix(spec.n_sites, spec.u_nn, spec.coupling_range),
                       spec.mu_eg, spec.two_exciton);
}

} // namespace excitonsim

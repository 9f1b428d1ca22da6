// Frenkel-exciton Hamiltonian of a 1D aggregate and its eigenbasis
//
// Energies are in meV with hbar = 1. Site dipoles are parallel, so every
// basis-dependent dipole is a plain real number in units of mu_eg.

#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace excitonsim {

enum class CouplingRange {
    nearest_neighbor, // only |i - j| = 1 couplings
    full_dipole,      // couplings fall off as 1/|i - j|^3 from the nearest-neighbor value
};

// How the two-exciton manifold is represented.
enum class TwoExcitonModel {
    bosonic,         // symmetrized products |k q> of one-exciton eigenstates
    hard_core_dimer, // N = 2 only: the single doubly excited state |e1 e2>
};

struct AggregateSpec {
    std::size_t n_sites{2};
    double omega_e{2250.0}; // gas-phase transition energy
    double j_nn{-68.2};     // nearest-neighbor transition-dipole (Forster) coupling
    double u_nn{-198.0};    // nearest-neighbor permanent-dipole coupling
    CouplingRange coupling_range{CouplingRange::nearest_neighbor};
    double gamma{26.0};     // one-exciton coherence decay rate
    double mu_eg{1.0};      // single-molecule transition dipole
    TwoExcitonModel two_exciton{TwoExcitonModel::bosonic};

    // Throws InputError when an invariant is violated.
    void validate() const;
};

// Static site-energy offsets d_i; site energies are omega_e + d_i.
struct SiteShifts {
    Eigen::VectorXd d;

    static SiteShifts zeros(std::size_t n) { return {Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n))}; }
};

struct Eigenpairs {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXd vectors; // orthonormal columns, column sums >= 0
};

struct ExcitonBasis {
    Eigen::VectorXd omega_k;  // one-exciton energies, ascending
    Eigen::MatrixXd c;        // c(i, k): amplitude of eigenstate k on site i
    Eigen::VectorXd mu_k;     // ground -> one-exciton dipoles
    Eigen::MatrixXd mu_two;   // mu_two(k, q) = <k|mu|kq>
    Eigen::MatrixXd u_kp;     // exciton-basis scattering potential
    Eigen::VectorXd site_energies;
    Eigen::MatrixXd u_site;   // site-basis permanent-dipole couplings (zero diagonal)
    double mu_eg{1.0};
    TwoExcitonModel two_exciton{TwoExcitonModel::bosonic};

    std::size_t size() const noexcept { return static_cast<std::size_t>(omega_k.size()); }

    // Energy of |e1 e2> for the hard-core dimer: eps1 + eps2 - |U12|.
    double dimer_two_exciton_energy() const;
};

// Off-diagonal site couplings with the given nearest-neighbor value.
Eigen::MatrixXd site_coupling_matrix(std::size_t n_sites, double nearest_neighbor,
                                     CouplingRange range);

Eigen::MatrixXd build_site_hamiltonian(const AggregateSpec& spec, const SiteShifts& shifts);

// Symmetric eigensolve with the deterministic sign convention sum_i c(i, k) >= 0.
// Columns whose sum vanishes (within 1e-10) get their first nonzero entry positive.
Eigenpairs diagonalize(const Eigen::MatrixXd& h);

Eigen::VectorXd transition_dipoles(const Eigen::MatrixXd& c, double mu_eg);

// mu_two(k, q) = mu_eg * sum_ij (c_ik c_jk c_iq + c_ik c_ik c_jq), using the
// orthonormality shortcut mu_two(k, q) = mu_k(q) + delta_kq mu_k(k).
Eigen::MatrixXd one_to_two_dipoles(const Eigen::MatrixXd& c, double mu_eg);

// Same quantity evaluated as the literal O(N^4) double sum. Used for cross-checks.
Eigen::MatrixXd one_to_two_dipoles_double_sum(const Eigen::MatrixXd& c, double mu_eg);

// u_kp = sum_ij U_ij |c_ik|^2 |c_jp|^2.
Eigen::MatrixXd scattering_potential(const Eigen::MatrixXd& c, const AggregateSpec& spec);
Eigen::MatrixXd scattering_potential(const Eigen::MatrixXd& c, const Eigen::MatrixXd& u_site);

// Full basis for an aggregate realization.
ExcitonBasis build_basis(const AggregateSpec& spec, const SiteShifts& shifts);

// Basis from an explicit site Hamiltonian and site U matrix. Accepts any N >= 1,
// which the small-system oracles use.
ExcitonBasis build_basis(const Eigen::MatrixXd& h, const Eigen::MatrixXd& u_site,
                         double mu_eg = 1.0,
                         TwoExcitonModel two_exciton = TwoExcitonModel::bosonic);

} // namespace excitonsim

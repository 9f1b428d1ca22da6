#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "excitonsim/errors.hpp"
#include "excitonsim/exciton_model.hpp"
#include "oracles.hpp"

using namespace excitonsim;

namespace {

AggregateSpec chain(std::size_t n, double j = -68.2) {
    AggregateSpec spec;
    spec.n_sites = n;
    spec.j_nn = j;
    return spec;
}

// Random orthogonal matrix from the eigenvectors of a random symmetric matrix.
Eigen::MatrixXd random_orthogonal(std::size_t n, std::mt19937_64& gen) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = normal(gen);
    return diagonalize(0.5 * (a + a.transpose())).vectors;
}

} // namespace

TEST(SiteHamiltonian, DimerMatrix) {
    const Eigen::MatrixXd h = build_site_hamiltonian(chain(2), SiteShifts::zeros(2));
    EXPECT_DOUBLE_EQ(h(0, 0), 2250.0);
    EXPECT_DOUBLE_EQ(h(1, 1), 2250.0);
    EXPECT_DOUBLE_EQ(h(0, 1), -68.2);
    EXPECT_DOUBLE_EQ(h(1, 0), -68.2);
}

TEST(SiteHamiltonian, DecoupledSitesCarryShifts) {
    SiteShifts d{Eigen::Vector3d(1.0, 2.0, 3.0)};
    const Eigen::MatrixXd h = build_site_hamiltonian(chain(3, 0.0), d);
    EXPECT_TRUE(h.isApprox(Eigen::Vector3d(2251, 2252, 2253).asDiagonal().toDenseMatrix()));
}

TEST(SiteHamiltonian, FullDipoleFallsOffAsInverseCube) {
    AggregateSpec spec = chain(4);
    spec.coupling_range = CouplingRange::full_dipole;
    const Eigen::MatrixXd h = build_site_hamiltonian(spec, SiteShifts::zeros(4));
    EXPECT_DOUBLE_EQ(h(0, 2), -8.525);
    EXPECT_DOUBLE_EQ(h(0, 3), -68.2 / 27.0);
    EXPECT_TRUE(h.isApprox(h.transpose()));
}

TEST(SiteHamiltonian, ShiftLengthMismatchIsInputError) {
    EXPECT_THROW(build_site_hamiltonian(chain(4), SiteShifts::zeros(3)), InputError);
}

TEST(AggregateSpec, RejectsBadInvariants) {
    AggregateSpec spec = chain(1);
    EXPECT_THROW(spec.validate(), InputError);
    spec = chain(4);
    spec.gamma = 0.0;
    EXPECT_THROW(spec.validate(), InputError);
    spec = chain(4);
    spec.two_exciton = TwoExcitonModel::hard_core_dimer;
    EXPECT_THROW(spec.validate(), InputError);
}

TEST(Diagonalize, HomogeneousDimer) {
    const Eigenpairs e = diagonalize(build_site_hamiltonian(chain(2), SiteShifts::zeros(2)));
    EXPECT_NEAR(e.values(0), 2250.0 - 68.2, 1e-10);
    EXPECT_NEAR(e.values(1), 2250.0 + 68.2, 1e-10);
    EXPECT_NEAR(e.vectors(0, 0), 1.0 / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(e.vectors(1, 0), 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(Diagonalize, DiagonalInputGivesIdentity) {
    const Eigenpairs e = diagonalize(Eigen::Vector3d(1, 2, 3).asDiagonal().toDenseMatrix());
    EXPECT_TRUE(e.values.isApprox(Eigen::Vector3d(1, 2, 3)));
    EXPECT_TRUE(e.vectors.isApprox(Eigen::Matrix3d::Identity()));
}

TEST(Diagonalize, RejectsNonSymmetric) {
    Eigen::Matrix2d h;
    h << 1.0, 0.5, 0.4, 1.0;
    EXPECT_THROW(diagonalize(h), InputError);
}

TEST(Diagonalize, OpenChainMatchesClosedForm) {
    for (std::size_t n : {2u, 6u, 100u}) {
        const Eigenpairs e = diagonalize(build_site_hamiltonian(chain(n), SiteShifts::zeros(n)));
        for (std::size_t k = 1; k <= n; ++k) {
            const double exact = oracle::open_chain_energy(n, 2250.0, -68.2, k);
            EXPECT_LT(std::abs(e.values(k - 1) - exact) / exact, 1e-8) << "n=" << n << " k=" << k;
        }
    }
    // Eigenvectors, including the sign convention, for the N = 100 chain.
    constexpr std::size_t n = 100;
    const Eigenpairs e = diagonalize(build_site_hamiltonian(chain(n), SiteShifts::zeros(n)));
    double worst = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t i = 1; i <= n; ++i)
            worst = std::max(worst, std::abs(e.vectors(i - 1, k - 1) -
                                             oracle::open_chain_amplitude(n, i, k)));
    EXPECT_LT(worst, 1e-8);
}

TEST(Diagonalize, OrthogonalUpTo512Sites) {
    for (std::size_t n : {2u, 64u, 512u}) {
        const Eigenpairs e = diagonalize(build_site_hamiltonian(chain(n), SiteShifts::zeros(n)));
        const Eigen::MatrixXd residual =
            e.vectors.transpose() * e.vectors - Eigen::MatrixXd::Identity(n, n);
        EXPECT_LT(residual.cwiseAbs().maxCoeff(), 1e-10) << "n=" << n;
    }
}

TEST(TransitionDipoles, DimerIsBrightAndDark) {
    const ExcitonBasis b = build_basis(chain(2), SiteShifts::zeros(2));
    EXPECT_NEAR(b.mu_k(0), std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(b.mu_k(1), 0.0, 1e-14);
}

TEST(TransitionDipoles, IdentityGivesUnitDipoles) {
    EXPECT_TRUE(transition_dipoles(Eigen::MatrixXd::Identity(4, 4), 1.0)
                    .isApprox(Eigen::VectorXd::Ones(4)));
}

TEST(TransitionDipoles, BandEdgeOfLongChain) {
    constexpr std::size_t n = 100;
    const ExcitonBasis b = build_basis(chain(n), SiteShifts::zeros(n));
    const double analytic = oracle::open_chain_dipole(n, 1);
    EXPECT_NEAR(b.mu_k(0), analytic, 1e-9);
    // (2 / (N+1)) cot^2(pi / (2(N+1))) -> 8 (N+1) / pi^2 ~ 0.81 (N+1)
    EXPECT_NEAR(analytic * analytic / (n + 1), 8.0 / (M_PI * M_PI), 1e-3);
}

TEST(TransitionDipoles, SumRuleUnderRandomDisorder) {
    std::mt19937_64 gen(11);
    std::normal_distribution<double> normal(0.0, 15.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial) * 5;
        AggregateSpec spec = chain(n);
        spec.mu_eg = 1.3;
        SiteShifts d = SiteShifts::zeros(n);
        for (Eigen::Index i = 0; i < d.d.size(); ++i) d.d(i) = normal(gen);
        const ExcitonBasis b = build_basis(spec, d);
        const double expected = n * spec.mu_eg * spec.mu_eg;
        EXPECT_LT(std::abs(b.mu_k.squaredNorm() - expected) / expected, 1e-10);
    }
}

TEST(OneToTwoDipoles, IdentityBasis) {
    const Eigen::MatrixXd m = one_to_two_dipoles(Eigen::MatrixXd::Identity(3, 3), 1.0);
    for (int k = 0; k < 3; ++k)
        for (int q = 0; q < 3; ++q) EXPECT_DOUBLE_EQ(m(k, q), k == q ? 2.0 : 1.0);
}

TEST(OneToTwoDipoles, DoubleSumMatchesShortcutOnRandomOrthogonal) {
    std::mt19937_64 gen(5);
    for (std::size_t n : {2u, 3u, 5u, 8u, 13u}) {
        const Eigen::MatrixXd c = random_orthogonal(n, gen);
        const Eigen::MatrixXd raw = one_to_two_dipoles_double_sum(c, 0.7);
        const Eigen::MatrixXd fast = one_to_two_dipoles(c, 0.7);
        EXPECT_LT((raw - fast).cwiseAbs().maxCoeff(), 1e-10) << "n=" << n;
        const Eigen::VectorXd mu = transition_dipoles(c, 0.7);
        for (Eigen::Index k = 0; k < c.cols(); ++k) {
            EXPECT_NEAR(raw(k, k), 2.0 * mu(k), 1e-10);
            for (Eigen::Index q = 0; q < c.cols(); ++q)
                if (q != k) EXPECT_NEAR(raw(k, q), mu(q), 1e-10);
        }
    }
}

TEST(ScatteringPotential, HomogeneousDimerIsUniform) {
    const ExcitonBasis b = build_basis(chain(2), SiteShifts::zeros(2));
    EXPECT_TRUE(b.u_kp.isApprox(Eigen::Matrix2d::Constant(-99.0), 1e-12));
}

TEST(ScatteringPotential, ZeroCouplingGivesZero) {
    AggregateSpec spec = chain(5);
    spec.u_nn = 0.0;
    EXPECT_EQ(build_basis(spec, SiteShifts::zeros(5)).u_kp.cwiseAbs().maxCoeff(), 0.0);
}

TEST(ScatteringPotential, IdentityBasisReturnsSiteMatrix) {
    AggregateSpec spec = chain(4);
    spec.coupling_range = CouplingRange::full_dipole;
    const Eigen::MatrixXd site = site_coupling_matrix(4, spec.u_nn, spec.coupling_range);
    EXPECT_TRUE(scattering_potential(Eigen::MatrixXd::Identity(4, 4), spec).isApprox(site));
}

TEST(ScatteringPotential, SymmetricWithExpectedRowSums) {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> normal(0.0, 10.0);
    AggregateSpec spec = chain(12);
    spec.coupling_range = CouplingRange::full_dipole;
    SiteShifts d = SiteShifts::zeros(12);
    for (Eigen::Index i = 0; i < d.d.size(); ++i) d.d(i) = normal(gen);
    const ExcitonBasis b = build_basis(spec, d);
    EXPECT_EQ((b.u_kp - b.u_kp.transpose()).cwiseAbs().maxCoeff(), 0.0);
    // sum_p u_kp = sum_ij U_ij |c_ik|^2, since sum_p |c_jp|^2 = 1.
    for (Eigen::Index k = 0; k < 12; ++k) {
        double expected = 0.0;
        for (Eigen::Index i = 0; i < 12; ++i)
            for (Eigen::Index j = 0; j < 12; ++j)
                expected += b.u_site(i, j) * b.c(i, k) * b.c(i, k);
        EXPECT_NEAR(b.u_kp.row(k).sum(), expected, 1e-10);
    }
}

TEST(Basis, SmallNFromExplicitMatrices) {
    Eigen::MatrixXd h(1, 1);
    h << 2000.0;
    const ExcitonBasis b = build_basis(h, Eigen::MatrixXd::Zero(1, 1));
    EXPECT_EQ(b.size(), 1u);
    EXPECT_DOUBLE_EQ(b.mu_k(0), 1.0);
    EXPECT_DOUBLE_EQ(b.mu_two(0, 0), 2.0);
}

TEST(Basis, HardCoreDimerTwoExcitonEnergy) {
    AggregateSpec spec = chain(2);
    spec.two_exciton = TwoExcitonModel::hard_core_dimer;
    SiteShifts d{Eigen::Vector2d(3.0, -1.0)};
    const ExcitonBasis b = build_basis(spec, d);
    EXPECT_DOUBLE_EQ(b.dimer_two_exciton_energy(), 2253.0 + 2249.0 - 198.0);
}

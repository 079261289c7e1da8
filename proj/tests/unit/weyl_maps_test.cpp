#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "mf/errors.hpp"
#include "mf/models.hpp"
#include "mf/star.hpp"
#include "mf/susy_ladder.hpp"
#include "mf/weyl_maps.hpp"
#include "support/oracles.hpp"

namespace {

using namespace mf;
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

Wavefunction coherent(const PhaseGrid& g, double x0, double p0 = 0.0) {
    const double h = g.hbar();
    return Wavefunction::sample(g, [=](double x) {
               return std::exp(-(x - x0) * (x - x0) / (2 * h) + kI * p0 * x / h);
           })
        .normalized();
}

class WeylMaps : public ::testing::Test {
protected:
    PhaseGrid g = make_grid(128, -10, 10, 1);
    SymbolField p0 = oracle::sho_reference(0, g);
    SymbolField p1 = oracle::sho_reference(1, g);
};

TEST_F(WeylMaps, GroundStateWigner) {
    const SymbolField w = wigner_from_wavefunction(coherent(g, 0.0));
    EXPECT_LE(sup_diff(w, p0), 1e-8);
    EXPECT_TRUE(w.real_valued(1e-12));
    EXPECT_NEAR(integrate2d(w).real(), 1.0, 1e-8);
    EXPECT_NE(w.kernel(), nullptr);
}

TEST_F(WeylMaps, MarginalsReproduceDensities) {
    const Wavefunction psi = coherent(g, 0.7, -0.4);
    const Marginals m = marginals(wigner_from_wavefunction(psi));
    double ex = 0, ep = 0;
    for (int k = 0; k < g.n(); ++k) {
        ex = std::max(ex, std::abs(m.x[k] - std::norm(psi.values()[k])));
        // |ψ̃(p)|² of the coherent state: Gaussian centred at p0.
        const double dp = g.p(k) + 0.4;
        ep = std::max(ep, std::abs(m.p[k] - std::exp(-dp * dp) / std::sqrt(kPi)));
    }
    EXPECT_LE(ex, 1e-8);
    EXPECT_LE(ep, 1e-8);
}

TEST_F(WeylMaps, LatticeTranslationShiftsRows) {
    const int m = 8;
    const SymbolField a = wigner_from_wavefunction(coherent(g, -0.5));
    const SymbolField b = wigner_from_wavefunction(coherent(g, -0.5 + m * g.dx()));
    double err = 0;
    for (int i = 0; i + m < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j) err = std::max(err, std::abs(b(i + m, j) - a(i, j)));
    EXPECT_LE(err, 1e-14);
}

TEST_F(WeylMaps, LatticeBoostShiftsColumns) {
    const int k = 5;
    const Wavefunction psi = coherent(g, 0.3);
    const Wavefunction boosted(g, [&] {
        Eigen::VectorXcd v = psi.values();
        for (int i = 0; i < g.n(); ++i) v[i] *= std::exp(kI * (k * g.dp()) * g.x(i) / g.hbar());
        return v;
    }());
    const SymbolField a = wigner_from_wavefunction(psi), b = wigner_from_wavefunction(boosted);
    double err = 0;
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j + k < g.n(); ++j) err = std::max(err, std::abs(b(i, j + k) - a(i, j)));
    EXPECT_LE(err, 1e-14);
}

TEST_F(WeylMaps, ConjugationAndParity) {
    const Wavefunction psi = coherent(g, 0.6, 0.9);
    const SymbolField a = wigner_from_wavefunction(psi);
    Eigen::VectorXcd conj = psi.values().conjugate(), refl(g.n());
    for (int i = 0; i < g.n(); ++i) refl[(g.n() - i) % g.n()] = psi.values()[i];
    const SymbolField c = wigner_from_wavefunction(Wavefunction(g, conj));
    const SymbolField r = wigner_from_wavefunction(Wavefunction(g, refl));
    double ec = 0, er = 0;
    const int n = g.n();
    for (int i = 0; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            ec = std::max(ec, std::abs(c(i, n - j) - a(i, j)));
            er = std::max(er, std::abs(r((n - i) % n, n - j) - a(i, j)));
        }
    EXPECT_LE(ec, 1e-14);
    EXPECT_LE(er, 1e-14);
}

TEST_F(WeylMaps, WignerRejectsBadInput) {
    const Wavefunction raw = Wavefunction::sample(g, [](double x) { return cplx(2.0 * std::exp(-x * x)); });
    EXPECT_THROW(wigner_from_wavefunction(raw), ArgumentError);
    const Wavefunction wide = Wavefunction::sample(g, [](double x) { return cplx(std::exp(-x * x / 40)); }).normalized();
    EXPECT_THROW(wigner_from_wavefunction(wide), BoundaryMassError);
}

TEST_F(WeylMaps, IdentityKernel) {
    const KernelMatrix k = symbol_to_kernel(SymbolField::constant(g, 1.0));
    const Eigen::MatrixXcd expect = Eigen::MatrixXcd::Identity(g.n(), g.n()) / g.dx();
    EXPECT_LE((k.entries - expect).cwiseAbs().maxCoeff(), 1e-12 / g.dx());
    const SymbolField back = kernel_to_symbol(KernelMatrix(g, expect));
    EXPECT_LE(sup_diff(back, SymbolField::constant(g, 1.0)), 1e-12);
}

TEST_F(WeylMaps, OscillatorKernelSpectrum) {
    const KernelMatrix k = symbol_to_kernel(sho_hamiltonian(g));
    EXPECT_LE(k.hermiticity_error(), 1e-10);
    const Eigen::MatrixXcd op = k.entries * g.dx();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (op + op.adjoint()));
    EXPECT_NEAR(es.eigenvalues()[0], 1.0, 1e-6);
    EXPECT_NEAR(es.eigenvalues()[1], 3.0, 1e-6);
}

TEST_F(WeylMaps, GroundStateKernelIsProjector) {
    const KernelMatrix k = symbol_to_kernel((2 * kPi) * p0);
    const Eigen::VectorXcd psi = coherent(g, 0.0).values();
    const Eigen::MatrixXcd proj = psi * psi.adjoint();
    EXPECT_LE((k.entries - proj).cwiseAbs().maxCoeff(), 1e-8);
    const SymbolField back = kernel_to_symbol(KernelMatrix(g, proj));
    EXPECT_LE(sup_diff(back, (2 * kPi) * p0), 1e-8);
}

TEST_F(WeylMaps, RoundTripOnDecayingFields) {
    for (const SymbolField& f : {p0, p1, oracle::sho_reference(3, g)}) {
        EXPECT_LE(sup_diff(kernel_to_symbol(symbol_to_kernel(f.without_kernel())), f), 1e-10);
    }
}

TEST(KernelToSymbol, HermitianKernelGivesRealSymbol) {
    const PhaseGrid g = make_grid(8, -4, 4, 1);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n01;
    Eigen::MatrixXcd m(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) m(i, j) = cplx(n01(rng), n01(rng));
    const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
    const SymbolField s = kernel_to_symbol(KernelMatrix(g, herm));
    EXPECT_LE(s.max_abs_imag(), 1e-14 * s.max_abs_real());
}

TEST_F(WeylMaps, Overlaps) {
    EXPECT_NEAR(overlap(p0, p0), 1.0, 1e-10);
    EXPECT_LE(std::abs(overlap(p0, p1)), 1e-8);
    EXPECT_EQ(overlap(p0, SymbolField::zeros(g)), 0.0);
    // |⟨ψ_a|ψ_b⟩|² = e^{−d²/2} for coherent states a distance d apart (ℏ = 1).
    const double d = 1.3;
    const SymbolField a = wigner_from_wavefunction(coherent(g, 0.0)), b = wigner_from_wavefunction(coherent(g, d));
    EXPECT_NEAR(overlap(a, b), std::exp(-d * d / 2), 1e-10);
    EXPECT_NEAR(overlap(a.without_kernel(), b.without_kernel()), std::exp(-d * d / 2), 1e-8);
    EXPECT_THROW(overlap(p0, SymbolField::constant(g, kI)), ArgumentError);
}

TEST(StarEigenResidual, OscillatorAndMorse) {
    const PhaseGrid g = make_grid(256, -12, 12, 1);
    const SymbolField h = sho_hamiltonian(g);
    const SymbolField p5 = oracle::sho_reference(5, g);
    EXPECT_LE(star_eigen_residual(h, p5, 11.0, StarMethod::kernel()), 1e-6);
    EXPECT_GE(star_eigen_residual(h, p5, 12.0, StarMethod::kernel()), 0.99);

    const PhaseGrid gm = make_grid(256, -4, 12, 1);
    const ShapeInvariantModel morse = make_morse_model();
    const SymbolField hm = partner_hamiltonian(morse, morse.a0, gm, Sector::Minus);
    EXPECT_LE(star_eigen_residual(hm, ground_wigner(morse, morse.a0, gm), 0.0, StarMethod::kernel()), 1e-4);
}

class Evolution : public ::testing::Test {
protected:
    PhaseGrid g = make_grid(64, -12, 12, 1);
    SymbolField h = sho_hamiltonian(g);
};

TEST_F(Evolution, EigenstateIsStationary) {
    const SymbolField p = wigner_from_wavefunction(coherent(g, 0.0));
    EXPECT_LE(sup_diff(evolve_step(p, h, 2e-3, StarMethod::kernel()), p), 1e-7);
}

TEST_F(Evolution, ZeroHamiltonianIsIdentity) {
    const SymbolField p = wigner_from_wavefunction(coherent(g, 1.0));
    EXPECT_LE(sup_diff(evolve_step(p, SymbolField::zeros(g), 0.1, StarMethod::kernel()), p), 1e-15);
}

TEST_F(Evolution, DisplacedGaussianRotates) {
    // For quadratic H the Moyal flow is the classical flow: (x, p) rotates at angular rate 2.
    const SymbolField start = wigner_from_wavefunction(coherent(g, 1.0));
    const double dt = 1e-3;
    const int steps = 200;
    const SymbolField end = evolve(start, h, dt, steps, StarMethod::kernel());
    const double t = dt * steps;
    const double xc = std::cos(2 * t), pc = -std::sin(2 * t);
    const SymbolField expect = sample_symbol(g, [&](double x, double p) {
        return cplx(std::exp(-((x - xc) * (x - xc) + (p - pc) * (p - pc))) / kPi, 0.0);
    });
    EXPECT_LE(sup_diff(end, expect), 1e-8);
    EXPECT_LE(end.max_abs_imag(), 1e-10);
    EXPECT_NEAR(integrate2d(end).real(), 1.0, 1e-8);
    EXPECT_NEAR(overlap(end, end), 1.0, 1e-8);
}

TEST_F(Evolution, StabilityGuard) {
    const SymbolField p = wigner_from_wavefunction(coherent(g, 0.0));
    const double rho = liouvillian_radius(h);
    EXPECT_GT(rho, 0.0);
    EXPECT_THROW(evolve_step(p, h, 0.6 / rho, StarMethod::kernel()), ArgumentError);
    EXPECT_NO_THROW(evolve_step(p, h, 0.4 / rho, StarMethod::kernel()));
}

}  // namespace

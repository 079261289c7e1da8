#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "mf/errors.hpp"
#include "mf/models.hpp"
#include "mf/spectral.hpp"
#include "mf/star.hpp"
#include "mf/susy_ladder.hpp"
#include "mf/weyl_maps.hpp"
#include "support/oracles.hpp"

namespace {

using namespace mf;
constexpr double kPi = std::numbers::pi;

TEST(Laguerre, MatchesExplicitSum) {
    EXPECT_EQ(laguerre(0, 3.7), 1.0);
    EXPECT_DOUBLE_EQ(laguerre(1, 3.0), -2.0);
    for (int n : {2, 5, 12, 30})
        for (double t : {0.0, 0.4, 2.5, 9.0}) {
            // The explicit sum cancels; Σ|terms| = L_n(−t) sets its rounding scale.
            const double scale = oracle::laguerre_sum(n, -t);
            EXPECT_NEAR(laguerre(n, t), oracle::laguerre_sum(n, t), 1e-14 * scale) << "n=" << n << " t=" << t;
        }
}

TEST(Laguerre, SolvesItsDifferentialEquation) {
    const double h = 1e-3;
    for (double t : {0.3, 1.1, 2.7, 4.2}) {
        const double d1 = (laguerre(2, t + h) - laguerre(2, t - h)) / (2 * h);
        const double d2 = (laguerre(2, t + h) - 2 * laguerre(2, t) + laguerre(2, t - h)) / (h * h);
        EXPECT_NEAR(t * d2 + (1 - t) * d1 + 2 * laguerre(2, t), 0.0, 1e-9);
    }
}

TEST(Laguerre, HighOrderStaysFiniteAndBounded) {
    // |e^{−t/2} L_n(t)| ≤ 1 for t ≥ 0.
    for (double t : {0.5, 10.0, 50.0, 120.0}) EXPECT_LE(std::abs(std::exp(-t / 2) * laguerre(64, t)), 1.0 + 1e-9);
    EXPECT_THROW(laguerre(65, 1.0), ArgumentError);
    EXPECT_THROW(laguerre(-1, 1.0), ArgumentError);
}

TEST(ShoEnergy, Levels) {
    EXPECT_DOUBLE_EQ(sho_energy({1.0}, 0), 1.0);
    EXPECT_DOUBLE_EQ(sho_energy({1.0}, 5), 11.0);
    for (int n = 0; n < 6; ++n) EXPECT_DOUBLE_EQ(sho_energy({2.0}, n), 2 * sho_energy({1.0}, n));
    EXPECT_THROW(sho_energy({1.0}, -1), ArgumentError);
}

class ShoWigner : public ::testing::Test {
protected:
    PhaseGrid g = make_grid(128, -10, 10, 1);
};

TEST_F(ShoWigner, MatchesReferenceAndNormalized) {
    for (int n = 0; n <= 6; ++n) {
        const SymbolField w = sho_wigner({1.0}, n, g);
        EXPECT_LE(sup_diff(w, oracle::sho_reference(n, g)), 1e-12) << n;
        EXPECT_NEAR(integrate2d(w).real(), 1.0, 1e-8) << n;
    }
}

TEST_F(ShoWigner, OriginValuesAlternate) {
    const int c = g.n() / 2;
    ASSERT_DOUBLE_EQ(g.x(c), 0.0);
    ASSERT_DOUBLE_EQ(g.p(c), 0.0);
    for (int n = 0; n <= 5; ++n) EXPECT_NEAR(sho_wigner({1.0}, n, g)(c, c).real(), (n % 2 ? -1.0 : 1.0) / kPi, 1e-15);
}

TEST_F(ShoWigner, SymmetricUnderRelabeling) {
    // x and p share the node set only when dx = dp, i.e. L² = 2πℏ n.
    const PhaseGrid sq = make_grid(64, -std::sqrt(32 * kPi), std::sqrt(32 * kPi), 1);
    ASSERT_NEAR(sq.dx(), sq.dp(), 1e-14);
    const SymbolField w = sho_wigner({1.0}, 3, sq);
    double err = 0;
    for (int i = 0; i < sq.n(); ++i)
        for (int j = 0; j < sq.n(); ++j) err = std::max(err, std::abs(w(i, j) - w(j, i)));
    EXPECT_LE(err, 1e-15);
}

TEST(ShoWignerProperties, Orthonormal) {
    const PhaseGrid g = make_grid(256, -12, 12, 1);
    std::vector<SymbolField> ws;
    for (int n = 0; n <= 5; ++n) ws.push_back(sho_wigner({1.0}, n, g));
    for (int n = 0; n <= 5; ++n)
        for (int m = 0; m <= 5; ++m) EXPECT_NEAR(overlap(ws[n], ws[m]), n == m ? 1.0 : 0.0, 1e-7) << n << "," << m;
}

TEST(ShoWignerProperties, RadialEquation) {
    const PhaseGrid g = make_grid(256, -12, 12, 1);
    const SymbolField h = sho_hamiltonian(g);
    for (int n : {0, 2, 5}) {
        const SymbolField w = sho_wigner({1.0}, n, g);
        const SymbolField lap = spectral::derivative(w, 2, 0) + spectral::derivative(w, 0, 2);
        const SymbolField r = pointwise(h, w) - 0.25 * lap - sho_energy({1.0}, n) * w;
        EXPECT_LE(sup_norm(r), 1e-5) << n;
    }
}

TEST(ShoWignerProperties, StarEigenAtLevelFive) {
    const PhaseGrid g = make_grid(256, -12, 12, 1);
    EXPECT_LE(star_eigen_residual(sho_hamiltonian(g), sho_wigner({1.0}, 5, g), 11.0, StarMethod::kernel()), 1e-6);
}

TEST(ShoWignerProperties, OtherHbar) {
    const PhaseGrid g = make_grid(128, -8, 8, 0.5);
    const SymbolField w = sho_wigner({0.5}, 2, g);
    EXPECT_NEAR(integrate2d(w).real(), 1.0, 1e-8);
    EXPECT_LE(star_eigen_residual(sho_hamiltonian(g), w, sho_energy({0.5}, 2), StarMethod::kernel()), 1e-6);
}

TEST(BesselK, KnownValues) {
    EXPECT_NEAR(bessel_k_imag(0.0, 1.0), 0.42102443824070834, 1e-12);
    EXPECT_NEAR(bessel_k_imag(0.0, 0.1), 2.4270690247020166, 1e-10);
    EXPECT_NEAR(bessel_k(1.0, 1.0).real(), 0.60190723019723457, 1e-12);
    EXPECT_NEAR(bessel_k(2.0, 2.0).real(), 0.25375975456605586, 1e-12);
    // K_{1/2}(y) = √(π/2y) e^{−y}.
    for (double y : {0.3, 1.0, 4.0}) EXPECT_NEAR(bessel_k(0.5, y).real(), std::sqrt(kPi / (2 * y)) * std::exp(-y), 1e-12);
}

TEST(BesselK, LargeArgumentAsymptotics) {
    const double y = 30.0;
    const double lead = std::sqrt(kPi / (2 * y)) * std::exp(-y);
    // Hankel series for ν = 0: Σ_k (−1)^k [(1·3·…·(2k−1))²] / (k! (8y)^k).
    double series = 0, term = 1;
    for (int k = 0; k < 6; ++k) {
        series += term;
        term *= -((2.0 * k + 1) * (2.0 * k + 1)) / ((k + 1) * 8 * y);
    }
    const double ratio = bessel_k_imag(0.0, y) / lead;
    EXPECT_NEAR(ratio, series, 1e-9);
    EXPECT_NEAR(ratio, 1.0, 1.0 / (8 * y) + 1e-4);
}

TEST(BesselK, RecurrenceInArgument) {
    // 2 ∂_y K_ν + K_{ν−1} + K_{ν+1} = 0 at imaginary ν.
    const double h = 1e-3;
    for (double nu : {0.0, 0.7, 3.0, 10.0})
        for (double y : {0.2, 1.0, 3.5}) {
            const cplx o(0.0, nu);
            auto k = [&](double yy) { return bessel_k(o, yy); };
            const cplx dk = (-k(y + 2 * h) + 8.0 * k(y + h) - 8.0 * k(y - h) + k(y - 2 * h)) / (12 * h);
            const cplx lhs = 2.0 * dk + bessel_k(o - 1.0, y) + bessel_k(o + 1.0, y);
            EXPECT_LE(std::abs(lhs), 1e-7) << "nu=" << nu << " y=" << y;
        }
}

TEST(BesselK, ImaginaryOrderIsRealAndEven) {
    for (double nu : {0.5, 4.0, 25.0})
        for (double y : {0.05, 1.0, 8.0}) {
            const cplx z = bessel_k(cplx(0.0, nu), y);
            EXPECT_NEAR(z.imag(), 0.0, 1e-14);
            EXPECT_EQ(bessel_k_imag(nu, y), bessel_k_imag(-nu, y));
            EXPECT_NEAR(bessel_k_imag(nu, y), z.real(), 1e-10 * std::max(1.0, std::abs(z)));
            const cplx a = bessel_k(cplx(1.0, nu), y), b = bessel_k(cplx(1.0, -nu), y);
            EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-12 * std::abs(a));
        }
}

TEST(BesselK, Errors) {
    EXPECT_THROW(bessel_k_imag(0.0, 0.0), ArgumentError);
    EXPECT_THROW(bessel_k_imag(0.0, -1.0), ArgumentError);
    EXPECT_THROW(bessel_k_imag(201.0, 1.0), ArgumentError);
    EXPECT_THROW(bessel_k(1.0, 0.0), ArgumentError);
}

TEST(CosineTransformRow, AgreesWithBessel) {
    const double y = 0.7;
    const std::vector<double> mu = {0.0, 0.5, 2.0, 6.0};
    const std::vector<double> row = cosine_transform_row([&](double t) { return std::exp(-y * std::cosh(t)); }, y, mu);
    ASSERT_EQ(row.size(), mu.size());
    for (std::size_t k = 0; k < mu.size(); ++k) EXPECT_NEAR(row[k], bessel_k_imag(mu[k], y), 1e-10);
    EXPECT_THROW(cosine_transform_row([](double) { return 1.0; }, 0.0, mu), ArgumentError);
}

TEST(MorseEnergy, Levels) {
    const MorseModel m{5, 1, 1};
    EXPECT_EQ(morse_n_bound(m), 4);
    EXPECT_EQ(morse_energy(m, 0), 0.0);
    EXPECT_EQ(morse_energy(m, 4), 24.0);
    EXPECT_THROW(morse_energy(m, 5), ArgumentError);
    EXPECT_EQ(morse_n_bound({4.5, 1, 1}), 4);
    EXPECT_EQ(morse_n_bound({3.0, 1, 0.5}), 5);
    EXPECT_THROW(validate({5, -1, 1}), ArgumentError);
}

class Morse : public ::testing::Test {
protected:
    PhaseGrid g = make_grid(256, -4, 12, 1);
    MorseModel m{5, 1, 1};
    ShapeInvariantModel model = make_morse_model(5, 1, 1);
};

TEST_F(Morse, GroundStateNormalizationAndMarginal) {
    const MorseGroundState p0 = morse_p0(m, g);
    EXPECT_NEAR(integrate2d(p0.field).real(), 1.0, 1e-12);
    EXPECT_TRUE(p0.field.real_valued(1e-12));
    EXPECT_GT(p0.normalization, 0.0);
    EXPECT_DOUBLE_EQ(p0.reference_c1, morse_reference_c1(m));
    EXPECT_DOUBLE_EQ(p0.ratio_to_reference, p0.normalization / p0.reference_c1);

    // |ψ₀|² ∝ e^{−10x} e^{−2e^{−x}}, normalized on the lattice.
    std::vector<double> rho(g.n());
    double total = 0;
    for (int i = 0; i < g.n(); ++i) {
        rho[i] = std::exp(-10 * g.x(i) - 2 * std::exp(-g.x(i)));
        total += rho[i] * g.dx();
    }
    const Marginals mg = marginals(p0.field);
    double peak = 0, err = 0;
    for (double r : rho) peak = std::max(peak, r / total);
    for (int i = 0; i < g.n(); ++i) {
        const double expect = rho[i] / total;
        if (expect > 1e-3 * peak) err = std::max(err, std::abs(mg.x[i] - expect) / expect);
    }
    EXPECT_LE(err, 1e-5);
}

TEST_F(Morse, GroundStateIsAnnihilatedAndEvenInMomentum) {
    const SymbolField p0 = morse_p0(m, g).field;
    EXPECT_LE(annihilation_residual(model, model.a0, p0), 1e-4);
    const int n = g.n();
    for (int i = 0; i < n; ++i)
        for (int j = 1; j < n; ++j) ASSERT_EQ(p0(i, j), p0(i, n - j)) << i << "," << j;
}

TEST_F(Morse, GroundStateReferenceRatioReported) {
    const MorseGroundState p0 = morse_p0(m, g);
    EXPECT_TRUE(std::isfinite(p0.ratio_to_reference));
    // The ratio is a property of the model, not of the lattice.
    const MorseGroundState fine = morse_p0(m, make_grid(512, -4, 12, 1));
    EXPECT_NEAR(fine.ratio_to_reference / p0.ratio_to_reference, 1.0, 1e-6);
}

TEST_F(Morse, FirstExcitedMatchesLadder) {
    const MorseFirstExcited p1 = morse_p1(m, g);
    EXPECT_NEAR(integrate2d(p1.field).real(), 1.0, 1e-12);
    const WignerSequence seq = build_wigner_sequence(model, g, 1);
    EXPECT_LE(sup_diff(p1.field, seq.fields[1]), 1e-3);
    const SymbolField h = partner_hamiltonian(model, model.a0, g, Sector::Minus);
    EXPECT_LE(star_eigen_residual(h, p1.field, 9.0, StarMethod::kernel()), 1e-3);
    const int n = g.n();
    double odd = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 1; j < n; ++j) odd = std::max(odd, std::abs(p1.field(i, j) - p1.field(i, n - j)));
    EXPECT_LE(odd, 1e-14);
}

TEST_F(Morse, FirstExcitedPreconditions) {
    EXPECT_THROW(morse_p1({1.0, 1.0, 1.0}, g), ArgumentError);
    EXPECT_THROW(morse_p1(m, make_grid(64, -4, 12, 0.5)), ArgumentError);
}

}  // namespace

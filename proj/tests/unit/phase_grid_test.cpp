#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "mf/errors.hpp"
#include "mf/phase_grid.hpp"
#include "support/oracles.hpp"

namespace {

using namespace mf;
constexpr double kPi = std::numbers::pi;

SymbolField gaussian(const PhaseGrid& g) {
    return sample_symbol(g, [](double x, double p) { return cplx(std::exp(-(x * x + p * p)) / kPi, 0.0); });
}

TEST(MakeGrid, SpacingFromConjugacy) {
    const PhaseGrid g = make_grid(8, -4, 4, 1);
    EXPECT_DOUBLE_EQ(g.dx(), 1.0);
    EXPECT_NEAR(g.dp(), 0.7853981634, 1e-10);
    EXPECT_NEAR(make_grid(256, -8, 8, 1).dp(), 0.3926990817, 1e-10);
}

TEST(MakeGrid, MomentumAxisSymmetric) {
    const PhaseGrid g = make_grid(16, -3, 5, 0.5);
    EXPECT_DOUBLE_EQ(g.p(8), 0.0);
    EXPECT_DOUBLE_EQ(g.p(1), -g.p(15));
    EXPECT_DOUBLE_EQ(g.x(0), -3.0);
}

TEST(MakeGrid, ConjugacyIdentityAcrossGrids) {
    for (int n : {8, 64, 1024})
        for (double h : {0.01, 1.0, 3.0}) {
            const PhaseGrid g = make_grid(n, -2.5, 7.0, h);
            EXPECT_NEAR(g.dx() * g.dp() * n, 2 * kPi * h, 1e-14 * 2 * kPi * h);
        }
}

TEST(MakeGrid, RejectsBadSpecifications) {
    EXPECT_THROW(make_grid(8, 4, -4, 1), ArgumentError);
    EXPECT_THROW(make_grid(8, 1, 1, 1), ArgumentError);
    EXPECT_THROW(make_grid(12, -4, 4, 1), ArgumentError);
    EXPECT_THROW(make_grid(4, -4, 4, 1), ArgumentError);
    EXPECT_THROW(make_grid(8, -4, 4, 0), ArgumentError);
    EXPECT_THROW(make_grid(8, -4, 4, -1), ArgumentError);
}

TEST(SampleSymbol, ValuesAtNodes) {
    const PhaseGrid g = make_grid(256, -8, 8, 1);
    const SymbolField h = sample_symbol(g, [](double x, double p) { return cplx(p * p + x * x, 0.0); });
    for (int i : {0, 17, 128, 255})
        for (int j : {0, 100, 128, 200}) EXPECT_DOUBLE_EQ(h(i, j).real(), g.p(j) * g.p(j) + g.x(i) * g.x(i));

    const SymbolField ones = sample_symbol(make_grid(8, -4, 4, 1), [](double, double) { return cplx(1.0); });
    for (const cplx& v : ones.values()) EXPECT_EQ(v, cplx(1.0));
}

TEST(SampleSymbol, NonFiniteValueNamesNode) {
    const PhaseGrid g = make_grid(8, -4, 4, 1);
    try {
        sample_symbol(g, [](double x, double) { return x > 1.5 ? cplx(std::nan("")) : cplx(0.0); });
        FAIL() << "expected an error";
    } catch (const ArgumentError& e) {
        EXPECT_NE(std::string(e.what()).find("node (6, 0)"), std::string::npos) << e.what();
    }
}

TEST(Integrate2d, GaussianIsNormalized) {
    EXPECT_NEAR(integrate2d(gaussian(make_grid(256, -8, 8, 1))).real(), 1.0, 1e-10);
}

TEST(Integrate2d, ConstantGivesArea) {
    const PhaseGrid g = make_grid(8, -4, 4, 1);
    EXPECT_NEAR(integrate2d(SymbolField::constant(g, 1.0)).real(), 8 * 2 * kPi, 1e-12);
}

TEST(Integrate2d, OddFunctionVanishes) {
    const PhaseGrid g = make_grid(128, -6, 6, 1);
    const SymbolField f = sample_symbol(g, [](double x, double p) { return cplx(x * std::exp(-x * x - p * p)); });
    EXPECT_NEAR(std::abs(integrate2d(f)), 0.0, 1e-12);
}

TEST(Integrate2d, Linear) {
    const PhaseGrid g = make_grid(64, -5, 5, 1);
    const SymbolField a = gaussian(g);
    const SymbolField b = sample_symbol(g, [](double x, double p) { return cplx(std::exp(-(x - 1) * (x - 1) - p * p), x); });
    const cplx alpha(2.0, -1.0), beta(-0.5, 3.0);
    const cplx lhs = integrate2d(alpha * a + beta * b);
    const cplx rhs = alpha * integrate2d(a) + beta * integrate2d(b);
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::abs(rhs));
}

TEST(Integrate2d, MatchesPlainLatticeSum) {
    const SymbolField f = gaussian(make_grid(32, -4, 4, 0.5));
    EXPECT_NEAR(std::abs(integrate2d(f) - oracle::lattice_sum(f)), 0.0, 1e-14);
}

TEST(Marginals, GaussianProjections) {
    const PhaseGrid g = make_grid(256, -8, 8, 1);
    const Marginals m = marginals(gaussian(g));
    double ex = 0, ep = 0, total = 0;
    for (int k = 0; k < g.n(); ++k) {
        ex = std::max(ex, std::abs(m.x[k] - std::exp(-g.x(k) * g.x(k)) / std::sqrt(kPi)));
        ep = std::max(ep, std::abs(m.p[k] - std::exp(-g.p(k) * g.p(k)) / std::sqrt(kPi)));
        total += m.x[k] * g.dx();
    }
    EXPECT_LE(ex, 1e-8);
    EXPECT_LE(ep, 1e-8);
    EXPECT_NEAR(total, 1.0, 1e-8);
}

TEST(Marginals, ZeroFieldAndComplexRejection) {
    const PhaseGrid g = make_grid(8, -4, 4, 1);
    const Marginals m = marginals(SymbolField::zeros(g));
    for (double v : m.x) EXPECT_EQ(v, 0.0);
    for (double v : m.p) EXPECT_EQ(v, 0.0);
    EXPECT_THROW(marginals(SymbolField::constant(g, cplx(0.0, 1.0))), ArgumentError);
}

TEST(BoundaryMass, FrameRatio) {
    const PhaseGrid g = make_grid(64, -8, 8, 1);
    EXPECT_LT(boundary_mass(gaussian(g)), 1e-20);
    EXPECT_DOUBLE_EQ(boundary_mass(SymbolField::constant(g, 2.0)), 1.0);
    EXPECT_EQ(boundary_mass(SymbolField::zeros(g)), 0.0);
}

}  // namespace

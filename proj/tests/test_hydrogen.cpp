// Hydrogen bound-state data and the Laguerre pseudo-spectrum.
//
// Reference values:
//   A(3P->1S) = 1.6725e8 s^-1, A(3P->2S) = 0.2245e8 s^-1 (quoted branching
//   rates); A(2P->1S) = 6.2649e8 s^-1 (Lyman-alpha); radial integrals
//   <1s|r|2p> = 1.29027, <1s|r|3p> = 0.516689 (Gordon formula values);
//   TRK sum rule = 1 exactly.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mollow/hydrogen.hpp"

using namespace mollow;

namespace {
const AtomicLevel k1S(1, 0, 1);
const AtomicLevel k2S(2, 0, 1);
const AtomicLevel k2P(2, 1, 1);
const AtomicLevel k3PHalf(3, 1, 1);
const AtomicLevel k3PThreeHalf(3, 1, 3);

double trkResidual(int N, double scale = 0.5) {
    auto b0 = RadialBasis::build(0, N, scale);
    auto b1 = RadialBasis::build(1, N, scale);
    auto dip = RadialBasis::pseudoStateDipole(b0, b1);
    double trk = 0.0;
    for (int b = 0; b < N; ++b) {
        const double dE = b1.energies()[b] - b0.energies()[0];
        trk += (2.0 / 3.0) * dE * dip(0, b) * dip(0, b);
    }
    return std::abs(trk - 1.0);
}
} // namespace

TEST_CASE("level energies follow -Z^2/(2 n^2)") {
    CHECK(levelEnergy(k1S) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(levelEnergy(k3PHalf) == doctest::Approx(-1.0 / 18.0).epsilon(1e-15));
    CHECK(levelEnergy(k2S) == doctest::Approx(-0.125).epsilon(1e-15));
    CHECK(levelEnergy(2, 1, 2) == doctest::Approx(-0.5).epsilon(1e-15));  // Z = 2
    CHECK_THROWS_AS(levelEnergy(1, 1), std::domain_error);
    CHECK_THROWS_AS(levelEnergy(0, 0), std::domain_error);
    CHECK_THROWS_AS(AtomicLevel(2, 1, 5), std::domain_error);
}

TEST_CASE("labels") {
    CHECK(k1S.label() == "1S");
    CHECK(k3PHalf.label() == "3P_1/2");
    CHECK(k3PThreeHalf.label() == "3P_3/2");
}

TEST_CASE("transition frequencies carry the reduced-mass factor") {
    PhysicalConstants c;
    const double w13 = transitionFrequency(k1S, k3PHalf, c);
    // oracle: direct arithmetic on the defining formula
    const double expected13 =
        kTwoPi * c.rydbergFrequencyHz * (8.0 / 9.0) / (1.0 + c.electronProtonMassRatio);
    CHECK(w13 == doctest::Approx(expected13).epsilon(1e-14));
    CHECK(w13 == doctest::Approx(kTwoPi * 2.9227e15).epsilon(1e-4));

    CHECK(transitionFrequency(k1S, k1S, c) == 0.0);
    CHECK(transitionFrequency(k3PHalf, k1S, c) == doctest::Approx(-w13).epsilon(1e-14));

    const double w23 = transitionFrequency(k2S, k3PHalf, c);
    const double expected23 =
        kTwoPi * c.rydbergFrequencyHz * (0.25 - 1.0 / 9.0) / (1.0 + c.electronProtonMassRatio);
    CHECK(w23 == doctest::Approx(expected23).epsilon(1e-14));
    CHECK(w23 == doctest::Approx(kTwoPi * 4.566738e14).epsilon(1e-5));
}

TEST_CASE("dipole parity selection rules are exact") {
    CHECK(dipoleMatrixElement(k1S, k1S) == 0.0);
    CHECK(dipoleMatrixElement(k1S, k2S) == 0.0);  // delta-l = 0 forbidden
    CHECK(dipoleMatrixElement(k2P, k3PHalf) == 0.0);
}

TEST_CASE("radial dipole integrals match the closed-form values") {
    CHECK(radialDipoleIntegral(1, 0, 2, 1) == doctest::Approx(1.29027).epsilon(1e-4));
    CHECK(radialDipoleIntegral(1, 0, 3, 1) == doctest::Approx(0.516689).epsilon(1e-4));
    // z-projection for m = 0 carries 1/sqrt(3)
    CHECK(dipoleMatrixElement(k1S, k3PHalf) ==
          doctest::Approx(0.516689 / std::sqrt(3.0)).epsilon(1e-4));
}

TEST_CASE("Einstein A coefficients reproduce the quoted branching rates") {
    CHECK(einsteinA(k3PHalf, k1S) == doctest::Approx(1.6725e8).epsilon(1e-3));
    CHECK(einsteinA(k3PHalf, k2S) == doctest::Approx(0.2245e8).epsilon(1e-3));
    CHECK(einsteinA(k2P, k1S) == doctest::Approx(6.2649e8).epsilon(1e-3));
    CHECK(einsteinA(k2S, k1S) == 0.0);  // dipole-forbidden, metastable
    CHECK_THROWS_AS(einsteinA(k1S, k3PHalf), std::domain_error);
}

TEST_CASE("A reconstructed from the z matrix element; sign-invariant") {
    PhysicalConstants c;
    const double z = dipoleMatrixElement(k1S, k3PHalf);
    const double omega = levelEnergy(k3PHalf) - levelEnergy(k1S);
    const double alpha3 = c.alpha * c.alpha * c.alpha;
    // p -> s: line strength = 3 z^2, averaged over the 3 upper sublevels
    auto rate = [&](double dip) {
        return (4.0 / 3.0) * alpha3 * omega * omega * omega * dip * dip *
               kHartreePerSecond;
    };
    CHECK(rate(z) == doctest::Approx(1.6725e8).epsilon(1e-3));
    CHECK(rate(-z) == doctest::Approx(rate(z)).epsilon(1e-15));
    CHECK(rate(z) == doctest::Approx(einsteinA(k3PHalf, k1S)).epsilon(1e-12));
}

TEST_CASE("pseudo-spectrum reproduces bound Coulomb energies to 1e-8") {
    for (int l : {0, 1, 2}) {
        auto basis = RadialBasis::build(l, 60, 0.5);
        for (int n = std::max(1, l + 1); n <= 4; ++n) {
            const double exact = -0.5 / (n * n);
            CHECK(basis.energies()[n - l - 1] ==
                  doctest::Approx(exact).epsilon(1e-8));
        }
    }
}

TEST_CASE("pseudo-state eigenvectors are orthonormal to 1e-10") {
    auto basis = RadialBasis::build(1, 60, 0.5);
    auto ov = basis.overlap();
    double worst = 0.0;
    for (int i = 0; i < basis.size(); ++i)
        for (int j = 0; j < basis.size(); ++j)
            worst = std::max(worst, std::abs(ov(i, j) - (i == j ? 1.0 : 0.0)));
    CHECK(worst < 1e-10);
}

TEST_CASE("TRK sum rule within 1e-3 at N = 60") {
    CHECK(trkResidual(60) < 1e-3);
}

TEST_CASE("TRK residual trend over the basis ladder") {
    double previous = trkResidual(20);
    for (int N : {40, 60, 80}) {
        const double current = trkResidual(N);
        CHECK(current < 10.0 * previous);  // enlarging N never ruins the residual
        previous = current;
    }
}

TEST_CASE("basis construction rejects invalid parameters") {
    CHECK_THROWS_AS(RadialBasis::build(0, 5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(RadialBasis::build(0, 40, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(RadialBasis::build(-1, 40, 0.5), std::invalid_argument);
    auto a = RadialBasis::build(0, 20, 0.5);
    auto b = RadialBasis::build(2, 20, 0.5);
    CHECK_THROWS_AS(RadialBasis::radialDipole(a, b), std::invalid_argument);
}

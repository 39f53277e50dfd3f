#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mollow {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reference values (CODATA 2018) plus the nuclear charge. All frequencies
/// derived here are gross-structure; fine structure and Lamb shifts enter
/// as explicit tabulated inputs elsewhere.
struct PhysicalConstants {
    double alpha = 7.2973525693e-3;           // fine-structure constant
    double rydbergFrequencyHz = 3.2898419602508e15;  // R_inf * c  [Hz]
    double electronProtonMassRatio = 5.44617021487e-4;  // m_e / m_p
    int Z = 1;

    void validate() const {
        if (Z < 1) throw std::invalid_argument("PhysicalConstants: Z must be >= 1");
        if (std::abs(alpha * 137.036 - 1.0) > 1e-3)
            throw std::invalid_argument("PhysicalConstants: alpha far from 1/137.036");
    }

    double zAlphaSquared() const { return (Z * alpha) * (Z * alpha); }
    /// 1 / (1 + m_e/m_p), multiplies gross-structure transition frequencies.
    double reducedMassFactor() const { return 1.0 / (1.0 + electronProtonMassRatio); }
};

// Atomic units. Energies are in hartree, lengths in bohr; angular rates in
// s^-1 are obtained by dividing energies by hbar (i.e. by the atomic time).
inline constexpr double kAtomicTimeSeconds = 2.4188843265857e-17;
inline constexpr double kHartreePerSecond = 1.0 / kAtomicTimeSeconds;  // E_h/hbar in s^-1
inline constexpr double kIntensityAuPerWcm2 = 1.0 / 3.50944758e16;    // a.u. per W/cm^2

/// kHz(x) = x / (2 pi 10^3) for an angular rate x in s^-1.
inline double angularToKilohertz(double angularRate) {
    return angularRate / (kTwoPi * 1.0e3);
}

inline double kilohertzToAngular(double kilohertz) {
    return kilohertz * kTwoPi * 1.0e3;
}

inline double atomicEnergyToAngular(double hartree) {
    return hartree * kHartreePerSecond;
}

inline double intensityWcm2ToAtomic(double wattsPerCm2) {
    return wattsPerCm2 * kIntensityAuPerWcm2;
}

} // namespace mollow

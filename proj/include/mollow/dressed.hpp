#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mollow/units.hpp"

namespace mollow {

/// Laser drive on the 1S <-> 3P_j transition. All rates are angular (s^-1);
/// the reference width gamma is the 3P -> 1S partial decay rate.
struct DriveConfig {
    double rabi = 0.0;      // Omega
    double detuning = 0.0;  // Delta = w_L - w_R
    double gamma = 0.0;     // Gamma, 3P -> 1S channel
    double omegaR = 0.0;    // transition frequency
    int twoJ = 1;           // 2j of the 3P level: 1 or 3

    void validate() const;
    /// Secular-regime and hierarchy warnings (Omega >> Gamma,
    /// Omega, |Delta| << w_R); empty when the drive is comfortably inside.
    std::vector<std::string> warnings() const;
};

/// sqrt(Omega^2 + Delta^2), the uncorrected sideband displacement.
inline double generalizedRabi(const DriveConfig& drive) {
    return std::hypot(drive.rabi, drive.detuning);
}

/// Sideband offsets from the laser frequency: (-Omega_R, +Omega_R).
inline std::pair<double, double> sidebandPositions(const DriveConfig& drive) {
    const double omegaR = generalizedRabi(drive);
    return {-omegaR, +omegaR};
}

/// Rabi frequency from a macroscopic field amplitude (convention
/// E(t) = ampl * cos(w t), so Omega = |d * ampl| with the per-photon field
/// matched through 2 sqrt(n) E_per_photon -> ampl).
struct RabiConversion {
    double rabi = 0.0;              // angular s^-1
    double conventionFactor = 1.0;  // Omega / (d * ampl); 1 in this convention
};
RabiConversion rabiFromMacroscopicField(double dipoleAu, double fieldAmplitudeAu);

/// Field amplitude (a.u.) that produces a given Rabi frequency; the inverse
/// of rabiFromMacroscopicField for experiment-design output.
double fieldForRabi(double dipoleAu, double rabiAngular);

} // namespace mollow

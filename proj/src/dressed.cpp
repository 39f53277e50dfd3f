#include "mollow/dressed.hpp"

#include <sstream>
#include <stdexcept>

namespace mollow {

void DriveConfig::validate() const {
    if (!(rabi > 0.0)) throw std::invalid_argument("DriveConfig: Omega must be > 0");
    if (!(gamma > 0.0)) throw std::invalid_argument("DriveConfig: Gamma must be > 0");
    if (!(omegaR > 0.0)) throw std::invalid_argument("DriveConfig: omega_R must be > 0");
    if (twoJ != 1 && twoJ != 3)
        throw std::invalid_argument("DriveConfig: j must be 1/2 or 3/2");
}

std::vector<std::string> DriveConfig::warnings() const {
    std::vector<std::string> w;
    if (rabi < 10.0 * gamma)
        w.push_back("Omega < 10 Gamma: secular expansion in (Gamma/Omega)^2 is marginal");
    if (rabi / omegaR > 1e-2)
        w.push_back("Omega/omega_R > 1e-2: expansion in Omega/omega_R is marginal");
    if (std::abs(detuning) / omegaR > 1e-2)
        w.push_back("|Delta|/omega_R > 1e-2: expansion in Delta/omega_R is marginal");
    return w;
}

RabiConversion rabiFromMacroscopicField(double dipoleAu, double fieldAmplitudeAu) {
    if (fieldAmplitudeAu < 0.0)
        throw std::invalid_argument("rabiFromMacroscopicField: amplitude must be >= 0");
    RabiConversion c;
    c.rabi = std::abs(dipoleAu) * fieldAmplitudeAu * kHartreePerSecond;
    c.conventionFactor = 1.0;
    return c;
}

double fieldForRabi(double dipoleAu, double rabiAngular) {
    if (dipoleAu == 0.0)
        throw std::invalid_argument("fieldForRabi: dipole moment must be nonzero");
    return rabiAngular / (std::abs(dipoleAu) * kHartreePerSecond);
}

} // namespace mollow

#include "mollow/ac_stark.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace mollow {

StarkShiftResult acStarkShift(const AtomicLevel& state, double omegaL, double intensityAu,
                              const std::vector<RadialBasis>& channels,
                              const PhysicalConstants& consts) {
    constexpr double kResonanceTol = 1e-8;  // hartree

    const RadialBasis own = channels.empty()
                                ? RadialBasis::build(state.l, 40, 0.5, consts.Z)
                                : RadialBasis::build(state.l, channels.front().size(),
                                                     channels.front().scale(),
                                                     channels.front().Z());
    const int aIndex = state.n - state.l - 1;
    const double ea = own.energies()[aIndex];

    StarkShiftResult res;
    for (const auto& channel : channels) {
        const double angular = angularZFactor(state.l, channel.l());
        if (angular == 0.0) continue;
        const auto dip = RadialBasis::pseudoStateDipole(own, channel);
        for (int b = 0; b < channel.size(); ++b) {
            const double de = ea - channel.energies()[b];
            const double mz = angular * angular * dip(aIndex, b) * dip(aIndex, b);
            for (double denom : {de + omegaL, de - omegaL}) {
                if (std::abs(denom) < kResonanceTol) {
                    std::ostringstream os;
                    os << "laser frequency resonant with pseudo-state (l=" << channel.l()
                       << ", index " << b << ", E=" << channel.energies()[b]
                       << " hartree), denominator " << denom;
                    throw ResonanceError(os.str());
                }
                if (std::abs(denom) < 1e-3) {
                    std::ostringstream os;
                    os << "near-resonant pseudo-state (l=" << channel.l() << ", index " << b
                       << ", E=" << channel.energies()[b] << " hartree)";
                    res.resonantDenominatorFlags.push_back(os.str());
                }
                res.bracket += mz / denom;
            }
        }
    }
    res.shift = 2.0 * std::numbers::pi * consts.alpha * intensityAu * res.bracket;
    return res;
}

PhotonScaling photonNumberScaling(long modeCount, double volume, double omegaL) {
    if (modeCount < 0) throw std::invalid_argument("photonNumberScaling: n_L must be >= 0");
    if (!(volume > 0.0)) throw std::invalid_argument("photonNumberScaling: V must be > 0");
    PhotonScaling s;
    s.stimulated = double(modeCount) * omegaL / (2.0 * volume);
    s.remainder = omegaL / (2.0 * volume);
    return s;
}

} // namespace mollow
